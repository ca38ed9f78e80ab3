#pragma once

#include "tropcalc/matrix.hpp"

#include <vector>

namespace tc {

struct Lattice {
    int ambient_rank = 0;
    std::vector<IVec> basis;  // linearly independent

    int rank() const { return int(basis.size()); }
    IntMat matrix() const;  // basis vectors as columns
    static Lattice standard(int r);
};

struct LatticeIndex {
    bool infinite = false;
    Int value = 1;
    bool operator==(const LatticeIndex& o) const { return infinite == o.infinite && (infinite || value == o.value); }
};
inline const LatticeIndex INFINITE_INDEX{true, 0};

// [sup : sub]; throws NotASublattice.
LatticeIndex lattice_index(const Lattice& sub, const Lattice& sup);

// Z^r intersected with the rational span of the given vectors, as a canonical (HNF) basis.
Lattice saturation(const std::vector<Vec>& span, int r);
// Z-span of integer vectors reduced to a basis (HNF rows).
Lattice lattice_span(const std::vector<IVec>& gens, int r);
// W unimodular with W * B = [I; 0], B the basis of a saturated lattice.
IntMat unimodular_completion(const Lattice& L);
// Product of the nonzero invariant factors of the column lattice of A inside its saturation.
Int saturation_index(const IntMat& A);

}  // namespace tc
