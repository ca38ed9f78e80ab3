#pragma once

#include "tropcalc/deltaform.hpp"

#include <vector>

namespace tc {

Polyhedron product(const Polyhedron& a, const Polyhedron& b);
Polyhedron translated(const Polyhedron& a, const Vec& v);
// Cells moved by v, coefficients transported along x -> x + v.
DeltaForm translated(const DeltaForm& a, const Vec& v);

DeltaForm cross(const DeltaForm& a, const DeltaForm& b);
// Restriction of [Delta] ^ (a x b) to the diagonal, via iterated corner loci of max{x_i, y_i}.
DeltaForm diagonal_wedge(const DeltaForm& a, const DeltaForm& b);
// Stable intersection for transversally meeting cells, weight [Z^r : N_1 + N_2].
DeltaForm transversal_wedge(const DeltaForm& a, const DeltaForm& b);

struct TranslatedCheck {
    bool ok = false;          // stabilized and equal to the diagonal construction
    bool stabilized = false;
    Rat eps;                  // schedule value at which two consecutive results agreed
    DeltaForm limit, diagonal;
};
TranslatedCheck translated_wedge_check(const DeltaForm& a, const DeltaForm& b, const Vec& v, const std::vector<Rat>& schedule);

}  // namespace tc
