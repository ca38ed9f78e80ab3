#include "tropcalc/lattice.hpp"

#include "tropcalc/errors.hpp"

namespace tc {

IntMat Lattice::matrix() const { return IntMat::from_cols(basis, ambient_rank); }

Lattice Lattice::standard(int r) {
    Lattice L;
    L.ambient_rank = r;
    for (int i = 0; i < r; ++i) {
        IVec e(r, Int(0));
        e[i] = 1;
        L.basis.push_back(e);
    }
    return L;
}

LatticeIndex lattice_index(const Lattice& sub, const Lattice& sup) {
    if (sub.ambient_rank != sup.ambient_rank) fail(ErrorKind::DimensionMismatch, "lattices live in different ambient spaces");
    RatMat S = to_rat(sup.matrix());
    IntMat C(sup.rank(), sub.rank());
    for (int j = 0; j < sub.rank(); ++j) {
        auto c = solve(S, to_rat(sub.basis[j]));
        if (!c) fail(ErrorKind::NotASublattice, "vector " + fmt(to_rat(sub.basis[j])) + " outside the span");
        for (int i = 0; i < sup.rank(); ++i) {
            if ((*c)[i].get_den() != 1) fail(ErrorKind::NotASublattice, "vector " + fmt(to_rat(sub.basis[j])) + " not integral in basis");
            C(i, j) = (*c)[i].get_num();
        }
    }
    if (sub.rank() < sup.rank()) return INFINITE_INDEX;
    SmithForm s = smith_normal_form(C);
    Int prod = 1;
    for (int i = 0; i < C.cols; ++i) prod *= s.D(i, i);
    return {false, prod};
}

Lattice lattice_span(const std::vector<IVec>& gens, int r) {
    Lattice L;
    L.ambient_rank = r;
    if (gens.empty()) return L;
    IntMat H = hermite_normal_form(IntMat::from_rows(gens, r));
    for (int i = 0; i < H.rows; ++i) L.basis.push_back(H.row(i));
    return L;
}

Lattice saturation(const std::vector<Vec>& span, int r) {
    std::vector<Vec> ann;
    if (span.empty()) {
        ann = kernel(RatMat(0, r));
    } else {
        ann = kernel(RatMat::from_rows(span, r));
    }
    // integer kernel of the annihilator
    std::vector<IVec> rows;
    for (auto& a : ann) rows.push_back(primitive(a));
    std::vector<IVec> gens;
    if (rows.empty()) {
        return Lattice::standard(r);
    }
    IntMat C = IntMat::from_rows(rows, r);
    SmithForm s = smith_normal_form(C);
    int rk = 0;
    for (int i = 0; i < std::min(C.rows, C.cols); ++i)
        if (s.D(i, i) != 0) ++rk;
    for (int j = rk; j < r; ++j) gens.push_back(s.V.col(j));
    return lattice_span(gens, r);
}

IntMat unimodular_completion(const Lattice& L) {
    int r = L.ambient_rank, k = L.rank();
    if (k == 0) return IntMat::identity(r);
    IntMat B = L.matrix();
    SmithForm s = smith_normal_form(B);
    for (int i = 0; i < k; ++i)
        if (s.D(i, i) != 1) fail(ErrorKind::Internal, "unimodular completion of a non-saturated lattice");
    IntMat big = IntMat::identity(r);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) big(i, j) = s.V(i, j);
    return big * s.U;
}

Int saturation_index(const IntMat& A) {
    SmithForm s = smith_normal_form(A);
    Int prod = 1;
    for (int i = 0; i < std::min(A.rows, A.cols); ++i)
        if (s.D(i, i) != 0) prod *= s.D(i, i);
    return prod;
}

}  // namespace tc
