#include "tropcalc/products.hpp"

#include "tropcalc/errors.hpp"

namespace tc {

namespace {

std::vector<Constraint> embed(const std::vector<Constraint>& cs, int r, int offset) {
    std::vector<Constraint> out;
    for (auto& c : cs) {
        Vec a(r, Rat(0));
        for (size_t i = 0; i < c.a.size(); ++i) a[offset + i] = c.a[i];
        out.push_back({a, c.b});
    }
    return out;
}

void append(std::vector<Constraint>& a, const std::vector<Constraint>& b) { a.insert(a.end(), b.begin(), b.end()); }

void require_balanced(const DeltaForm& a, const char* what) {
    auto b = check_balanced(a);
    if (!b.balanced) fail(ErrorKind::NotBalanced, std::string(what) + ": input not balanced at " + describe(b.failing[0]));
}

}  // namespace

Polyhedron product(const Polyhedron& a, const Polyhedron& b) {
    int r1 = a.ambient_rank(), r = r1 + b.ambient_rank();
    if (a.empty() || b.empty()) return Polyhedron::empty_set(r);
    auto ineqs = embed(a.ineq_constraints(), r, 0), eqs = embed(a.eq_constraints(), r, 0);
    append(ineqs, embed(b.ineq_constraints(), r, r1));
    append(eqs, embed(b.eq_constraints(), r, r1));
    return Polyhedron::make(r, ineqs, eqs);
}

Polyhedron translated(const Polyhedron& a, const Vec& v) {
    if (a.empty()) return a;
    auto shift = [&](std::vector<Constraint> cs) {
        for (auto& c : cs) c.b += dot(c.a, v);
        return cs;
    };
    return Polyhedron::make(a.ambient_rank(), shift(a.ineq_constraints()), shift(a.eq_constraints()));
}

DeltaForm translated(const DeltaForm& a, const Vec& v) {
    int r = a.rank();
    Vec mv = v;
    for (auto& x : mv) x = -x;
    RatMat I = to_rat(IntMat::identity(r));
    std::vector<Cell> cs;
    for (auto& c : a.cells()) cs.push_back({translated(c.poly, v), pullback_linear(I, mv, c.coeff)});
    return DeltaForm::raw(r, a.p(), a.q(), a.l(), std::move(cs), a.is_complex());
}

DeltaForm cross(const DeltaForm& a0, const DeltaForm& b0) {
    int r1 = a0.rank(), r = r1 + b0.rank();
    int p = a0.p() + b0.p(), q = a0.q() + b0.q(), l = a0.l() + b0.l();
    DeltaForm a = make_complex(a0), b = make_complex(b0);
    std::vector<Cell> cs;
    for (auto& x : a.cells())
        for (auto& y : b.cells()) {
            Polyhedron P = product(x.poly, y.poly);
            Superform c = canonical_on(P, wedge(shift(x.coeff, r, 0), shift(y.coeff, r, r1)));
            if (!c.is_zero()) cs.push_back({P, c});
        }
    return DeltaForm::raw(r, p, q, l, std::move(cs), true);
}

DeltaForm diagonal_wedge(const DeltaForm& a, const DeltaForm& b) {
    if (a.rank() != b.rank()) fail(ErrorKind::AmbientMismatch, "wedge of delta-forms on different spaces");
    require_balanced(a, "wedge");
    require_balanced(b, "wedge");
    int r = a.rank(), n = 2 * r;
    DeltaForm t = cross(a, b);
    for (int i = 0; i < r && !t.is_zero(); ++i) {
        IVec xi(n, Int(0)), yi(n, Int(0));
        xi[i] = 1, yi[r + i] = 1;
        t = corner_locus(PSForm::max_of(n, {{xi, Rat(0)}, {yi, Rat(0)}}), t);
    }
    int p = a.p() + b.p(), q = a.q() + b.q(), l = a.l() + b.l();
    // first projection restricted to the diagonal; lattice index 1
    RatMat D(n, r);
    for (int i = 0; i < r; ++i) D(i, i) = 1, D(r + i, i) = 1;
    std::vector<Cell> cs;
    for (auto& c : t.cells()) {
        std::vector<Constraint> ineqs, eqs;
        auto fold = [&](const std::vector<Constraint>& in, std::vector<Constraint>& out) {
            for (auto& k : in) {
                Vec f(r);
                for (int i = 0; i < r; ++i) f[i] = k.a[i] + k.a[r + i];
                if (!is_zero(f)) out.push_back({f, k.b});
                else if (k.b < 0 || (&out == &eqs && k.b != 0)) fail(ErrorKind::Internal, "diagonal restriction left the diagonal");
            }
        };
        fold(c.poly.ineq_constraints(), ineqs);
        fold(c.poly.eq_constraints(), eqs);
        Polyhedron P = Polyhedron::make(r, ineqs, eqs);
        if (P.dim() != c.poly.dim()) fail(ErrorKind::Internal, "corner locus support is not on the diagonal");
        Superform co = canonical_on(P, pullback_linear(D, Vec(n, Rat(0)), c.coeff));
        if (!co.is_zero()) cs.push_back({P, co});
    }
    return DeltaForm::raw(r, p, q, l, std::move(cs), true);
}

DeltaForm transversal_wedge(const DeltaForm& a0, const DeltaForm& b0) {
    if (a0.rank() != b0.rank()) fail(ErrorKind::AmbientMismatch, "wedge of delta-forms on different spaces");
    int r = a0.rank();
    int p = a0.p() + b0.p(), q = a0.q() + b0.q(), l = a0.l() + b0.l();
    DeltaForm a = make_complex(a0), b = make_complex(b0);
    std::vector<Cell> cs;
    if (l > r) return DeltaForm(r, p, q, l);
    for (auto& x : a.cells())
        for (auto& y : b.cells()) {
            if (!x.poly.bbox().overlaps(y.poly.bbox()) || !x.poly.meets(y.poly)) continue;
            Polyhedron m = x.poly.intersect(y.poly);
            std::vector<IVec> gens;
            for (int j = 0; j < x.poly.dim(); ++j) gens.push_back(x.poly.basis().col(j));
            for (int j = 0; j < y.poly.dim(); ++j) gens.push_back(y.poly.basis().col(j));
            Lattice sum = lattice_span(gens, r);
            bool spans = sum.rank() == r;
            bool relint = x.poly.in_relint(m.relint_point()) && y.poly.in_relint(m.relint_point());
            if (!spans || !relint)
                fail(ErrorKind::NotTransversal, "cells " + describe(x.poly) + " and " + describe(y.poly) + " do not meet transversally");
            Int idx = lattice_index(sum, Lattice::standard(r)).value;
            Superform c = canonical_on(m, wedge(x.coeff, y.coeff) * Rat(idx));
            if (!c.is_zero()) cs.push_back({m, c});
        }
    return DeltaForm::raw(r, p, q, l, std::move(cs), false);
}

TranslatedCheck translated_wedge_check(const DeltaForm& a0, const DeltaForm& b0, const Vec& v, const std::vector<Rat>& schedule) {
    if (a0.rank() != b0.rank()) fail(ErrorKind::AmbientMismatch, "wedge of delta-forms on different spaces");
    if (int(v.size()) != a0.rank()) fail(ErrorKind::DimensionMismatch, "translation vector of the wrong length");
    require_balanced(a0, "translated wedge");
    require_balanced(b0, "translated wedge");
    int r = a0.rank();
    int p = a0.p() + b0.p(), q = a0.q() + b0.q(), l = a0.l() + b0.l();
    int expected = r - l;
    DeltaForm a = make_complex(a0), b = make_complex(b0);
    TranslatedCheck res;
    res.diagonal = diagonal_wedge(a, b);
    bool have_prev = false;
    DeltaForm prev;
    for (auto& eps : schedule) {
        Vec shift = v;
        for (auto& s : shift) s *= eps;
        std::vector<Cell> cs;
        for (auto& x : a.cells())
            for (auto& y : b.cells()) {
                Polyhedron ty = translated(y.poly, shift);
                if (!x.poly.bbox().overlaps(ty.bbox()) || !x.poly.meets(ty)) continue;
                Polyhedron m = x.poly.intersect(ty);
                std::vector<IVec> gens;
                for (int j = 0; j < x.poly.dim(); ++j) gens.push_back(x.poly.basis().col(j));
                for (int j = 0; j < ty.dim(); ++j) gens.push_back(ty.basis().col(j));
                Lattice sum = lattice_span(gens, r);
                bool transversal = sum.rank() == r && x.poly.in_relint(m.relint_point()) && ty.in_relint(m.relint_point());
                Superform w = wedge(x.coeff, y.coeff);
                if (!transversal) {
                    if (!w.is_zero())
                        fail(ErrorKind::NonGenericVector, "translate by " + fmt(shift) + " meets " + describe(x.poly) + " non-transversally");
                    continue;
                }
                if (expected < 0) continue;
                // limit cell at eps = 0
                Polyhedron lim = x.poly.intersect(y.poly);
                if (lim.empty() || lim.dim() != expected) continue;
                Int idx = lattice_index(sum, Lattice::standard(r)).value;
                Superform c = canonical_on(lim, w * Rat(idx));
                if (!c.is_zero()) cs.push_back({lim, c});
            }
        DeltaForm cur = make_complex(DeltaForm::raw(r, p, q, l, std::move(cs), false));
        if (have_prev && equal(prev, cur)) {
            res.stabilized = true;
            res.eps = eps;
            res.limit = cur;
            break;
        }
        prev = cur;
        have_prev = true;
    }
    if (!res.stabilized) res.limit = prev;
    res.ok = res.stabilized && equal(res.limit, res.diagonal);
    return res;
}

}  // namespace tc
