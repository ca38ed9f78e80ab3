#include "tropcalc/morphisms.hpp"

#include "tropcalc/errors.hpp"
#include "tropcalc/products.hpp"

#include <map>
#include <set>

namespace tc {

namespace {

Vec linear_apply(const IntMat& M, const Vec& x) {
    Vec y(M.rows, Rat(0));
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j)
            if (M(i, j) != 0) y[i] += M(i, j) * x[j];
    return y;
}

void check_source(const AffineMap& F, int r) {
    if (F.source_rank() != r) fail(ErrorKind::AmbientMismatch, "map source R^" + std::to_string(F.source_rank()) + " differs from R^" + std::to_string(r));
}

DeltaForm push_impl(const AffineMap& F, const DeltaForm& in, bool strict) {
    check_source(F, in.rank());
    int r = F.target_rank();
    int k = in.cell_dim();
    DeltaForm a = make_complex(in);
    std::vector<Cell> out;
    std::string dropped;
    for (auto& c : a.cells()) {
        const Polyhedron& s = c.poly;
        IntMat MB = F.linear * s.basis();
        if (rank(to_rat(MB)) < k) {
            if (strict) dropped += " " + describe(s);
            continue;
        }
        Polyhedron t = image(F, s);
        Int idx = saturation_index(MB);
        // local coordinates: z = T y + z0
        const IntMat& W = t.completion();
        RatMat T(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                Rat x = 0;
                for (int u = 0; u < r; ++u) x += Rat(W(i, u) * MB(u, j));
                T(i, j) = x;
            }
        Vec fx = F.apply(s.origin());
        Vec z0(k, Rat(0));
        for (int i = 0; i < k; ++i)
            for (int u = 0; u < r; ++u) z0[i] += W(i, u) * (fx[u] - t.origin()[u]);
        auto Ti = inverse(T);
        if (!Ti) fail(ErrorKind::Internal, "image parametrization is singular");
        Vec shift = *Ti * z0;
        for (auto& x : shift) x = -x;
        Superform local = pullback_linear(*Ti, shift, restrict_to(s, c.coeff));
        Superform co = extend_from(t, local) * Rat(idx);
        if (!co.is_zero()) out.push_back({t, co});
    }
    if (!dropped.empty()) fail(ErrorKind::CellNotInjective, "map is not injective on:" + dropped);
    return make_complex(DeltaForm::raw(r, a.p(), a.q(), r - k, std::move(out), false));
}

// phi_i = max{f_i(x'), x_i} on R^{s + r}
PSForm graph_function(const AffineMap& F, int i) {
    int s = F.source_rank(), n = s + F.target_rank();
    IVec f(n, Int(0)), x(n, Int(0));
    for (int j = 0; j < s; ++j) f[j] = F.linear(i, j);
    x[s + i] = 1;
    return PSForm::max_of(n, {{f, F.translate[i]}, {x, Rat(0)}});
}

}  // namespace

Polyhedron image(const AffineMap& F, const Polyhedron& P) {
    check_source(F, P.ambient_rank());
    int r = F.target_rank();
    if (P.empty()) return Polyhedron::empty_set(r);
    std::vector<Vec> pts, rays, lin;
    for (auto& v : P.vertices()) pts.push_back(F.apply(v));
    for (auto& v : P.rays()) rays.push_back(linear_apply(F.linear, v));
    for (auto& v : P.lineality()) lin.push_back(linear_apply(F.linear, v));
    if (pts.empty()) pts.push_back(F.apply(P.relint_point()));
    return Polyhedron::from_generators(r, pts, rays, lin);
}

Polyhedron preimage(const AffineMap& F, const Polyhedron& P) {
    if (F.target_rank() != P.ambient_rank()) fail(ErrorKind::AmbientMismatch, "preimage under a map with another target");
    int s = F.source_rank();
    auto pull = [&](const std::vector<Constraint>& cs) {
        std::vector<Constraint> out;
        for (auto& c : cs) {
            Vec a(s, Rat(0));
            for (int j = 0; j < s; ++j)
                for (int i = 0; i < F.target_rank(); ++i) a[j] += c.a[i] * F.linear(i, j);
            out.push_back({a, c.b - dot(c.a, F.translate)});
        }
        return out;
    };
    if (P.empty()) return Polyhedron::empty_set(s);
    return Polyhedron::make(s, pull(P.ineq_constraints()), pull(P.eq_constraints()));
}

DeltaForm pushforward_hat(const AffineMap& F, const DeltaForm& a) {
    auto b = check_balanced(a);
    if (!b.balanced) fail(ErrorKind::NotBalanced, "push-forward of an unbalanced form at " + describe(b.failing[0]));
    return push_impl(F, a, false);
}

DeltaForm pushforward_cells(const AffineMap& F, const DeltaForm& a) { return push_impl(F, a, true); }

DeltaForm graph_direct(const AffineMap& F) {
    int s = F.source_rank(), r = F.target_rank(), n = s + r;
    std::vector<Constraint> eqs;
    for (int i = 0; i < r; ++i) {
        Vec a(n, Rat(0));
        for (int j = 0; j < s; ++j) a[j] = -Rat(F.linear(i, j));
        a[s + i] = 1;
        eqs.push_back({a, F.translate[i]});
    }
    return DeltaForm::weighted(n, r, {{Polyhedron::make(n, {}, eqs), Rat(1)}});
}

DeltaForm graph_cycle(const AffineMap& F) {
    int n = F.source_rank() + F.target_rank();
    DeltaForm t = DeltaForm::weighted(n, 0, {{Polyhedron::whole(n), Rat(1)}});
    for (int i = 0; i < F.target_rank(); ++i) t = corner_locus(graph_function(F, i), t);
    if (!equal(t, graph_direct(F))) fail(ErrorKind::Internal, "iterated corner locus differs from the graph");
    return t;
}

DeltaForm pullback(const AffineMap& F, const DeltaForm& a) {
    if (F.target_rank() != a.rank()) fail(ErrorKind::AmbientMismatch, "pull-back along a map with another target");
    int s = F.source_rank(), n = s + a.rank();
    DeltaForm t = cross(DeltaForm::weighted(s, 0, {{Polyhedron::whole(s), Rat(1)}}), a);
    for (int i = 0; i < F.target_rank() && !t.is_zero(); ++i) t = corner_locus(graph_function(F, i), t);
    IntMat P(s, n);
    for (int j = 0; j < s; ++j) P(j, j) = 1;
    if (t.is_zero()) return DeltaForm(s, a.p(), a.q(), a.l());
    return pushforward_hat(AffineMap::make(P, Vec(s, Rat(0))), t);
}

PSForm pullback(const AffineMap& F, const PSForm& w) {
    if (F.target_rank() != w.rank()) fail(ErrorKind::AmbientMismatch, "pull-back along a map with another target");
    int s = F.source_rank();
    std::vector<Cell> cs;
    std::set<std::string> seen;
    for (auto& c : w.pieces()) {
        Polyhedron P = preimage(F, c.poly);
        if (P.empty() || P.dim() != s || !seen.insert(P.key()).second) continue;
        cs.push_back({P, pullback_form(F, c.coeff)});
    }
    return PSForm::from_pieces(s, w.p(), w.q(), std::move(cs), w.proper() ? 1 : -1);
}

ProjectionCheck projection_formula_check(const AffineMap& F, const DeltaForm& a, const DeltaForm& b) {
    DeltaForm lhs = pushforward_hat(F, diagonal_wedge(a, pullback(F, b)));
    DeltaForm rhs = diagonal_wedge(pushforward_hat(F, a), b);
    return {equal(lhs, rhs), lhs, rhs};
}

}  // namespace tc
