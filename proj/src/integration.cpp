#include "tropcalc/integration.hpp"

#include "tropcalc/errors.hpp"

namespace tc {

namespace {

void cone_over(const Polyhedron& p, std::vector<std::vector<Vec>>& out) {
    const auto& vs = p.vertices();
    if (p.dim() == 0) {
        out.push_back({vs[0]});
        return;
    }
    const Vec* apex = &vs[0];
    for (auto& v : vs)
        if (v < *apex) apex = &v;
    for (auto& f : p.facets()) {
        if (f.contains(*apex)) continue;
        std::vector<std::vector<Vec>> sub;
        cone_over(f, sub);
        for (auto& s : sub) {
            s.push_back(*apex);
            out.push_back(std::move(s));
        }
    }
}

void require_bounded(const Polyhedron& sigma) {
    if (!sigma.bounded()) fail(ErrorKind::Unbounded, "integration over an unbounded polyhedron " + describe(sigma));
}

}  // namespace

std::vector<std::vector<Vec>> triangulate(const Polyhedron& sigma) {
    require_bounded(sigma);
    std::vector<std::vector<Vec>> out;
    if (sigma.empty()) return out;
    cone_over(sigma, out);
    return out;
}

Rat integrate_poly_local(const Polyhedron& sigma, const Poly& f) {
    int k = sigma.dim();
    Rat total = 0;
    if (f.is_zero()) return total;
    for (auto& simplex : triangulate(sigma)) {
        std::vector<Vec> loc;
        for (auto& v : simplex) loc.push_back(sigma.to_local(v));
        if (k == 0) {
            total += f.eval(loc[0]);
            continue;
        }
        RatMat M(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) M(i, j) = loc[j + 1][i] - loc[0][i];
        Rat jac = abs(det(M));
        Poly g = f.affine_sub(M, loc[0]);
        Rat s = 0;
        for (auto& [e, c] : g.terms()) {
            int tot = 0;
            Int num = 1;
            for (int a : e) num *= factorial(a), tot += a;
            s += c * Rat(num) / Rat(factorial(k + tot));
        }
        total += jac * s;
    }
    return total;
}

Rat integrate_cell(const Polyhedron& sigma, const Superform& a) {
    require_bounded(sigma);
    if (sigma.empty()) return 0;
    int k = sigma.dim();
    if (a.p() != k || a.q() != k)
        fail(ErrorKind::DegreeMismatch, "bidegree (" + std::to_string(a.p()) + "," + std::to_string(a.q()) +
                                            ") does not match cell dimension " + std::to_string(k));
    Superform loc = restrict_to(sigma, a);
    Mask all = k == 0 ? 0 : Mask((uint64_t(1) << k) - 1);
    auto it = loc.terms().find({all, all});
    if (it == loc.terms().end()) return 0;
    Rat v = integrate_poly_local(sigma, it->second);
    return (k * (k - 1) / 2) % 2 ? -v : v;
}

Rat integrate_boundary(const Polyhedron& sigma, const Superform& eta, const std::vector<IVec>& normals) {
    require_bounded(sigma);
    int k = sigma.dim();
    bool dd = eta.p() == k - 1 && eta.q() == k;
    bool d = eta.p() == k && eta.q() == k - 1;
    if (k == 0 || (!dd && !d)) fail(ErrorKind::DegreeMismatch, "boundary integral needs bidegree (k-1,k) or (k,k-1)");
    const auto& fs = sigma.facets();
    Rat total = 0;
    for (size_t i = 0; i < fs.size(); ++i) {
        Vec w = to_rat(normals[i]);
        Superform c = dd ? contract(eta, {}, {{1, w}}) : contract(eta, {{1, w}}, {});
        total += integrate_cell(fs[i], c);
    }
    return dd ? -total : total;
}

Rat integrate_boundary(const Polyhedron& sigma, const Superform& eta) {
    std::vector<IVec> normals;
    for (auto& f : sigma.facets()) normals.push_back(normal_vector(sigma, f));
    return integrate_boundary(sigma, eta, normals);
}

bool is_symmetric(const Superform& a) {
    if (a.p() != a.q()) return false;
    return j_op(a) == (a.p() % 2 ? -a : a);
}

Rat integrate_cells(const WeightedCells& c, const Superform& a) {
    Rat t = 0;
    for (auto& [s, m] : c) t += m * integrate_cell(s, a);
    return t;
}

Rat integrate_boundary_cells(const WeightedCells& c, const Superform& eta) {
    Rat t = 0;
    for (auto& [s, m] : c) t += m * integrate_boundary(s, eta);
    return t;
}

CheckResult stokes_check(const WeightedCells& c, const Superform& eta) {
    if (c.empty()) return {true, 0, 0};
    int k = c[0].first.dim();
    Superform d = eta.p() == k - 1 ? d1(eta) : d2(eta);
    Rat lhs = integrate_cells(c, d), rhs = integrate_boundary_cells(c, eta);
    return {lhs == rhs, lhs, rhs};
}

CheckResult green_check(const WeightedCells& c, const Superform& alpha, const Superform& beta) {
    if (!is_symmetric(alpha) || !is_symmetric(beta)) fail(ErrorKind::DegreeMismatch, "Green's identity needs symmetric inputs");
    if (c.empty()) return {true, 0, 0};
    int k = c[0].first.dim();
    if (alpha.p() + beta.p() != k - 1) fail(ErrorKind::DegreeMismatch, "bidegrees do not add up to dim - 1");
    Superform inner = wedge(alpha, d1(d2(beta))) - wedge(d1(d2(alpha)), beta);
    Superform bd = wedge(alpha, d2(beta)) - wedge(d2(alpha), beta);
    Rat lhs = integrate_cells(c, inner), rhs = integrate_boundary_cells(c, bd);
    return {lhs == rhs, lhs, rhs};
}

WeightedCells weighted_cells(const DeltaForm& c) {
    if (!c.is_weighted()) fail(ErrorKind::TypeMismatch, "expected constant weights");
    WeightedCells out;
    DeltaForm m = make_complex(c);
    for (auto& x : m.cells()) out.push_back({x.poly, x.coeff.is_zero() ? Rat(0) : x.coeff.terms().begin()->second.constant_term()});
    return out;
}

CheckResult stokes_check(const DeltaForm& c, const Superform& eta) { return stokes_check(weighted_cells(c), eta); }

CheckResult green_check(const DeltaForm& c, const Superform& alpha, const Superform& beta) {
    return green_check(weighted_cells(c), alpha, beta);
}

Rat pairing(const DeltaForm& a, const Superform& g, const Polyhedron& clip) {
    if (!clip.bounded()) fail(ErrorKind::Unbounded, "pairing needs a bounded clipping region");
    Rat t = 0;
    for (auto& c : a.cells()) {
        if (!c.poly.bbox().overlaps(clip.bbox())) continue;
        Polyhedron x = c.poly.intersect(clip);
        if (x.empty() || x.dim() < c.poly.dim()) continue;
        t += integrate_cell(x, wedge(c.coeff, g));
    }
    return t;
}

Rat degree(const DeltaForm& a) {
    if (a.l() != a.rank() || a.p() || a.q()) fail(ErrorKind::TypeMismatch, "degree needs a form of type (0,0,r)");
    Rat t = 0;
    for (auto& c : a.cells()) t += c.coeff.terms().begin()->second.constant_term();
    return t;
}

}  // namespace tc
