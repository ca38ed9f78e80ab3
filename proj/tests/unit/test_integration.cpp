#include "doctest.h"

#include "gen.hpp"
#include "tropcalc/errors.hpp"
#include "tropcalc/integration.hpp"

#include <algorithm>

using namespace tc;

namespace {

Polyhedron box(const std::vector<std::pair<long, long>>& sides) {
    int r = int(sides.size());
    std::vector<Constraint> c;
    for (int i = 0; i < r; ++i) {
        Vec a(r, Rat(0));
        a[i] = 1;
        c.push_back({a, Rat(sides[i].second)});
        a[i] = -1;
        c.push_back({a, Rat(-sides[i].first)});
    }
    return Polyhedron::make(r, c);
}

Superform top(int r, const Poly& f) {
    std::vector<int> all(r);
    for (int i = 0; i < r; ++i) all[i] = i;
    return Superform::term(r, all, all, f);  // d'x_1..d'x_r d''x_1..d''x_r in this order
}

// d'x_1 d''x_1 d'x_2 d''x_2 ... ; integrates to the Lebesgue integral of f
Superform volume_form(int r, const Poly& f) {
    Superform a = Superform::scalar(f);
    for (int i = 0; i < r; ++i) a = wedge(a, wedge(Superform::dprime(r, i), Superform::ddprime(r, i)));
    return a;
}

Rat box_moment(const Poly& f, const std::vector<std::pair<long, long>>& sides) {
    Rat t = 0;
    for (auto& [e, c] : f.terms()) {
        Rat m = c;
        for (size_t i = 0; i < e.size(); ++i) {
            Rat hi = 1, lo = 1;
            for (int k = 0; k <= e[i]; ++k) hi *= sides[i].second, lo *= sides[i].first;
            m *= (hi - lo) / (e[i] + 1);
        }
        t += m;
    }
    return t;
}

// Planar moment by Green's theorem: integral of f = boundary integral of F dy with dF/dx = f.
Rat polygon_moment(const Poly& f, std::vector<Vec> vs) {
    Vec c{Rat(0), Rat(0)};
    for (auto& v : vs) c[0] += v[0] / int(vs.size()), c[1] += v[1] / int(vs.size());
    auto half = [&](const Vec& v) { return (v[1] - c[1] > 0 || (v[1] == c[1] && v[0] - c[0] > 0)) ? 0 : 1; };
    std::sort(vs.begin(), vs.end(), [&](const Vec& a, const Vec& b) {
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        return (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]) > 0;
    });
    Rat total = 0;
    for (size_t i = 0; i < vs.size(); ++i) {
        const Vec &P = vs[i], &Q = vs[(i + 1) % vs.size()];
        for (auto& [e, co] : f.terms()) {
            // x(t) = P0 + t (Q0-P0), y(t) likewise
            Poly x = Poly::linear(Vec{Q[0] - P[0]}, P[0]), y = Poly::linear(Vec{Q[1] - P[1]}, P[1]);
            Poly g = Poly::constant(1, co / (e[0] + 1));
            for (int k = 0; k <= e[0]; ++k) g = g * x;
            for (int k = 0; k < e[1]; ++k) g = g * y;
            for (auto& [te, tc_] : g.terms()) total += tc_ / (te[0] + 1) * (Q[1] - P[1]);
        }
    }
    return total;
}

Superform symmetrize(const Superform& a) { return a + (a.p() % 2 ? -j_op(a) : j_op(a)); }

}  // namespace

TEST_CASE("integration fixtures") {
    auto unit = box({{0, 1}});
    CHECK(integrate_cell(unit, top(1, Poly::var(1, 0))) == Rat(1, 2));
    auto sq = box({{0, 1}, {0, 1}});
    Superform a = volume_form(2, Poly::constant(2, Rat(1)));
    CHECK(a.coeff({0, 1}, {0, 1}) == Poly::constant(2, Rat(-1)));
    CHECK(integrate_cell(sq, a) == 1);
    auto pt = Polyhedron::point(Vec{Rat(2), Rat(-1)});
    Poly f = Poly::var(2, 0) * Poly::var(2, 0) + Poly::var(2, 1) * Rat(5);
    CHECK(integrate_cell(pt, Superform::scalar(f)) == -1);
    CHECK_THROWS_AS(integrate_cell(sq, Superform::dprime(2, 0)), Error);
    auto ray = Polyhedron::make(1, {{Vec{Rat(-1)}, Rat(0)}});
    try {
        integrate_cell(ray, top(1, Poly::constant(1, Rat(1))));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Unbounded);
    }
}

TEST_CASE("integration of a segment inside the plane uses lattice length") {
    // segment from (0,0) to (2,2): lattice length 2
    auto seg = Polyhedron::from_generators(2, {Vec{Rat(0), Rat(0)}, Vec{Rat(2), Rat(2)}});
    Superform a = wedge(Superform::dprime(2, 0), Superform::ddprime(2, 0));
    CHECK(integrate_cell(seg, a) == 2);
}

TEST_CASE("box moments agree with iterated antiderivatives") {
    std::mt19937_64 g(21);
    for (int it = 0; it < 60; ++it) {
        int r = int(gen::small(g, 1, 3));
        std::vector<std::pair<long, long>> sides;
        for (int i = 0; i < r; ++i) {
            long lo = gen::small(g, -3, 2);
            sides.push_back({lo, lo + gen::small(g, 1, 3)});
        }
        Poly f = gen::poly(g, r, 4, 4);
        CHECK(integrate_cell(box(sides), volume_form(r, f)) == box_moment(f, sides));
    }
}

TEST_CASE("polygon moments agree with a boundary line integral") {
    std::mt19937_64 g(22);
    int done = 0;
    while (done < 60) {
        auto P = gen::polytope(g, 2, int(gen::small(g, 3, 6)));
        if (P.dim() != 2) continue;
        ++done;
        Poly f = gen::poly(g, 2, 3, 4);
        CHECK(integrate_cell(P, volume_form(2, f)) == polygon_moment(f, P.vertices()));
    }
}

TEST_CASE("integral is invariant under unimodular changes and additive under cuts") {
    std::mt19937_64 g(23);
    int done = 0;
    while (done < 40) {
        int r = int(gen::small(g, 2, 3));
        auto P = gen::polytope(g, r, int(gen::small(g, r + 1, r + 3)));
        if (P.dim() != r) continue;
        ++done;
        auto a = gen::superform(g, r, r, r, 3, 4);
        // unimodular U = upper unitriangular with random entries, then a permutation
        IntMat U = IntMat::identity(r);
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) U(i, j) = Int(gen::small(g, -2, 2));
        std::vector<Vec> img;
        for (auto& v : P.vertices()) img.push_back(to_rat(U) * v);
        auto Q = Polyhedron::from_generators(r, img);
        // integral over U(P) of a equals integral over P of U^* a
        auto Fa = pullback_form(AffineMap::make(U, Vec(r, Rat(0))), a);
        CHECK(integrate_cell(Q, a) == integrate_cell(P, Fa));
        // cut by a hyperplane through the relative interior
        Vec n = gen::rat_vec(g, r);
        if (is_zero(n)) continue;
        Rat b = dot(n, P.relint_point());
        Vec mn = n;
        for (auto& x : mn) x = -x;
        auto lo = P.with({{n, b}}, {}), hi = P.with({{mn, -b}}, {});
        CHECK(integrate_cell(lo, a) + integrate_cell(hi, a) == integrate_cell(P, a));
    }
}

TEST_CASE("boundary integral fixtures") {
    auto unit = box({{0, 1}});
    Poly f = Poly::var(1, 0) * Poly::var(1, 0) * Rat(3) + Poly::constant(1, Rat(2));
    CHECK(integrate_boundary(unit, Superform::ddprime(1, 0) * f) == f.eval({Rat(1)}) - f.eval({Rat(0)}));
    CHECK(integrate_boundary(unit, Superform::ddprime(1, 0)) == 0);
    // d''(f d'x) = -f' d'x d''x
    CHECK(integrate_boundary(unit, Superform::dprime(1, 0) * f) == f.eval({Rat(0)}) - f.eval({Rat(1)}));
}

TEST_CASE("boundary integral does not depend on the normal representative") {
    std::mt19937_64 g(24);
    int done = 0;
    while (done < 30) {
        auto P = gen::polytope(g, 2, 4);
        if (P.dim() != 2) continue;
        ++done;
        for (int which = 0; which < 2; ++which) {
            auto eta = which ? gen::superform(g, 2, 1, 2, 3) : gen::superform(g, 2, 2, 1, 3);
            std::vector<IVec> ns;
            for (auto& t : P.facets()) {
                IVec w = normal_vector(P, t);
                IVec along = t.basis().col(0);
                long m = gen::small(g, -3, 3);
                for (size_t i = 0; i < w.size(); ++i) w[i] += along[i] * m;
                ns.push_back(w);
            }
            CHECK(integrate_boundary(P, eta, ns) == integrate_boundary(P, eta));
        }
    }
}

TEST_CASE("Stokes on random polytopes") {
    std::mt19937_64 g(25);
    auto seg = box({{0, 1}});
    auto eta = Superform::ddprime(1, 0) * Poly::var(1, 0);
    auto s = stokes_check({{seg, Rat(1)}}, eta);
    CHECK(s.ok);
    CHECK(s.lhs == 1);
    int done = 0;
    while (done < 40) {
        int r = int(gen::small(g, 1, 3));
        auto P = gen::polytope(g, r, int(gen::small(g, 2, 6)));
        if (P.dim() == 0) continue;
        ++done;
        int k = P.dim();
        for (int which = 0; which < 2; ++which) {
            auto eta2 = which ? gen::superform(g, r, k - 1, k, 4, 4) : gen::superform(g, r, k, k - 1, 4, 4);
            auto res = stokes_check({{P, Rat(2)}}, eta2);
            CHECK_MESSAGE(res.ok, describe(P), " ", eta2.str());
        }
    }
}

TEST_CASE("Green's identity") {
    std::mt19937_64 g(26);
    auto seg = box({{0, 1}});
    auto f = Superform::scalar(Poly::var(1, 0) * Poly::var(1, 0));
    auto h = Superform::scalar(Poly::var(1, 0) * Rat(3) + Poly::constant(1, 1));
    CHECK(green_check({{seg, Rat(1)}}, f, h).ok);
    auto same = green_check({{seg, Rat(1)}}, f, f);
    CHECK(same.lhs == 0);
    CHECK(same.rhs == 0);
    CHECK_THROWS_AS(green_check({{seg, Rat(1)}}, Superform::dprime(1, 0), h), Error);
    int done = 0;
    while (done < 30) {
        auto T = gen::polytope(g, 2, 3);
        if (T.dim() != 2) continue;
        ++done;
        int p = int(gen::small(g, 0, 1));
        auto a = symmetrize(gen::superform(g, 2, p, p, 3));
        auto b = symmetrize(gen::superform(g, 2, 1 - p, 1 - p, 3));
        REQUIRE(is_symmetric(a));
        CHECK(green_check({{T, Rat(1)}}, a, b).ok);
    }
}
