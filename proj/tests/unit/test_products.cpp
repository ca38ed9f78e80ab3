#include "doctest.h"

#include "gen.hpp"
#include "tropcalc/errors.hpp"
#include "tropcalc/integration.hpp"
#include "tropcalc/products.hpp"

using namespace tc;

namespace {

Vec v(std::initializer_list<long> xs) {
    Vec out;
    for (long x : xs) out.push_back(Rat(x));
    return out;
}

Polyhedron ray(const Vec& apex, const Vec& dir) { return Polyhedron::from_generators(int(apex.size()), {apex}, {dir}); }
Polyhedron line(const Vec& through, const Vec& dir) { return Polyhedron::from_generators(int(through.size()), {through}, {}, {dir}); }

DeltaForm tropical_line(const Vec& o) {
    return DeltaForm::weighted(2, 1, {{ray(o, v({1, 0})), Rat(1)}, {ray(o, v({0, 1})), Rat(1)}, {ray(o, v({-1, -1})), Rat(1)}});
}

DeltaForm point(const Vec& x, long w) { return DeltaForm::weighted(int(x.size()), int(x.size()), {{Polyhedron::point(x), Rat(w)}}); }

Rat sign_pow(int e) { return e % 2 ? Rat(-1) : Rat(1); }

bool covered(const Vec& x, const DeltaForm& a) {
    for (auto& c : a.cells())
        if (c.poly.contains(x)) return true;
    return false;
}

}  // namespace

TEST_CASE("cross product fixtures") {
    CHECK(equal(cross(gen::fullspace(1), gen::fullspace(1)), gen::fullspace(2)));
    auto vertical = DeltaForm::weighted(2, 1, {{line(v({0, 0}), v({0, 1})), Rat(2)}});
    CHECK(equal(cross(point(v({0}), 2), gen::fullspace(1)), vertical));
    std::mt19937_64 g(41);
    for (int it = 0; it < 10; ++it) {
        auto a = gen::balanced(g, 1, int(gen::small(g, 0, 1)), 0, int(gen::small(g, 0, 1)), 2);
        auto b = gen::balanced(g, 2, 0, int(gen::small(g, 0, 1)), int(gen::small(g, 0, 1)), 2);
        auto ab = cross(a, b);
        CHECK(check_balanced(ab).balanced);
        Rat s = sign_pow(a.p() + a.q());
        CHECK(equal(dP1(ab), cross(dP1(a), b) + cross(a, dP1(b)) * s));
        CHECK(equal(dP2(ab), cross(dP2(a), b) + cross(a, dP2(b)) * s));
    }
}

TEST_CASE("diagonal wedge fixtures") {
    auto L = tropical_line(v({0, 0}));
    CHECK(equal(diagonal_wedge(L, L), point(v({0, 0}), 1)));
    std::mt19937_64 g(42);
    for (int it = 0; it < 6; ++it) {
        auto b = gen::balanced(g, 2, int(gen::small(g, 0, 1)), int(gen::small(g, 0, 1)), int(gen::small(g, 0, 2)), 2);
        CHECK(equal(diagonal_wedge(gen::fullspace(2), b), b));
        CHECK(equal(diagonal_wedge(b, gen::fullspace(2)), b));
    }
    // two translated lines meeting in the relative interiors of the (1,0) and (0,1) rays
    auto L1 = tropical_line(v({0, 1})), L2 = tropical_line(v({1, 0}));
    CHECK(equal(diagonal_wedge(L1, L2), point(v({1, 1}), 1)));
    auto two = DeltaForm::weighted(2, 1, {{ray(v({0, 0}), v({1, 0})), Rat(1)}, {ray(v({0, 0}), v({0, 1})), Rat(1)}});
    CHECK_THROWS_AS(diagonal_wedge(two, L), Error);
}

TEST_CASE("transversal wedge fixtures") {
    auto x = DeltaForm::weighted(2, 1, {{line(v({0, 0}), v({1, 0})), Rat(1)}});
    auto y = DeltaForm::weighted(2, 1, {{line(v({0, 0}), v({0, 1})), Rat(1)}});
    auto d = DeltaForm::weighted(2, 1, {{line(v({0, 0}), v({1, 2})), Rat(1)}});
    auto x2 = DeltaForm::weighted(2, 1, {{line(v({0, 1}), v({1, 0})), Rat(1)}});
    CHECK(equal(transversal_wedge(x, y), point(v({0, 0}), 1)));
    CHECK(equal(transversal_wedge(x, d), point(v({0, 0}), 2)));
    CHECK(equal(diagonal_wedge(x, d), point(v({0, 0}), 2)));
    CHECK(transversal_wedge(x, x2).is_zero());
    try {
        transversal_wedge(x, x);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotTransversal);
    }
}

TEST_CASE("translated wedge check") {
    auto L = tropical_line(v({0, 0}));
    auto res = translated_wedge_check(L, L, v({1, 2}), {Rat(1, 2), Rat(1, 4), Rat(1, 8)});
    CHECK(res.stabilized);
    CHECK(res.ok);
    CHECK(equal(res.limit, point(v({0, 0}), 1)));
    auto L1 = tropical_line(v({0, 1})), L2 = tropical_line(v({1, 0}));
    auto quick = translated_wedge_check(L1, L2, v({1, 3}), {Rat(1, 100), Rat(1, 200), Rat(1, 400)});
    CHECK(quick.ok);
    CHECK(quick.eps == Rat(1, 200));
    auto x = DeltaForm::weighted(2, 1, {{line(v({0, 0}), v({1, 0})), Rat(1)}});
    try {
        translated_wedge_check(x, x, v({1, 0}), {Rat(1, 2), Rat(1, 4)});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonGenericVector);
    }
}

TEST_CASE("tropical Bezout") {
    std::mt19937_64 g(43);
    for (int it = 0; it < 8; ++it) {
        int d = int(gen::small(g, 1, 3)), e = int(gen::small(g, 1, 3));
        auto C = gen::hypersurface(g, 2, d), D = gen::hypersurface(g, 2, e);
        CHECK(degree(diagonal_wedge(C, D)) == d * e);
    }
}

TEST_CASE("wedge is graded commutative, associative, and respects supports") {
    std::mt19937_64 g(44);
    for (int it = 0; it < 6; ++it) {
        auto a = gen::balanced(g, 2, int(gen::small(g, 0, 1)), 0, 1, 2);
        auto b = gen::balanced(g, 2, 0, int(gen::small(g, 0, 1)), 1, 2);
        auto c = gen::balanced(g, 2, 0, 0, 0, 2);
        auto ab = diagonal_wedge(a, b), ba = diagonal_wedge(b, a);
        CHECK(equal(ab, ba * sign_pow((a.p() + a.q()) * (b.p() + b.q()))));
        CHECK(equal(diagonal_wedge(ab, c), diagonal_wedge(a, diagonal_wedge(b, c))));
        for (auto& cell : ab.cells()) {
            CHECK(covered(cell.poly.relint_point(), a));
            CHECK(covered(cell.poly.relint_point(), b));
        }
    }
}

TEST_CASE("wedge Leibniz rules and corner-locus associativity") {
    std::mt19937_64 g(45);
    for (int it = 0; it < 5; ++it) {
        auto a = gen::balanced(g, 2, 0, int(gen::small(g, 0, 1)), int(gen::small(g, 0, 1)), 2);
        auto b = gen::balanced(g, 2, int(gen::small(g, 0, 1)), 0, 1, 2);
        Rat s = sign_pow(a.p() + a.q());
        auto ab = diagonal_wedge(a, b);
        CHECK(equal(dP1(ab), diagonal_wedge(dP1(a), b) + diagonal_wedge(a, dP1(b)) * s));
        CHECK(equal(dP2(ab), diagonal_wedge(dP2(a), b) + diagonal_wedge(a, dP2(b)) * s));
        auto phi = gen::pl_function(g, 2, 3);
        auto a0 = gen::balanced(g, 2, 0, 0, 0, 2);
        auto b1 = gen::balanced(g, 2, 0, 0, 1, 2);
        CHECK(equal(corner_locus(phi, diagonal_wedge(a0, b1)), diagonal_wedge(corner_locus(phi, a0), b1)));
    }
}

TEST_CASE("transversal and diagonal wedges agree") {
    std::mt19937_64 g(46);
    int done = 0, tries = 0;
    while (done < 6 && tries < 200) {
        ++tries;
        auto C = gen::hypersurface(g, 2, 1);
        auto D = translated(gen::hypersurface(g, 2, int(gen::small(g, 1, 2))), v({gen::small(g, -5, 5), gen::small(g, -5, 5)}));
        DeltaForm t;
        try {
            t = transversal_wedge(C, D);
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::NotTransversal);
            continue;
        }
        ++done;
        CHECK(equal(t, diagonal_wedge(C, D)));
    }
    CHECK(done == 6);
}
