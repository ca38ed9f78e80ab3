#include "doctest.h"

#include "gen.hpp"
#include "tropcalc/errors.hpp"

#include <algorithm>

using namespace tc;

namespace {

Poly X(int r, int i) { return Poly::var(r, i); }
Poly C(int r, long c) { return Poly::constant(r, Rat(c)); }
Superform dp(int r, int i) { return Superform::dprime(r, i); }
Superform ddp(int r, int i) { return Superform::ddprime(r, i); }

// Free exterior algebra on generators 0..r-1 (d') and r..2r-1 (d''); words sorted by bubble sort.
struct Word {
    std::vector<int> g;
    Poly c;
};

Superform from_words(int r, int p, int q, const std::vector<Word>& ws) {
    Superform out(r, p, q);
    for (auto w : ws) {
        int swaps = 0;
        bool dup = false;
        for (size_t i = 0; i < w.g.size(); ++i)
            for (size_t j = 0; j + 1 < w.g.size() - i; ++j) {
                if (w.g[j] == w.g[j + 1]) dup = true;
                if (w.g[j] > w.g[j + 1]) std::swap(w.g[j], w.g[j + 1]), ++swaps;
            }
        for (size_t j = 0; j + 1 < w.g.size(); ++j) dup |= w.g[j] == w.g[j + 1];
        if (dup) continue;
        Mask I = 0, J = 0;
        for (int x : w.g) (x < r ? I : J) |= Mask(1) << (x < r ? x : x - r);
        out.add({I, J}, swaps % 2 ? -w.c : w.c);
    }
    return out;
}

std::vector<int> word_of(int r, const IndexPair& k) {
    std::vector<int> w = mask_indices(k.first);
    for (int j : mask_indices(k.second)) w.push_back(r + j);
    return w;
}

Superform oracle_wedge(const Superform& a, const Superform& b) {
    int r = a.rank();
    std::vector<Word> ws;
    for (auto& [k1, f] : a.terms())
        for (auto& [k2, g] : b.terms()) {
            auto w = word_of(r, k1);
            auto w2 = word_of(r, k2);
            w.insert(w.end(), w2.begin(), w2.end());
            ws.push_back({w, f * g});
        }
    return from_words(r, a.p() + b.p(), a.q() + b.q(), ws);
}

// Pull-back by expanding each differential d x_i = sum_j M_ij d y_j in the free algebra.
Superform oracle_pullback(const RatMat& M, const Vec& t, const Superform& a) {
    int r = a.rank(), s = M.cols;
    std::vector<Word> ws;
    for (auto& [k, f] : a.terms()) {
        auto w = word_of(r, k);
        std::vector<Word> cur{{{}, f.affine_sub(M, t)}};
        for (int x : w) {
            std::vector<Word> nxt;
            bool dd = x >= r;
            int i = dd ? x - r : x;
            for (auto& c : cur)
                for (int j = 0; j < s; ++j) {
                    if (M(i, j) == 0) continue;
                    Word n = c;
                    n.g.push_back(dd ? s + j : j);
                    n.c = n.c * M(i, j);
                    nxt.push_back(n);
                }
            cur = nxt;
        }
        ws.insert(ws.end(), cur.begin(), cur.end());
    }
    return from_words(s, a.p(), a.q(), ws);
}

// alpha(v_1..v_p; w_1..w_q) at the point x, as an alternating multilinear function
Rat evaluate(const Superform& a, const Vec& x, const std::vector<Vec>& vs, const std::vector<Vec>& ws) {
    Rat total = 0;
    for (auto& [k, f] : a.terms()) {
        auto I = mask_indices(k.first), J = mask_indices(k.second);
        RatMat A(a.p(), a.p()), B(a.q(), a.q());
        for (int i = 0; i < a.p(); ++i)
            for (int j = 0; j < a.p(); ++j) A(i, j) = vs[j][I[i]];
        for (int i = 0; i < a.q(); ++i)
            for (int j = 0; j < a.q(); ++j) B(i, j) = ws[j][J[i]];
        Rat da = a.p() ? det(A) : Rat(1), db = a.q() ? det(B) : Rat(1);
        total += f.eval(x) * da * db;
    }
    return total;
}

}  // namespace

TEST_CASE("wedge examples") {
    int r = 2;
    CHECK(wedge(dp(r, 0), ddp(r, 0)) == -wedge(ddp(r, 0), dp(r, 0)));
    Superform a = Superform::dprime(r, 0) * X(r, 0), b = Superform::ddprime(r, 1) * X(r, 1);
    Superform ab = wedge(a, b);
    CHECK(ab.coeff({0}, {1}) == X(r, 0) * X(r, 1));
    CHECK(ab.terms().size() == 1);
    Superform lhs = wedge(wedge(wedge(dp(r, 0), ddp(r, 0)), dp(r, 1)), ddp(r, 1));
    CHECK(lhs.coeff({0, 1}, {0, 1}) == C(r, -1));
    CHECK(lhs.terms().size() == 1);
}

TEST_CASE("wedge agrees with the free exterior algebra and is graded commutative") {
    std::mt19937_64 g(11);
    for (int it = 0; it < 200; ++it) {
        int r = int(gen::small(g, 1, 4));
        int p = int(gen::small(g, 0, r)), q = int(gen::small(g, 0, r));
        int p2 = int(gen::small(g, 0, r - p)), q2 = int(gen::small(g, 0, r - q));
        auto a = gen::superform(g, r, p, q), b = gen::superform(g, r, p2, q2);
        auto ab = wedge(a, b);
        CHECK(ab == oracle_wedge(a, b));
        Superform ba = wedge(b, a);
        CHECK(ab == (((p + q) * (p2 + q2)) % 2 ? -ba : ba));
        int p3 = int(gen::small(g, 0, r - p - p2)), q3 = int(gen::small(g, 0, r - q - q2));
        auto c = gen::superform(g, r, p3, q3);
        CHECK(wedge(ab, c) == wedge(a, wedge(b, c)));
    }
    CHECK_THROWS_AS(wedge(dp(2, 0), dp(3, 0)), Error);
}

TEST_CASE("d' and d'' examples") {
    int r = 2;
    CHECK(d1(Superform::scalar(X(r, 0) * X(r, 0))) == dp(r, 0) * (X(r, 0) * Rat(2)));
    CHECK(d1(d1(Superform::scalar(X(r, 0) * X(r, 1)))).is_zero());
    CHECK(d1(ddp(r, 0) * X(r, 1)) == wedge(dp(r, 1), ddp(r, 0)));
    CHECK(d2(Superform::scalar(X(r, 0))) == ddp(r, 0));
    CHECK(d2(dp(r, 0) * X(r, 1)) == -wedge(dp(r, 0), ddp(r, 1)));
}

TEST_CASE("differential identities on random superforms") {
    std::mt19937_64 g(12);
    for (int it = 0; it < 200; ++it) {
        int r = int(gen::small(g, 1, 4));
        int p = int(gen::small(g, 0, r)), q = int(gen::small(g, 0, r));
        auto a = gen::superform(g, r, p, q, 3);
        CHECK(d1(d1(a)).is_zero());
        CHECK(d2(d2(a)).is_zero());
        CHECK(d1(d2(a)) == -d2(d1(a)));
        CHECK(j_op(j_op(a)) == a);
        CHECK(j_op(d1(a)) == d2(j_op(a)));
        CHECK(j_op(d2(a)) == d1(j_op(a)));
        int p2 = int(gen::small(g, 0, r - p)), q2 = int(gen::small(g, 0, r - q));
        auto b = gen::superform(g, r, p2, q2, 3);
        Rat s = (p + q) % 2 ? Rat(-1) : Rat(1);
        CHECK(d1(wedge(a, b)) == wedge(d1(a), b) + wedge(a, d1(b)) * s);
        CHECK(d2(wedge(a, b)) == wedge(d2(a), b) + wedge(a, d2(b)) * s);
    }
}

TEST_CASE("J examples") {
    int r = 2;
    CHECK(j_op(dp(r, 0)) == ddp(r, 0));
    CHECK(j_op(wedge(dp(r, 0), ddp(r, 1))) == -wedge(dp(r, 1), ddp(r, 0)));
}

TEST_CASE("contraction examples") {
    int r = 2;
    Poly f = X(r, 0) * X(r, 0) * X(r, 1) + X(r, 1) * Rat(3);
    Vec v{Rat(2), Rat(-1)};
    Superform c = contract(d2(Superform::scalar(f)), {}, {{1, v}});
    CHECK(c == Superform::scalar(f.deriv_dir(v)));
    CHECK(contract(d1(Superform::scalar(f)), {{1, v}}, {}) == Superform::scalar(f.deriv_dir(v)));
    Vec e1{Rat(1), Rat(0)}, e2{Rat(0), Rat(1)};
    CHECK(contract(wedge(dp(r, 1), ddp(r, 0)), {{1, e1}}, {}).is_zero());
    CHECK(contract(wedge(dp(r, 0), dp(r, 1)), {{1, e2}}, {}) == -dp(r, 0));
    CHECK_THROWS_AS(contract(dp(r, 0), {{2, e1}}, {}), Error);
    CHECK_THROWS_AS(contract(dp(r, 0), {}, {{1, e1}}), Error);
    try {
        contract(dp(r, 0), {{0, e1}}, {});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SlotOutOfRange);
    }
}

TEST_CASE("contraction matches insertion into the multilinear form") {
    std::mt19937_64 g(13);
    for (int it = 0; it < 150; ++it) {
        int r = int(gen::small(g, 1, 4));
        int p = int(gen::small(g, 0, r)), q = int(gen::small(g, 0, r));
        auto a = gen::superform(g, r, p, q, 1);
        int na = int(gen::small(g, 0, p)), nb = int(gen::small(g, 0, q));
        auto pa = gen::subset(g, p, na), pb = gen::subset(g, q, nb);
        std::vector<Vec> vs(p), ws(q);
        for (auto& v : vs) v = gen::rat_vec(g, r);
        for (auto& w : ws) w = gen::rat_vec(g, r);
        std::vector<Slot> sa, sb;
        std::vector<Vec> rv, rw;
        for (int i = 0; i < p; ++i) {
            if (std::count(pa.begin(), pa.end(), i)) sa.push_back({i + 1, vs[i]});
            else rv.push_back(vs[i]);
        }
        for (int j = 0; j < q; ++j) {
            if (std::count(pb.begin(), pb.end(), j)) sb.push_back({j + 1, ws[j]});
            else rw.push_back(ws[j]);
        }
        Vec x = gen::rat_vec(g, r);
        Rat full = evaluate(a, x, vs, ws);
        if (((p - na) * nb) % 2) full = -full;
        CHECK(evaluate(contract(a, sa, sb), x, rv, rw) == full);
    }
}

TEST_CASE("contraction Leibniz rule") {
    std::mt19937_64 g(14);
    for (int it = 0; it < 150; ++it) {
        int r = int(gen::small(g, 1, 4));
        int p = int(gen::small(g, 0, r)), q = int(gen::small(g, 0, r));
        int p2 = int(gen::small(g, 0, r - p)), q2 = int(gen::small(g, 0, r - q));
        auto a = gen::superform(g, r, p, q), b = gen::superform(g, r, p2, q2);
        Vec v = gen::rat_vec(g, r);
        Rat s = (p + q) % 2 ? Rat(-1) : Rat(1);
        auto ab = wedge(a, b);
        if (p + p2 > 0) {
            Superform lhs = contract(ab, {{1, v}}, {});
            Superform rhs(r, p + p2 - 1, q + q2);
            if (p > 0) rhs += wedge(contract(a, {{1, v}}, {}), b);
            if (p2 > 0) rhs += wedge(a, contract(b, {{1, v}}, {})) * s;
            CHECK(lhs == rhs);
        }
        if (q + q2 > 0) {
            Superform lhs = contract(ab, {}, {{1, v}});
            Superform rhs(r, p + p2, q + q2 - 1);
            if (q > 0) rhs += wedge(contract(a, {}, {{1, v}}), b);
            if (q2 > 0) rhs += wedge(a, contract(b, {}, {{1, v}})) * s;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("pull-back examples") {
    std::mt19937_64 g(15);
    auto a = gen::superform(g, 3, 1, 2);
    CHECK(pullback_form(AffineMap::identity(3), a) == a);
    IntMat m(2, 1);
    m(0, 0) = 1, m(1, 0) = 1;
    auto F = AffineMap::make(m, Vec(2, Rat(0)));
    CHECK(pullback_form(F, wedge(dp(2, 0), ddp(2, 1))) == wedge(dp(1, 0), ddp(1, 0)));
    CHECK_THROWS_AS(pullback_form(F, dp(3, 0)), Error);
}

TEST_CASE("pull-back agrees with differential expansion, is functorial and commutes with d") {
    std::mt19937_64 g(16);
    for (int it = 0; it < 120; ++it) {
        int r = int(gen::small(g, 1, 3)), s = int(gen::small(g, 1, 3)), u = int(gen::small(g, 1, 3));
        int p = int(gen::small(g, 0, r)), q = int(gen::small(g, 0, r));
        auto a = gen::superform(g, r, p, q);
        auto F = gen::affine_map(g, s, r), G = gen::affine_map(g, u, s);
        auto Fa = pullback_form(F, a);
        CHECK(Fa == oracle_pullback(to_rat(F.linear), F.translate, a));
        CHECK(pullback_form(F.compose(G), a) == pullback_form(G, Fa));
        CHECK(pullback_form(F, d1(a)) == d1(Fa));
        CHECK(pullback_form(F, d2(a)) == d2(Fa));
        int p2 = int(gen::small(g, 0, r - p)), q2 = int(gen::small(g, 0, r - q));
        auto b = gen::superform(g, r, p2, q2);
        CHECK(pullback_form(F, wedge(a, b)) == wedge(Fa, pullback_form(F, b)));
    }
}

TEST_CASE("restriction examples") {
    auto line = Polyhedron::make(2, {}, {{Vec{Rat(0), Rat(1)}, Rat(0)}});
    CHECK(restrict_to(line, ddp(2, 1) * X(2, 1)).is_zero());
    auto pt = Polyhedron::point(Vec{Rat(1), Rat(2)});
    CHECK(restrict_to(pt, ddp(2, 0)).is_zero());
    CHECK(restrict_to(pt, Superform::scalar(X(2, 0) + X(2, 1))) == Superform::constant(0, Rat(3)));
    auto diag = Polyhedron::make(2, {}, {{Vec{Rat(1), Rat(-1)}, Rat(0)}});
    auto rd = restrict_to(diag, dp(2, 0));
    CHECK(rd.rank() == 1);
    CHECK((rd == dp(1, 0) || rd == -dp(1, 0)));
    CHECK(rd == dp(1, 0) * Rat(diag.basis()(0, 0)));
}

TEST_CASE("canonical form on a cell depends only on the restriction") {
    std::mt19937_64 g(17);
    for (int it = 0; it < 60; ++it) {
        int r = 3;
        auto sigma = gen::polytope(g, r, int(gen::small(g, 1, 4)));
        int p = int(gen::small(g, 0, 2)), q = int(gen::small(g, 0, 2));
        auto a = gen::superform(g, r, p, q);
        auto ca = canonical_on(sigma, a);
        CHECK(restrict_to(sigma, ca) == restrict_to(sigma, a));
        CHECK(canonical_on(sigma, ca) == ca);
        // adding something vanishing on the hull does not change the canonical form
        for (auto& e : sigma.hull_eqs()) {
            Vec av = to_rat(e.a);
            Poly h = Poly::linear(av, -e.b);
            auto bump = Superform::scalar(h) * gen::poly(g, r, 1);
            if (p + q == 0) CHECK(canonical_on(sigma, a + bump) == ca);
        }
    }
}
