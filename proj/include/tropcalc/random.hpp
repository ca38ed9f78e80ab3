#pragma once

#include "tropcalc/deltaform.hpp"
#include "tropcalc/polyhedron.hpp"
#include "tropcalc/superform.hpp"

#include <algorithm>
#include <functional>

#include <random>

// Seeded random instances for property tests and randomized verification.
namespace tc::gen {

inline long small(std::mt19937_64& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline Poly poly(std::mt19937_64& g, int r, int max_deg = 2, int nterms = 3) {
    Poly f(r);
    for (int t = 0; t < nterms; ++t) {
        Exp e(r, 0);
        int d = int(small(g, 0, max_deg));
        for (int k = 0; k < d; ++k) e[small(g, 0, r - 1)]++;
        f.add_term(e, Rat(small(g, -3, 3)));
    }
    return f;
}

inline std::vector<int> subset(std::mt19937_64& g, int r, int k) {
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), g);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

inline Superform superform(std::mt19937_64& g, int r, int p, int q, int max_deg = 2, int nterms = 3) {
    Superform a(r, p, q);
    for (int t = 0; t < nterms; ++t) a += Superform::term(r, subset(g, r, p), subset(g, r, q), poly(g, r, max_deg, 2));
    return a;
}

inline IntMat int_matrix(std::mt19937_64& g, int rows, int cols, long lo = -2, long hi = 2) {
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Int(small(g, lo, hi));
    return m;
}

inline Vec rat_vec(std::mt19937_64& g, int n, long lo = -3, long hi = 3) {
    Vec v(n);
    for (auto& x : v) x = Rat(small(g, lo, hi));
    return v;
}

inline AffineMap affine_map(std::mt19937_64& g, int src, int tgt) { return AffineMap::make(int_matrix(g, tgt, src), rat_vec(g, tgt)); }

// random polytope as the hull of a few integer points
inline Polyhedron polytope(std::mt19937_64& g, int r, int npts, long lo = -3, long hi = 3) {
    std::vector<Vec> pts;
    for (int i = 0; i < npts; ++i) pts.push_back(rat_vec(g, r, lo, hi));
    return Polyhedron::from_generators(r, pts, {}, {});
}


inline std::vector<AffineForm> affine_forms(std::mt19937_64& g, int r, int n, long slope = 2, long shift = 3) {
    std::vector<AffineForm> fs;
    for (int i = 0; i < n; ++i) {
        IVec a(r);
        for (auto& x : a) x = Int(small(g, -slope, slope));
        fs.push_back({a, Rat(small(g, -shift, shift))});
    }
    return fs;
}

inline PSFunction pl_function(std::mt19937_64& g, int r, int n) {
    auto fs = affine_forms(g, r, n);
    return small(g, 0, 3) ? PSForm::max_of(r, fs) : PSForm::min_of(r, fs);
}

inline DeltaForm whole(int r, const Superform& a) { return DeltaForm::from_cells(r, a.p(), a.q(), 0, {{Polyhedron::whole(r), a}}); }

// Balanced forms: global forms wedged with iterated corner loci of random PL functions.
inline DeltaForm balanced(std::mt19937_64& g, int r, int p, int q, int l, int terms = 3) {
    DeltaForm c = DeltaForm::weighted(r, 0, {{Polyhedron::whole(r), Rat(1)}});
    for (int i = 0; i < l; ++i) c = corner_locus(pl_function(g, r, int(small(g, 2, 3))), c);
    // one d' and one d'' factor may come from a PL function, making the coefficients piecewise
    int a = p > 0 && small(g, 0, 1), b = q > 0 && small(g, 0, 1);
    PSForm w = PSForm::global(superform(g, r, p - a, q - b, 2, terms));
    if (small(g, 0, 1) && p == 0 && q == 0) w = w + pl_function(g, r, 2);
    DeltaForm out = ps_wedge(w, c);
    if (b) out = ps_wedge(dP2(pl_function(g, r, 3)), out);
    if (a) out = ps_wedge(dP1(pl_function(g, r, 3)), out);
    return out;
}

// Degrees clamped to the cell dimension r - l so that a nonzero result exists; retried until nonzero.
inline DeltaForm nonzero_balanced(std::mt19937_64& g, int r, int p, int q, int l, int terms = 3) {
    p = std::min(p, r - l);
    q = std::min(q, r - l);
    for (;;) {
        auto a = balanced(g, r, p, q, l, terms);
        if (!a.is_zero()) return a;
    }
}


// max over monomials of total degree <= d in r variables with random constants
inline PSFunction tropical_polynomial(std::mt19937_64& g, int r, int d, long spread = 6) {
    std::vector<AffineForm> fs;
    std::vector<int> e(r, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == r) {
            IVec a(r);
            for (int k = 0; k < r; ++k) a[k] = e[k];
            fs.push_back({a, Rat(small(g, -spread, spread))});
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(0, d);
    return PSForm::max_of(r, fs);
}

inline DeltaForm fullspace(int r) { return DeltaForm::weighted(r, 0, {{Polyhedron::whole(r), Rat(1)}}); }

inline DeltaForm hypersurface(std::mt19937_64& g, int r, int d) { return corner_locus(tropical_polynomial(g, r, d), fullspace(r)); }

// J a = (-1)^p a
inline Superform symmetric(std::mt19937_64& g, int r, int p, int max_deg = 2, int nterms = 3) {
    Superform a = superform(g, r, p, p, max_deg, nterms);
    return a + j_op(a) * Rat(p % 2 ? -1 : 1);
}

// Continuous piecewise polynomial: each piece of a PL function f_i becomes f_i * u + v.
inline PSFunction pp_function(std::mt19937_64& g, int r, int n, int max_deg = 3) {
    PSFunction w = pl_function(g, r, n);
    Poly u = poly(g, r, std::max(0, max_deg - 1), 2), v = poly(g, r, max_deg, 2);
    if (u.is_zero()) u = Poly::constant(r, Rat(1));
    std::vector<std::pair<Polyhedron, Poly>> pieces;
    for (size_t i = 0; i < w.pieces().size(); ++i) pieces.push_back({w.pieces()[i].poly, w.piece_poly(int(i)) * u + v});
    return PSForm::function(r, pieces, w.proper() ? 1 : -1);
}

}  // namespace tc::gen
