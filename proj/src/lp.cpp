#include "tropcalc/lp.hpp"

#include "tropcalc/errors.hpp"
#include "tropcalc/matrix.hpp"

#include <optional>

namespace tc {

namespace {

// Dense tableau for max c.x, A x = b, x >= 0, b >= 0. Bland's rule throughout.
struct Tableau {
    int m, n;            // rows, structural columns (including artificials)
    RatMat T;            // m x (n + 1), last column rhs
    std::vector<int> basis;
    std::vector<bool> banned;

    void pivot(int r, int c) {
        Rat inv = 1 / T(r, c);
        for (int j = 0; j <= n; ++j) T(r, j) *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || T(i, c) == 0) continue;
            Rat f = T(i, c);
            for (int j = 0; j <= n; ++j)
                if (T(r, j) != 0) T(i, j) -= f * T(r, j);
        }
        basis[r] = c;
    }

    // returns false when unbounded
    bool run(const Vec& cost) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < n && enter < 0; ++j) {
                if (banned[j]) continue;
                bool in_basis = false;
                for (int b : basis) in_basis |= (b == j);
                if (in_basis) continue;
                Rat red = cost[j];
                for (int i = 0; i < m; ++i) red -= cost[basis[i]] * T(i, j);
                if (red > 0) enter = j;
            }
            if (enter < 0) return true;
            int leave = -1;
            Rat best;
            for (int i = 0; i < m; ++i) {
                if (T(i, enter) <= 0) continue;
                Rat ratio = T(i, n) / T(i, enter);
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    Vec point(int k) const {
        Vec x(k, Rat(0));
        for (int i = 0; i < m; ++i)
            if (basis[i] < k) x[basis[i]] = T(i, n);
        return x;
    }
};

struct Standard {
    RatMat A;
    Vec b;
};

// Phase one on {x >= 0, A x = b}; leaves a tableau with a feasible basis over the first k columns.
std::optional<Tableau> phase_one(const Standard& s) {
    int m = s.A.rows, k = s.A.cols;
    Tableau t{m, k + m, RatMat(m, k + m + 1), std::vector<int>(m), std::vector<bool>(k + m, false)};
    for (int i = 0; i < m; ++i) {
        Rat sg = s.b[i] < 0 ? -1 : 1;
        for (int j = 0; j < k; ++j) t.T(i, j) = sg * s.A(i, j);
        t.T(i, k + i) = 1;
        t.T(i, k + m) = sg * s.b[i];
        t.basis[i] = k + i;
    }
    Vec cost(k + m, Rat(0));
    for (int i = 0; i < m; ++i) cost[k + i] = -1;
    t.run(cost);
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= k && t.T(i, k + m) != 0) return std::nullopt;
    // drive artificials out, dropping redundant rows
    for (int i = 0; i < t.m; ++i) {
        if (t.basis[i] < k) continue;
        int c = -1;
        for (int j = 0; j < k; ++j)
            if (t.T(i, j) != 0) { c = j; break; }
        if (c >= 0) {
            t.pivot(i, c);
            continue;
        }
        RatMat T2(t.m - 1, t.n + 1);
        for (int a = 0, r = 0; a < t.m; ++a) {
            if (a == i) continue;
            for (int j = 0; j <= t.n; ++j) T2(r, j) = t.T(a, j);
            ++r;
        }
        t.T = T2;
        t.basis.erase(t.basis.begin() + i);
        --t.m;
        --i;
    }
    for (int j = k; j < k + m; ++j) t.banned[j] = true;
    return t;
}

int infer_dim(const std::vector<Constraint>& a, const std::vector<Constraint>& b, int dim) {
    if (dim >= 0) return dim;
    if (!a.empty()) return int(a[0].a.size());
    if (!b.empty()) return int(b[0].a.size());
    return 0;
}

void check_dims(const std::vector<Constraint>& a, const std::vector<Constraint>& b, int dim) {
    for (auto& c : a)
        if (int(c.a.size()) != dim) fail(ErrorKind::DimensionMismatch, "inequality of length " + std::to_string(c.a.size()) + ", expected " + std::to_string(dim));
    for (auto& c : b)
        if (int(c.a.size()) != dim) fail(ErrorKind::DimensionMismatch, "equality of length " + std::to_string(c.a.size()) + ", expected " + std::to_string(dim));
}

// x = u - v, slack per inequality.
Standard to_standard(const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs, int n) {
    int mi = int(ineqs.size()), me = int(eqs.size());
    Standard s{RatMat(mi + me, 2 * n + mi), Vec(mi + me)};
    for (int i = 0; i < mi; ++i) {
        for (int j = 0; j < n; ++j) {
            s.A(i, j) = ineqs[i].a[j];
            s.A(i, n + j) = -ineqs[i].a[j];
        }
        s.A(i, 2 * n + i) = 1;
        s.b[i] = ineqs[i].b;
    }
    for (int i = 0; i < me; ++i) {
        for (int j = 0; j < n; ++j) {
            s.A(mi + i, j) = eqs[i].a[j];
            s.A(mi + i, n + j) = -eqs[i].a[j];
        }
        s.b[mi + i] = eqs[i].b;
    }
    return s;
}

}  // namespace

LpResult lp_feasible(const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs, int dim) {
    int n = infer_dim(ineqs, eqs, dim);
    check_dims(ineqs, eqs, n);
    LpResult res;
    Standard s = to_standard(ineqs, eqs, n);
    if (auto t = phase_one(s)) {
        Vec uv = t->point(2 * n);
        res.feasible = true;
        res.witness.assign(n, Rat(0));
        for (int j = 0; j < n; ++j) res.witness[j] = uv[j] - uv[n + j];
        return res;
    }
    // Farkas system: y >= 0, z = z+ - z-, sum y a + sum z e = 0, y.b + z.f = -1
    int mi = int(ineqs.size()), me = int(eqs.size());
    Standard f{RatMat(n + 1, mi + 2 * me), Vec(n + 1, Rat(0))};
    for (int i = 0; i < mi; ++i) {
        for (int j = 0; j < n; ++j) f.A(j, i) = ineqs[i].a[j];
        f.A(n, i) = ineqs[i].b;
    }
    for (int i = 0; i < me; ++i) {
        for (int j = 0; j < n; ++j) {
            f.A(j, mi + i) = eqs[i].a[j];
            f.A(j, mi + me + i) = -eqs[i].a[j];
        }
        f.A(n, mi + i) = eqs[i].b;
        f.A(n, mi + me + i) = -eqs[i].b;
    }
    f.b[n] = -1;
    auto t = phase_one(f);
    if (!t) fail(ErrorKind::Internal, "LP neither feasible nor certified infeasible");
    Vec y = t->point(mi + 2 * me);
    res.farkas_ineq.assign(y.begin(), y.begin() + mi);
    res.farkas_eq.assign(me, Rat(0));
    for (int i = 0; i < me; ++i) res.farkas_eq[i] = y[mi + i] - y[mi + me + i];
    return res;
}

bool verify_farkas(const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs, const LpResult& res) {
    if (res.feasible) return false;
    if (res.farkas_ineq.size() != ineqs.size() || res.farkas_eq.size() != eqs.size()) return false;
    int n = infer_dim(ineqs, eqs, -1);
    Vec comb(n, Rat(0));
    Rat rhs = 0;
    for (size_t i = 0; i < ineqs.size(); ++i) {
        if (res.farkas_ineq[i] < 0) return false;
        for (int j = 0; j < n; ++j) comb[j] += res.farkas_ineq[i] * ineqs[i].a[j];
        rhs += res.farkas_ineq[i] * ineqs[i].b;
    }
    for (size_t i = 0; i < eqs.size(); ++i) {
        for (int j = 0; j < n; ++j) comb[j] += res.farkas_eq[i] * eqs[i].a[j];
        rhs += res.farkas_eq[i] * eqs[i].b;
    }
    return is_zero(comb) && rhs < 0;
}

LpOpt lp_maximize(const Vec& c, const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs) {
    int n = int(c.size());
    check_dims(ineqs, eqs, n);
    Standard s = to_standard(ineqs, eqs, n);
    LpOpt out;
    auto t = phase_one(s);
    if (!t) return out;
    Vec cost(t->n, Rat(0));
    for (int j = 0; j < n; ++j) {
        cost[j] = c[j];
        cost[n + j] = -c[j];
    }
    if (!t->run(cost)) {
        out.status = LpStatus::Unbounded;
        return out;
    }
    Vec uv = t->point(2 * n);
    out.status = LpStatus::Optimal;
    out.point.assign(n, Rat(0));
    for (int j = 0; j < n; ++j) out.point[j] = uv[j] - uv[n + j];
    out.value = dot(c, out.point);
    return out;
}

}  // namespace tc
