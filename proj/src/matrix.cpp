#include "tropcalc/matrix.hpp"

#include "tropcalc/errors.hpp"

#include <algorithm>

namespace tc {

RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i];
    return r;
}

template <class T>
static std::string fmt_mat(const Mat<T>& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows; ++i) {
        if (i) s += ";";
        for (int j = 0; j < m.cols; ++j) {
            if (j) s += ",";
            s += fmt(m(i, j));
        }
    }
    return s + "]";
}
std::string fmt(const RatMat& m) { return fmt_mat(m); }
std::string fmt(const IntMat& m) { return fmt_mat(m); }

Rref rref(const RatMat& A) {
    RatMat M = A;
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int p = -1;
        for (int i = r; i < M.rows; ++i)
            if (M(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < M.cols; ++j) std::swap(M(p, j), M(r, j));
        Rat inv = 1 / M(r, c);
        for (int j = c; j < M.cols; ++j) M(r, j) *= inv;
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || M(i, c) == 0) continue;
            Rat f = M(i, c);
            for (int j = c; j < M.cols; ++j) M(i, j) -= f * M(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    Rref out;
    out.R = RatMat(r, A.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < A.cols; ++j) out.R(i, j) = M(i, j);
    out.pivots = piv;
    return out;
}

int rank(const RatMat& A) { return int(rref(A).pivots.size()); }

std::vector<Vec> kernel(const RatMat& A) {
    Rref e = rref(A);
    std::vector<bool> is_piv(A.cols, false);
    for (int c : e.pivots) is_piv[c] = true;
    std::vector<Vec> out;
    for (int f = 0; f < A.cols; ++f) {
        if (is_piv[f]) continue;
        Vec v(A.cols, Rat(0));
        v[f] = 1;
        for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.R(int(i), f);
        out.push_back(v);
    }
    return out;
}

std::optional<Vec> solve(const RatMat& A, const Vec& b) {
    RatMat M(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) M(i, j) = A(i, j);
        M(i, A.cols) = b[i];
    }
    Rref e = rref(M);
    Vec x(A.cols, Rat(0));
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == A.cols) return std::nullopt;
        x[e.pivots[i]] = e.R(int(i), A.cols);
    }
    return x;
}

Rat det(const RatMat& A) {
    RatMat M = A;
    int n = M.rows;
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (M(i, c) != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(M(p, j), M(c, j));
            d = -d;
        }
        d *= M(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (M(i, c) == 0) continue;
            Rat f = M(i, c) / M(c, c);
            for (int j = c; j < n; ++j) M(i, j) -= f * M(c, j);
        }
    }
    return d;
}

Int det(const IntMat& A) { return det(to_rat(A)).get_num(); }

std::optional<RatMat> inverse(const RatMat& A) {
    int n = A.rows;
    if (n == 0) return RatMat(0, 0);
    RatMat M(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M(i, j) = A(i, j);
        M(i, n + i) = 1;
    }
    Rref e = rref(M);
    if (int(e.pivots.size()) < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    RatMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
    return inv;
}

namespace {

void swap_rows(IntMat& M, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < M.cols; ++j) std::swap(M(a, j), M(b, j));
}
void swap_cols(IntMat& M, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < M.rows; ++i) std::swap(M(i, a), M(i, b));
}
// row a -= q * row b
void axpy_row(IntMat& M, int a, int b, const Int& q) {
    for (int j = 0; j < M.cols; ++j) M(a, j) -= q * M(b, j);
}
void axpy_col(IntMat& M, int a, int b, const Int& q) {
    for (int i = 0; i < M.rows; ++i) M(i, a) -= q * M(i, b);
}

}  // namespace

SmithForm smith_normal_form(const IntMat& A) {
    int m = A.rows, n = A.cols;
    IntMat D = A, U = IntMat::identity(m), V = IntMat::identity(n);
    for (int t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest nonzero entry in the pivot row/column (or whole block if they vanish)
            int bi = -1, bj = -1;
            for (int i = t; i < m; ++i)
                if (D(i, t) != 0 && (bi < 0 || abs(D(i, t)) < abs(D(bi, bj)))) bi = i, bj = t;
            for (int j = t + 1; j < n; ++j)
                if (D(t, j) != 0 && (bi < 0 || abs(D(t, j)) < abs(D(bi, bj)))) bi = t, bj = j;
            if (bi < 0) {
                for (int i = t; i < m && bi < 0; ++i)
                    for (int j = t; j < n; ++j)
                        if (D(i, j) != 0) { bi = i, bj = j; break; }
                if (bi < 0) break;
            }
            swap_rows(D, t, bi), swap_rows(U, t, bi);
            swap_cols(D, t, bj), swap_cols(V, t, bj);
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Int q = D(i, t) / D(t, t);
                axpy_row(D, i, t, q), axpy_row(U, i, t, q);
                if (D(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Int q = D(t, j) / D(t, t);
                axpy_col(D, j, t, q), axpy_col(V, j, t, q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) { bad = i; break; }
            if (bad < 0) break;
            axpy_row(D, t, bad, -1), axpy_row(U, t, bad, -1);
        }
        if (D(t, t) < 0) {
            for (int j = 0; j < n; ++j) D(t, j) = -D(t, j);
            for (int j = 0; j < m; ++j) U(t, j) = -U(t, j);
        }
    }
    return {U, D, V};
}

IntMat hermite_normal_form(const IntMat& A) {
    IntMat H = A;
    int m = H.rows, n = H.cols, r = 0;
    std::vector<int> pivcol;
    for (int c = 0; c < n && r < m; ++c) {
        for (;;) {
            int best = -1;
            for (int i = r; i < m; ++i)
                if (H(i, c) != 0 && (best < 0 || abs(H(i, c)) < abs(H(best, c)))) best = i;
            if (best < 0) break;
            swap_rows(H, r, best);
            bool done = true;
            for (int i = r + 1; i < m; ++i) {
                if (H(i, c) == 0) continue;
                Int q = H(i, c) / H(r, c);
                axpy_row(H, i, r, q);
                if (H(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (H(r, c) == 0) continue;
        if (H(r, c) < 0)
            for (int j = 0; j < n; ++j) H(r, j) = -H(r, j);
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
            if (q != 0) axpy_row(H, i, r, q);
        }
        pivcol.push_back(c);
        ++r;
    }
    IntMat out(r, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = H(i, j);
    return out;
}

}  // namespace tc
