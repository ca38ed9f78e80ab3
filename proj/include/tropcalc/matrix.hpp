#pragma once

#include "tropcalc/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tc {

template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), T(0)) {}

    T& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Mat from_rows(const std::vector<std::vector<T>>& rs, int ncols) {
        Mat m(int(rs.size()), ncols);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < ncols; ++j) m(i, j) = rs[i][j];
        return m;
    }
    static Mat from_cols(const std::vector<std::vector<T>>& cs, int nrows) {
        Mat m(nrows, int(cs.size()));
        for (int j = 0; j < m.cols; ++j)
            for (int i = 0; i < nrows; ++i) m(i, j) = cs[j][i];
        return m;
    }
    std::vector<T> row(int i) const { return std::vector<T>(a.begin() + size_t(i) * cols, a.begin() + size_t(i + 1) * cols); }
    std::vector<T> col(int j) const {
        std::vector<T> v(rows);
        for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Mat transpose() const {
        Mat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using RatMat = Mat<Rat>;
using IntMat = Mat<Int>;

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

template <class T>
std::vector<T> operator*(const Mat<T>& x, const std::vector<T>& v) {
    std::vector<T> z(x.rows, T(0));
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) z[i] += x(i, k) * v[k];
    return z;
}

RatMat to_rat(const IntMat& m);
std::string fmt(const RatMat& m);
std::string fmt(const IntMat& m);

struct Rref {
    RatMat R;                // reduced row echelon form, zero rows dropped
    std::vector<int> pivots; // pivot column of each row
};
Rref rref(const RatMat& A);
int rank(const RatMat& A);
inline int rank(const IntMat& A) { return rank(to_rat(A)); }
// Basis of {x : A x = 0}, one vector per free column (canonical given A's row space).
std::vector<Vec> kernel(const RatMat& A);
// Some x with A x = b, if one exists.
std::optional<Vec> solve(const RatMat& A, const Vec& b);
Rat det(const RatMat& A);
std::optional<RatMat> inverse(const RatMat& A);

struct SmithForm {
    IntMat U, D, V;  // U * A * V == D
};
SmithForm smith_normal_form(const IntMat& A);
// Row-style Hermite normal form of the row lattice of A; zero rows removed.
IntMat hermite_normal_form(const IntMat& A);
Int det(const IntMat& A);

}  // namespace tc
