#pragma once

#include "tropcalc/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace tc {

using Exp = std::vector<int>;

// Multivariate polynomial over Q in r variables; zero coefficients are never stored.
class Poly {
public:
    Poly() = default;
    explicit Poly(int r) : r_(r) {}
    static Poly constant(int r, const Rat& c);
    static Poly var(int r, int i);
    static Poly monomial(const Exp& e, const Rat& c);
    static Poly linear(const Vec& a, const Rat& c);  // a.x + c

    int rank() const { return r_; }
    const std::map<Exp, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int degree() const;
    Rat constant_term() const;

    void add_term(const Exp& e, const Rat& c);
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    bool operator==(const Poly& o) const { return r_ == o.r_ && t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly deriv(int i) const;
    Poly deriv_dir(const Vec& v) const;
    Rat eval(const Vec& x) const;
    // substitute x_i := subs[i]; subs all live in the same ring
    Poly compose(const std::vector<Poly>& subs, int new_rank) const;
    // x = M y + t with M of size rank() x s
    Poly affine_sub(const RatMat& M, const Vec& t) const;
    // embed into r' variables, variable i going to offset + i
    Poly shift(int new_rank, int offset) const;

    std::string str() const;

private:
    int r_ = 0;
    std::map<Exp, Rat> t_;
};

}  // namespace tc
