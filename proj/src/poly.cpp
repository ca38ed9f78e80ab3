#include "tropcalc/poly.hpp"

#include "tropcalc/errors.hpp"

namespace tc {

Poly Poly::constant(int r, const Rat& c) {
    Poly p(r);
    p.add_term(Exp(r, 0), c);
    return p;
}

Poly Poly::var(int r, int i) {
    Exp e(r, 0);
    e[i] = 1;
    return monomial(e, Rat(1));
}

Poly Poly::monomial(const Exp& e, const Rat& c) {
    Poly p(int(e.size()));
    p.add_term(e, c);
    return p;
}

Poly Poly::linear(const Vec& a, const Rat& c) {
    int r = int(a.size());
    Poly p = constant(r, c);
    for (int i = 0; i < r; ++i)
        if (a[i] != 0) {
            Exp e(r, 0);
            e[i] = 1;
            p.add_term(e, a[i]);
        }
    return p;
}

int Poly::degree() const {
    int d = -1;
    for (auto& [e, c] : t_) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

Rat Poly::constant_term() const {
    auto it = t_.find(Exp(r_, 0));
    return it == t_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Exp& e, const Rat& c) {
    if (c == 0) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) t_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.r_ != r_ && !o.is_zero() && !is_zero()) fail(ErrorKind::AmbientMismatch, "adding polynomials in different rings");
    if (is_zero()) r_ = o.r_;
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.r_ != r_ && !o.is_zero() && !is_zero()) fail(ErrorKind::AmbientMismatch, "subtracting polynomials in different rings");
    if (is_zero()) r_ = o.r_;
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly p = *this;
    p += o;
    return p;
}

Poly Poly::operator-(const Poly& o) const {
    Poly p = *this;
    p -= o;
    return p;
}

Poly Poly::operator-() const {
    Poly p(r_);
    for (auto& [e, c] : t_) p.t_.emplace(e, -c);
    return p;
}

Poly Poly::operator*(const Poly& o) const {
    Poly p(r_);
    for (auto& [e1, c1] : t_)
        for (auto& [e2, c2] : o.t_) {
            Exp e(r_);
            for (int i = 0; i < r_; ++i) e[i] = e1[i] + e2[i];
            p.add_term(e, c1 * c2);
        }
    return p;
}

Poly Poly::operator*(const Rat& c) const {
    Poly p(r_);
    if (c == 0) return p;
    for (auto& [e, x] : t_) p.t_.emplace(e, x * c);
    return p;
}

Poly Poly::deriv(int i) const {
    Poly p(r_);
    for (auto& [e, c] : t_) {
        if (e[i] == 0) continue;
        Exp f = e;
        f[i] -= 1;
        p.add_term(f, c * e[i]);
    }
    return p;
}

Poly Poly::deriv_dir(const Vec& v) const {
    Poly p(r_);
    for (int i = 0; i < r_; ++i)
        if (v[i] != 0) p += deriv(i) * v[i];
    return p;
}

Rat Poly::eval(const Vec& x) const {
    Rat s = 0;
    for (auto& [e, c] : t_) {
        Rat m = c;
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < e[i]; ++k) m *= x[i];
        s += m;
    }
    return s;
}

Poly Poly::compose(const std::vector<Poly>& subs, int new_rank) const {
    std::vector<std::vector<Poly>> pw(r_);
    Poly out(new_rank);
    for (auto& [e, c] : t_) {
        Poly m = constant(new_rank, c);
        for (int i = 0; i < r_; ++i) {
            if (e[i] == 0) continue;
            auto& cache = pw[i];
            if (cache.empty()) cache.push_back(constant(new_rank, Rat(1)));
            while (int(cache.size()) <= e[i]) cache.push_back(cache.back() * subs[i]);
            m = m * cache[e[i]];
        }
        out += m;
    }
    return out;
}

Poly Poly::affine_sub(const RatMat& M, const Vec& t) const {
    std::vector<Poly> subs;
    for (int i = 0; i < r_; ++i) subs.push_back(linear(M.row(i), t[i]));
    return compose(subs, M.cols);
}

Poly Poly::shift(int new_rank, int offset) const {
    Poly p(new_rank);
    for (auto& [e, c] : t_) {
        Exp f(new_rank, 0);
        for (int i = 0; i < r_; ++i) f[offset + i] = e[i];
        p.t_.emplace(f, c);
    }
    return p;
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto& [e, c] : t_) {
        if (!s.empty()) s += " + ";
        s += fmt(c);
        for (int i = 0; i < r_; ++i)
            if (e[i]) s += "*x" + std::to_string(i + 1) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    }
    return s;
}

}  // namespace tc
