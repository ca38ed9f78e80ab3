#pragma once

#include "tropcalc/affine_map.hpp"
#include "tropcalc/poly.hpp"
#include "tropcalc/polyhedron.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tc {

using Mask = uint32_t;
using IndexPair = std::pair<Mask, Mask>;  // (I, J) as bitmasks over coordinates

// Sum of f_IJ d'x_I ^ d''x_J of bidegree (p, q) with polynomial coefficients.
class Superform {
public:
    Superform() = default;
    Superform(int r, int p, int q) : r_(r), p_(p), q_(q) {}
    static Superform scalar(const Poly& f);
    static Superform constant(int r, const Rat& c);
    static Superform dprime(int r, int i);   // d'x_i
    static Superform ddprime(int r, int i);  // d''x_i
    static Superform term(int r, const std::vector<int>& I, const std::vector<int>& J, const Poly& f);

    int rank() const { return r_; }
    int p() const { return p_; }
    int q() const { return q_; }
    const std::map<IndexPair, Poly>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int degree() const;  // max coefficient degree, -1 for zero
    Poly coeff(const std::vector<int>& I, const std::vector<int>& J) const;

    void add(const IndexPair& k, const Poly& f);
    Superform& operator+=(const Superform& o);
    Superform& operator-=(const Superform& o);
    Superform operator+(const Superform& o) const;
    Superform operator-(const Superform& o) const;
    Superform operator-() const;
    Superform operator*(const Rat& c) const;
    Superform operator*(const Poly& f) const;
    bool operator==(const Superform& o) const;
    bool operator!=(const Superform& o) const { return !(*this == o); }

    // coefficients mapped by fn; bidegree and rank unchanged
    template <class F>
    Superform map_coeffs(F fn, int new_rank) const {
        Superform out(new_rank, p_, q_);
        for (auto& [k, f] : t_) out.add(k, fn(f));
        return out;
    }

    std::string str() const;

private:
    int r_ = 0, p_ = 0, q_ = 0;
    std::map<IndexPair, Poly> t_;
};

std::vector<int> mask_indices(Mask m);
Mask indices_mask(const std::vector<int>& idx);

Superform wedge(const Superform& a, const Superform& b);
Superform d1(const Superform& a);  // d'
Superform d2(const Superform& a);  // d''
Superform j_op(const Superform& a);

struct Slot {
    int position;  // 1-based within the d' (resp. d'') block
    Vec v;
};
// Inserts vectors at the given positions. The d'-block insertion is positional; the
// d''-block insertion carries the sign (-1)^{(p - #d'-slots) * #d''-slots}, which makes a
// single d''-slot contraction an odd derivation.
Superform contract(const Superform& a, const std::vector<Slot>& dprime_slots, const std::vector<Slot>& ddprime_slots);

// Pull-back along y -> M y + t (M of size a.rank() x s).
Superform pullback_linear(const RatMat& M, const Vec& t, const Superform& a);
Superform pullback_form(const AffineMap& F, const Superform& a);

// Pull-back to lattice coordinates of the affine hull of sigma.
Superform restrict_to(const Polyhedron& sigma, const Superform& a);
// Extension of a form on sigma's lattice coordinates through the canonical projection.
Superform extend_from(const Polyhedron& sigma, const Superform& local);
// extend_from(sigma, restrict_to(sigma, a))
Superform canonical_on(const Polyhedron& sigma, const Superform& a);

// Embed a form on R^r into R^{new_rank}, coordinate i going to offset + i.
Superform shift(const Superform& a, int new_rank, int offset);

}  // namespace tc
