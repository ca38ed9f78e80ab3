#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tc {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Rat>;
using IVec = std::vector<Int>;

// Accepts "p", "-p", "p/q". Throws Error(Parse) on anything else or q == 0.
Rat parse_rat(const std::string& s);
// "p/q", or "p" when q == 1.
std::string fmt(const Rat& x);
std::string fmt(const Int& x);
std::string fmt(const Vec& v);

Rat dot(const Vec& a, const Vec& b);
Vec to_rat(const IVec& v);
bool is_zero(const Vec& v);

// Positive rescaling of a nonzero rational vector to a primitive integer vector.
IVec primitive(const Vec& v);
Int gcd_all(const IVec& v);

Int factorial(unsigned n);

}  // namespace tc
