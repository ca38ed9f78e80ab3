#include "tropcalc/rational.hpp"

#include "tropcalc/errors.hpp"

#include <cctype>

namespace tc {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::NotAFacet: return "NotAFacet";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::SlotOutOfRange: return "SlotOutOfRange";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::NotTransversal: return "NotTransversal";
    case ErrorKind::NonGenericVector: return "NonGenericVector";
    case ErrorKind::CellNotInjective: return "CellNotInjective";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::Internal: return "InternalError";
    }
    return "Error";
}

static bool valid_int(const std::string& s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        fail(ErrorKind::Parse, "bad rational '" + s + "'");
    if (num[0] == '+') num = num.substr(1);
    Int n(num), d(den);
    if (d == 0) fail(ErrorKind::Parse, "zero denominator in '" + s + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string fmt(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string fmt(const Int& x) { return x.get_str(); }

std::string fmt(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt(v[i]);
    }
    return s + ")";
}

Rat dot(const Vec& a, const Vec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec to_rat(const IVec& v) { return Vec(v.begin(), v.end()); }

bool is_zero(const Vec& v) {
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

Int gcd_all(const IVec& v) {
    Int g = 0;
    for (auto& x : v) g = gcd(g, x);
    return g;
}

IVec primitive(const Vec& v) {
    Int l = 1;
    for (auto& x : v) l = lcm(l, x.get_den());
    IVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i] * l).get_num();
    Int g = gcd_all(out);
    if (g != 0)
        for (auto& x : out) x /= g;
    return out;
}

Int factorial(unsigned n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

}  // namespace tc
