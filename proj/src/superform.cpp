#include "tropcalc/superform.hpp"

#include "tropcalc/errors.hpp"

#include <functional>
#include <set>

namespace tc {

Vec AffineMap::apply(const Vec& x) const {
    Vec y = translate;
    for (int i = 0; i < target_rank(); ++i)
        for (int j = 0; j < source_rank(); ++j)
            if (linear(i, j) != 0) y[i] += linear(i, j) * x[j];
    return y;
}

AffineMap AffineMap::compose(const AffineMap& g) const {
    if (g.target_rank() != source_rank()) fail(ErrorKind::AmbientMismatch, "composing maps with incompatible ranks");
    AffineMap h;
    h.linear = linear * g.linear;
    h.translate = apply(g.translate);
    return h;
}

AffineMap AffineMap::identity(int r) { return {IntMat::identity(r), Vec(r, Rat(0))}; }

AffineMap AffineMap::make(const IntMat& m, const Vec& t) {
    if (int(t.size()) != m.rows) fail(ErrorKind::DimensionMismatch, "translation length differs from target rank");
    return {m, t};
}

namespace {

inline int bits(Mask m) { return __builtin_popcount(m); }
inline int below(Mask m, int i) { return bits(m & ((Mask(1) << i) - 1)); }
inline int merge_parity(Mask a, Mask b) {
    int n = 0;
    for (Mask x = b; x; x &= x - 1) {
        int i = __builtin_ctz(x);
        n += bits(a >> (i + 1));
    }
    return n & 1;
}

void combinations(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (int(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// Laplace expansion of inserting vectors at block positions.
// Returns (remaining mask, factor) pairs.
std::vector<std::pair<Mask, Rat>> insert_block(Mask I, const std::vector<Slot>& slots) {
    std::vector<int> idx = mask_indices(I);
    int p = int(idx.size()), k = int(slots.size());
    std::vector<std::pair<Mask, Rat>> out;
    if (k == 0) {
        out.push_back({I, Rat(1)});
        return out;
    }
    int ssum = 0;
    for (auto& s : slots) ssum += s.position;
    std::vector<std::vector<int>> subs;
    combinations(p, k, subs);
    for (auto& A : subs) {
        RatMat D(k, k);
        int asum = 0;
        for (int a = 0; a < k; ++a) {
            asum += A[a] + 1;
            for (int s = 0; s < k; ++s) D(a, s) = slots[s].v[idx[A[a]]];
        }
        Rat d = det(D);
        if (d == 0) continue;
        if ((asum + ssum) & 1) d = -d;
        Mask rest = I;
        for (int a : A) rest &= ~(Mask(1) << idx[a]);
        out.push_back({rest, d});
    }
    return out;
}

void check_slots(const std::vector<Slot>& slots, int deg, int r) {
    std::set<int> seen;
    for (auto& s : slots) {
        if (s.position < 1 || s.position > deg || !seen.insert(s.position).second)
            fail(ErrorKind::SlotOutOfRange, "slot " + std::to_string(s.position) + " outside 1.." + std::to_string(deg));
        if (int(s.v.size()) != r) fail(ErrorKind::DimensionMismatch, "contraction vector of wrong length");
    }
}

}  // namespace

std::vector<int> mask_indices(Mask m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(__builtin_ctz(m));
    return out;
}

Mask indices_mask(const std::vector<int>& idx) {
    Mask m = 0;
    for (int i : idx) m |= Mask(1) << i;
    return m;
}

Superform Superform::scalar(const Poly& f) {
    Superform s(f.rank(), 0, 0);
    s.add({0, 0}, f);
    return s;
}

Superform Superform::constant(int r, const Rat& c) { return scalar(Poly::constant(r, c)); }

Superform Superform::dprime(int r, int i) {
    Superform s(r, 1, 0);
    s.add({Mask(1) << i, 0}, Poly::constant(r, Rat(1)));
    return s;
}

Superform Superform::ddprime(int r, int i) {
    Superform s(r, 0, 1);
    s.add({0, Mask(1) << i}, Poly::constant(r, Rat(1)));
    return s;
}

Superform Superform::term(int r, const std::vector<int>& I, const std::vector<int>& J, const Poly& f) {
    // d'x_I[0] ^ ... ^ d''x_J[0] ^ ... in the given order
    Superform acc = constant(r, Rat(1));
    for (int i : I) acc = wedge(acc, dprime(r, i));
    for (int j : J) acc = wedge(acc, ddprime(r, j));
    if (acc.is_zero()) return Superform(r, int(I.size()), int(J.size()));
    return acc * f;
}

int Superform::degree() const {
    int d = -1;
    for (auto& [k, f] : t_) d = std::max(d, f.degree());
    return d;
}

Poly Superform::coeff(const std::vector<int>& I, const std::vector<int>& J) const {
    auto it = t_.find({indices_mask(I), indices_mask(J)});
    return it == t_.end() ? Poly(r_) : it->second;
}

void Superform::add(const IndexPair& k, const Poly& f) {
    if (f.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) t_.erase(it);
}

Superform& Superform::operator+=(const Superform& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && (p_ != o.p_ || q_ != o.q_ || r_ != o.r_)) {
        if (r_ != o.r_ && r_ != 0) fail(ErrorKind::AmbientMismatch, "adding superforms on different spaces");
        r_ = o.r_, p_ = o.p_, q_ = o.q_;
    }
    if (o.r_ != r_) fail(ErrorKind::AmbientMismatch, "adding superforms on different spaces");
    if (o.p_ != p_ || o.q_ != q_) fail(ErrorKind::TypeMismatch, "adding superforms of different bidegree");
    for (auto& [k, f] : o.t_) add(k, f);
    return *this;
}

Superform& Superform::operator-=(const Superform& o) { return *this += -o; }
Superform Superform::operator+(const Superform& o) const {
    Superform s = *this;
    s += o;
    return s;
}
Superform Superform::operator-(const Superform& o) const {
    Superform s = *this;
    s -= o;
    return s;
}
Superform Superform::operator-() const {
    Superform s(r_, p_, q_);
    for (auto& [k, f] : t_) s.t_.emplace(k, -f);
    return s;
}
Superform Superform::operator*(const Rat& c) const {
    Superform s(r_, p_, q_);
    if (c == 0) return s;
    for (auto& [k, f] : t_) s.t_.emplace(k, f * c);
    return s;
}
Superform Superform::operator*(const Poly& g) const {
    Superform s(r_, p_, q_);
    for (auto& [k, f] : t_) s.add(k, f * g);
    return s;
}

bool Superform::operator==(const Superform& o) const {
    if (is_zero() && o.is_zero()) return true;
    return r_ == o.r_ && p_ == o.p_ && q_ == o.q_ && t_ == o.t_;
}

std::string Superform::str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto& [k, f] : t_) {
        if (!s.empty()) s += " + ";
        s += "(" + f.str() + ")";
        for (int i : mask_indices(k.first)) s += " d'x" + std::to_string(i + 1);
        for (int j : mask_indices(k.second)) s += " d''x" + std::to_string(j + 1);
    }
    return s;
}

Superform wedge(const Superform& a, const Superform& b) {
    if (a.rank() != b.rank()) fail(ErrorKind::AmbientMismatch, "wedge of superforms on different spaces");
    Superform out(a.rank(), a.p() + b.p(), a.q() + b.q());
    int base = (a.q() * b.p()) & 1;
    for (auto& [k1, f] : a.terms())
        for (auto& [k2, g] : b.terms()) {
            if ((k1.first & k2.first) || (k1.second & k2.second)) continue;
            int par = base ^ merge_parity(k1.first, k2.first) ^ merge_parity(k1.second, k2.second);
            Poly h = f * g;
            out.add({k1.first | k2.first, k1.second | k2.second}, par ? -h : h);
        }
    return out;
}

Superform d1(const Superform& a) {
    Superform out(a.rank(), a.p() + 1, a.q());
    for (auto& [k, f] : a.terms())
        for (int i = 0; i < a.rank(); ++i) {
            if (k.first & (Mask(1) << i)) continue;
            Poly g = f.deriv(i);
            if (g.is_zero()) continue;
            out.add({k.first | (Mask(1) << i), k.second}, below(k.first, i) & 1 ? -g : g);
        }
    return out;
}

Superform d2(const Superform& a) {
    Superform out(a.rank(), a.p(), a.q() + 1);
    for (auto& [k, f] : a.terms())
        for (int j = 0; j < a.rank(); ++j) {
            if (k.second & (Mask(1) << j)) continue;
            Poly g = f.deriv(j);
            if (g.is_zero()) continue;
            int par = (a.p() + below(k.second, j)) & 1;
            out.add({k.first, k.second | (Mask(1) << j)}, par ? -g : g);
        }
    return out;
}

Superform j_op(const Superform& a) {
    Superform out(a.rank(), a.q(), a.p());
    bool neg = (a.p() * a.q()) & 1;
    for (auto& [k, f] : a.terms()) out.add({k.second, k.first}, neg ? -f : f);
    return out;
}

Superform contract(const Superform& a, const std::vector<Slot>& ds, const std::vector<Slot>& dds) {
    check_slots(ds, a.p(), a.rank());
    check_slots(dds, a.q(), a.rank());
    int na = int(ds.size()), nb = int(dds.size());
    Superform out(a.rank(), a.p() - na, a.q() - nb);
    bool neg = ((a.p() - na) * nb) & 1;
    for (auto& [k, f] : a.terms()) {
        auto left = insert_block(k.first, ds);
        auto right = insert_block(k.second, dds);
        for (auto& [mi, ci] : left)
            for (auto& [mj, cj] : right) {
                Rat c = ci * cj;
                if (neg) c = -c;
                out.add({mi, mj}, f * c);
            }
    }
    return out;
}

Superform pullback_linear(const RatMat& M, const Vec& t, const Superform& a) {
    if (M.rows != a.rank()) fail(ErrorKind::AmbientMismatch, "pull-back map target differs from the form's space");
    int s = M.cols;
    Superform out(s, a.p(), a.q());
    if (a.is_zero()) return out;
    std::map<Mask, std::vector<std::pair<Mask, Rat>>> minors;
    auto expand = [&](Mask I) -> const std::vector<std::pair<Mask, Rat>>& {
        auto it = minors.find(I);
        if (it != minors.end()) return it->second;
        std::vector<int> rows = mask_indices(I);
        int k = int(rows.size());
        std::vector<std::pair<Mask, Rat>> lst;
        std::vector<std::vector<int>> cols;
        combinations(s, k, cols);
        for (auto& c : cols) {
            RatMat D(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) D(i, j) = M(rows[i], c[j]);
            Rat d = k == 0 ? Rat(1) : det(D);
            if (d != 0) lst.push_back({indices_mask(c), d});
        }
        return minors.emplace(I, lst).first->second;
    };
    for (auto& [k, f] : a.terms()) {
        Poly g = f.affine_sub(M, t);
        if (g.is_zero()) continue;
        const auto& L = expand(k.first);
        const auto& R = expand(k.second);
        for (auto& [mi, ci] : L)
            for (auto& [mj, cj] : R) out.add({mi, mj}, g * (ci * cj));
    }
    return out;
}

Superform pullback_form(const AffineMap& F, const Superform& a) {
    if (F.target_rank() != a.rank()) fail(ErrorKind::AmbientMismatch, "map target rank differs from the form's ambient rank");
    return pullback_linear(to_rat(F.linear), F.translate, a);
}

Superform restrict_to(const Polyhedron& sigma, const Superform& a) {
    if (sigma.ambient_rank() != a.rank() && !a.is_zero()) fail(ErrorKind::AmbientMismatch, "restricting to a polyhedron in another space");
    if (sigma.empty()) return Superform(0, a.p(), a.q());
    Superform out = pullback_linear(to_rat(sigma.basis()), sigma.origin(), a);
    return out;
}

Superform extend_from(const Polyhedron& sigma, const Superform& local) {
    int k = sigma.dim(), r = sigma.ambient_rank();
    RatMat M(k, r);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j) M(i, j) = sigma.completion()(i, j);
    Vec t(k, Rat(0));
    for (int i = 0; i < k; ++i) t[i] = -dot(M.row(i), sigma.origin());
    return pullback_linear(M, t, local);
}

Superform canonical_on(const Polyhedron& sigma, const Superform& a) { return extend_from(sigma, restrict_to(sigma, a)); }

Superform shift(const Superform& a, int new_rank, int offset) {
    Superform out(new_rank, a.p(), a.q());
    for (auto& [k, f] : a.terms()) out.add({k.first << offset, k.second << offset}, f.shift(new_rank, offset));
    return out;
}

}  // namespace tc
