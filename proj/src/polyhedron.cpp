#include "tropcalc/polyhedron.hpp"

#include "tropcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace tc {

struct Polyhedron::Impl {
    int r = 0;
    bool empty = true;
    int k = -1;
    Vec x0;
    IntMat B, W;
    std::vector<HalfSpace> eqs, facets;
    std::vector<Vec> verts, rays, lin;
    Vec relint;
    BoundingBox box;
    std::string key;

    mutable std::once_flag facet_once;
    mutable std::vector<Polyhedron> facet_polys;
};

namespace {

using Bits = std::vector<uint64_t>;

inline void set_bit(Bits& b, size_t i) { b[i >> 6] |= uint64_t(1) << (i & 63); }
inline bool subset(const Bits& a, const Bits& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}
inline Bits band(const Bits& a, const Bits& b) {
    Bits c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] & b[i];
    return c;
}
inline int popcount(const Bits& a) {
    int n = 0;
    for (auto w : a) n += __builtin_popcountll(w);
    return n;
}

Vec primitive_rat(const Vec& v) {
    if (is_zero(v)) return v;
    return to_rat(primitive(v));
}

Vec matvec(const IntMat& M, const Vec& v) {
    Vec out(M.rows, Rat(0));
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j)
            if (M(i, j) != 0) out[i] += M(i, j) * v[j];
    return out;
}

Rat idot(const IVec& a, const Vec& x) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += a[i] * x[i];
    return s;
}

struct Ray {
    Vec u;
    Bits zero;
};

std::string hs_str(const HalfSpace& h) {
    std::string s;
    for (auto& x : h.a) s += x.get_str() + ",";
    return s + fmt(h.b);
}

bool hs_less(const HalfSpace& x, const HalfSpace& y) {
    for (size_t i = 0; i < x.a.size(); ++i)
        if (x.a[i] != y.a[i]) return x.a[i] < y.a[i];
    return x.b < y.b;
}

// scale (a, b) by a positive factor making a a primitive integer vector
HalfSpace normalize(const Vec& a, const Rat& b) {
    IVec ai = primitive(a);
    size_t i = 0;
    while (a[i] == 0) ++i;
    Rat lambda = Rat(ai[i]) / a[i];
    return {ai, b * lambda};
}

struct HullData {
    IntMat B, W;
};

std::mutex hull_mu;
std::map<std::string, HullData> hull_cache;

HullData hull_data(const RatMat& lin_rref, int r) {
    std::string key = std::to_string(r) + ":" + fmt(lin_rref);
    {
        std::lock_guard<std::mutex> g(hull_mu);
        auto it = hull_cache.find(key);
        if (it != hull_cache.end()) return it->second;
    }
    std::vector<Vec> ker = kernel(lin_rref.rows ? lin_rref : RatMat(0, r));
    Lattice L = saturation(ker, r);
    HullData h{L.matrix(), unimodular_completion(L)};
    std::lock_guard<std::mutex> g(hull_mu);
    if (hull_cache.size() > 20000) hull_cache.clear();
    hull_cache.emplace(key, h);
    return h;
}

std::shared_ptr<Polyhedron::Impl> make_empty(int r) {
    auto p = std::make_shared<Polyhedron::Impl>();
    p->r = r;
    p->empty = true;
    p->k = -1;
    p->key = "empty:" + std::to_string(r);
    return p;
}

std::shared_ptr<Polyhedron::Impl> build(int r, std::vector<Constraint> ineqs, std::vector<Constraint> eqs) {
    for (auto* cs : {&ineqs, &eqs})
        for (auto& c : *cs) {
            for (auto& x : c.a) x.canonicalize();
            c.b.canonicalize();
        }
    for (auto& c : ineqs)
        if (int(c.a.size()) != r) fail(ErrorKind::DimensionMismatch, "constraint length differs from ambient rank");
    for (auto& c : eqs)
        if (int(c.a.size()) != r) fail(ErrorKind::DimensionMismatch, "constraint length differs from ambient rank");
    for (;;) {
        // affine hull
        std::vector<Constraint> E;
        for (auto& e : eqs) {
            if (is_zero(e.a)) {
                if (e.b != 0) return make_empty(r);
                continue;
            }
            E.push_back(e);
        }
        RatMat aug(int(E.size()), r + 1);
        for (int i = 0; i < aug.rows; ++i) {
            for (int j = 0; j < r; ++j) aug(i, j) = E[i].a[j];
            aug(i, r) = E[i].b;
        }
        Rref red = rref(aug);
        if (!red.pivots.empty() && red.pivots.back() == r) return make_empty(r);
        int ne = int(red.pivots.size());
        RatMat lin(ne, r);
        Vec x0(r, Rat(0));
        for (int i = 0; i < ne; ++i) {
            for (int j = 0; j < r; ++j) lin(i, j) = red.R(i, j);
            x0[red.pivots[i]] = red.R(i, r);
        }
        HullData hd = hull_data(lin, r);
        int k = hd.B.cols;

        // local inequalities
        std::vector<Vec> A;
        Vec b;
        std::vector<int> src;
        for (size_t i = 0; i < ineqs.size(); ++i) {
            Vec ai(k, Rat(0));
            for (int j = 0; j < k; ++j)
                for (int t = 0; t < r; ++t)
                    if (hd.B(t, j) != 0) ai[j] += ineqs[i].a[t] * hd.B(t, j);
            Rat bi = ineqs[i].b - dot(ineqs[i].a, x0);
            if (is_zero(ai)) {
                if (bi < 0) return make_empty(r);
                continue;
            }
            A.push_back(ai);
            b.push_back(bi);
            src.push_back(int(i));
        }
        std::vector<Vec> L = kernel(A.empty() ? RatMat(0, k) : RatMat::from_rows(A, k));
        for (auto& l : L) l = primitive_rat(l);
        std::vector<Vec> M = L.empty() ? kernel(RatMat(0, k)) : kernel(RatMat::from_rows(L, k));
        for (auto& m : M) m = primitive_rat(m);
        int kp = int(M.size()), n = kp + 1;
        std::vector<Vec> C;
        for (size_t i = 0; i < A.size(); ++i) {
            Vec row(n, Rat(0));
            for (int j = 0; j < kp; ++j) row[j] = dot(A[i], M[j]);
            row[kp] = -b[i];
            C.push_back(row);
        }
        {
            Vec row(n, Rat(0));
            row[kp] = -1;
            C.push_back(row);
        }
        std::vector<Vec> ext = extreme_rays(C, n);
        std::vector<Vec> lv, lr;
        for (auto& u : ext) {
            Vec y(k, Rat(0));
            for (int j = 0; j < kp; ++j)
                for (int t = 0; t < k; ++t) y[t] += u[j] * M[j][t];
            if (u[kp] > 0) {
                for (auto& x : y) x /= u[kp];
                lv.push_back(y);
            } else {
                lr.push_back(primitive_rat(y));
            }
        }
        if (lv.empty()) return make_empty(r);

        // implicit equalities
        std::vector<int> implicit;
        for (size_t i = 0; i < A.size(); ++i) {
            bool tight = true;
            for (auto& v : lv) tight = tight && dot(A[i], v) == b[i];
            for (auto& w : lr) tight = tight && dot(A[i], w) == 0;
            if (tight) implicit.push_back(src[i]);
        }
        if (!implicit.empty()) {
            std::vector<Constraint> ni;
            std::set<int> imp(implicit.begin(), implicit.end());
            for (size_t i = 0; i < ineqs.size(); ++i) {
                if (imp.count(int(i))) eqs.push_back(ineqs[i]);
                else ni.push_back(ineqs[i]);
            }
            ineqs = ni;
            continue;
        }

        auto p = std::make_shared<Polyhedron::Impl>();
        p->r = r;
        p->empty = false;
        p->k = k;
        p->x0 = x0;
        p->B = hd.B;
        p->W = hd.W;
        for (int i = 0; i < ne; ++i) {
            Vec a = lin.row(i);
            p->eqs.push_back(normalize(a, red.R(i, r)));
        }
        p->verts.resize(lv.size());
        for (size_t i = 0; i < lv.size(); ++i) {
            Vec x = matvec(hd.B, lv[i]);
            for (int t = 0; t < r; ++t) x[t] += x0[t];
            p->verts[i] = x;
        }
        for (auto& w : lr) p->rays.push_back(primitive_rat(matvec(hd.B, w)));
        for (auto& l : L) p->lin.push_back(primitive_rat(matvec(hd.B, l)));

        // facets: inequalities whose tight generators span dimension k - 1
        std::set<std::string> seen;
        for (size_t i = 0; i < A.size(); ++i) {
            std::vector<Vec> tv, span;
            for (auto& v : lv)
                if (dot(A[i], v) == b[i]) tv.push_back(v);
            if (tv.empty()) continue;
            for (size_t j = 1; j < tv.size(); ++j) {
                Vec d(k);
                for (int t = 0; t < k; ++t) d[t] = tv[j][t] - tv[0][t];
                span.push_back(d);
            }
            for (auto& w : lr)
                if (dot(A[i], w) == 0) span.push_back(w);
            for (auto& l : L) span.push_back(l);
            int rk = span.empty() ? 0 : rank(RatMat::from_rows(span, k));
            if (rk != k - 1) continue;
            const Constraint& c = ineqs[src[i]];
            Vec a = c.a;
            Rat bb = c.b;
            for (int e = 0; e < ne; ++e) {
                Rat f = a[red.pivots[e]];
                if (f == 0) continue;
                for (int t = 0; t < r; ++t) a[t] -= f * lin(e, t);
                bb -= f * red.R(e, r);
            }
            HalfSpace h = normalize(a, bb);
            if (seen.insert(hs_str(h)).second) p->facets.push_back(h);
        }
        std::sort(p->facets.begin(), p->facets.end(), hs_less);

        Vec rel(r, Rat(0));
        for (auto& v : p->verts)
            for (int t = 0; t < r; ++t) rel[t] += v[t];
        for (auto& x : rel) x /= int(p->verts.size());
        for (auto& w : p->rays)
            for (int t = 0; t < r; ++t) rel[t] += w[t];
        p->relint = rel;

        BoundingBox& bx = p->box;
        bx.lo = p->verts[0];
        bx.hi = p->verts[0];
        bx.lo_inf.assign(r, false);
        bx.hi_inf.assign(r, false);
        for (auto& v : p->verts)
            for (int t = 0; t < r; ++t) {
                if (v[t] < bx.lo[t]) bx.lo[t] = v[t];
                if (v[t] > bx.hi[t]) bx.hi[t] = v[t];
            }
        for (auto& w : p->rays)
            for (int t = 0; t < r; ++t) {
                if (w[t] > 0) bx.hi_inf[t] = true;
                if (w[t] < 0) bx.lo_inf[t] = true;
            }
        for (auto& l : p->lin)
            for (int t = 0; t < r; ++t)
                if (l[t] != 0) bx.hi_inf[t] = bx.lo_inf[t] = true;

        std::string key = std::to_string(r) + "|";
        for (auto& h : p->eqs) key += hs_str(h) + ";";
        key += "|";
        for (auto& h : p->facets) key += hs_str(h) + ";";
        p->key = key;
        return p;
    }
}

}  // namespace

bool BoundingBox::overlaps(const BoundingBox& o) const {
    for (size_t t = 0; t < lo.size(); ++t) {
        if (!hi_inf[t] && !o.lo_inf[t] && hi[t] < o.lo[t]) return false;
        if (!o.hi_inf[t] && !lo_inf[t] && o.hi[t] < lo[t]) return false;
    }
    return true;
}

std::vector<Vec> extreme_rays(const std::vector<Vec>& C, int n) {
    size_t m = C.size();
    size_t words = (m + 63) / 64;
    // initial simplicial cone from n independent rows
    std::vector<int> chosen;
    {
        std::vector<Vec> acc;
        for (size_t i = 0; i < m && int(chosen.size()) < n; ++i) {
            acc.push_back(C[i]);
            if (rank(RatMat::from_rows(acc, n)) == int(acc.size())) chosen.push_back(int(i));
            else acc.pop_back();
        }
    }
    if (int(chosen.size()) < n) fail(ErrorKind::Internal, "double description on a cone with lineality");
    RatMat C0(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) C0(i, j) = C[chosen[i]][j];
    RatMat inv = *inverse(C0);
    std::vector<Ray> rays;
    for (int j = 0; j < n; ++j) {
        Ray ray{Vec(n), Bits(words, 0)};
        for (int i = 0; i < n; ++i) ray.u[i] = -inv(i, j);
        ray.u = primitive_rat(ray.u);
        for (int i = 0; i < n; ++i)
            if (i != j) set_bit(ray.zero, size_t(chosen[i]));
        rays.push_back(ray);
    }
    std::vector<bool> done(m, false);
    for (int c : chosen) done[c] = true;
    for (size_t row = 0; row < m; ++row) {
        if (done[row]) continue;
        done[row] = true;
        std::vector<Rat> s(rays.size());
        std::vector<size_t> pos, neg;
        std::vector<Ray> next;
        for (size_t i = 0; i < rays.size(); ++i) {
            s[i] = dot(C[row], rays[i].u);
            if (s[i] > 0) pos.push_back(i);
            else if (s[i] < 0) neg.push_back(i), next.push_back(rays[i]);
            else {
                Ray z = rays[i];
                set_bit(z.zero, row);
                next.push_back(z);
            }
        }
        if (pos.empty()) {
            rays = std::move(next);
            continue;
        }
        for (size_t pi : pos)
            for (size_t ni : neg) {
                Bits Z = band(rays[pi].zero, rays[ni].zero);
                if (popcount(Z) < n - 2) continue;
                bool adjacent = true;
                for (size_t w = 0; w < rays.size() && adjacent; ++w) {
                    if (w == pi || w == ni) continue;
                    if (subset(Z, rays[w].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray nr{Vec(n), Z};
                for (int t = 0; t < n; ++t) nr.u[t] = s[pi] * rays[ni].u[t] - s[ni] * rays[pi].u[t];
                nr.u = primitive_rat(nr.u);
                set_bit(nr.zero, row);
                next.push_back(nr);
            }
        rays = std::move(next);
    }
    std::vector<Vec> out;
    for (auto& r : rays) out.push_back(r.u);
    return out;
}

Polyhedron::Polyhedron() : p_(make_empty(0)) {}

Polyhedron Polyhedron::make(int r, const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs) {
    return Polyhedron(build(r, ineqs, eqs));
}

Polyhedron Polyhedron::whole(int r) { return make(r, {}, {}); }

Polyhedron Polyhedron::point(const Vec& x) {
    int r = int(x.size());
    std::vector<Constraint> eqs;
    for (int i = 0; i < r; ++i) {
        Vec a(r, Rat(0));
        a[i] = 1;
        eqs.push_back({a, x[i]});
    }
    return make(r, {}, eqs);
}

Polyhedron Polyhedron::empty_set(int r) { return Polyhedron(make_empty(r)); }

Polyhedron Polyhedron::from_generators(int r, const std::vector<Vec>& points, const std::vector<Vec>& rays,
                                       const std::vector<Vec>& lineality) {
    if (points.empty()) return empty_set(r);
    const Vec& p0 = points[0];
    std::vector<Vec> dirs;
    for (size_t i = 1; i < points.size(); ++i) {
        Vec d(r);
        for (int t = 0; t < r; ++t) d[t] = points[i][t] - p0[t];
        dirs.push_back(d);
    }
    for (auto& w : rays) dirs.push_back(w);
    for (auto& l : lineality) dirs.push_back(l);
    std::vector<Vec> nz;
    for (auto& d : dirs)
        if (!is_zero(d)) nz.push_back(d);
    std::vector<Constraint> eqs;
    std::vector<Vec> ann = kernel(nz.empty() ? RatMat(0, r) : RatMat::from_rows(nz, r));
    for (auto& a : ann) eqs.push_back({a, dot(a, p0)});
    Lattice Lt = saturation(nz, r);
    int k = Lt.rank();
    if (k == 0) return point(p0);
    IntMat W = unimodular_completion(Lt);
    auto local = [&](const Vec& d) {
        Vec y(k, Rat(0));
        for (int i = 0; i < k; ++i)
            for (int t = 0; t < r; ++t)
                if (W(i, t) != 0) y[i] += W(i, t) * d[t];
        return y;
    };
    // dual cone: (c, d) with c.y + d.t <= 0 on every homogenized generator
    std::vector<Vec> G;
    for (auto& p : points) {
        Vec d(r);
        for (int t = 0; t < r; ++t) d[t] = p[t] - p0[t];
        Vec y = local(d);
        y.push_back(1);
        G.push_back(y);
    }
    for (auto& w : rays) {
        Vec y = local(w);
        y.push_back(0);
        G.push_back(y);
    }
    for (auto& l : lineality) {
        Vec y = local(l);
        y.push_back(0);
        G.push_back(y);
        for (auto& x : y) x = -x;
        G.push_back(y);
    }
    std::vector<Vec> duals = extreme_rays(G, k + 1);
    std::vector<Constraint> ineqs;
    for (auto& u : duals) {
        Vec c(u.begin(), u.begin() + k);
        if (is_zero(c)) continue;
        // c.W_k (x - p0) <= -d
        Vec a(r, Rat(0));
        for (int t = 0; t < r; ++t)
            for (int i = 0; i < k; ++i)
                if (W(i, t) != 0) a[t] += c[i] * W(i, t);
        ineqs.push_back({a, -u[k] + dot(a, p0)});
    }
    return make(r, ineqs, eqs);
}

int Polyhedron::ambient_rank() const { return p_->r; }
bool Polyhedron::empty() const { return p_->empty; }
int Polyhedron::dim() const { return p_->k; }
bool Polyhedron::bounded() const { return p_->rays.empty() && p_->lin.empty(); }
const Vec& Polyhedron::relint_point() const { return p_->relint; }
const Vec& Polyhedron::origin() const { return p_->x0; }
const IntMat& Polyhedron::basis() const { return p_->B; }
const IntMat& Polyhedron::completion() const { return p_->W; }
Lattice Polyhedron::lattice() const {
    Lattice L;
    L.ambient_rank = p_->r;
    for (int j = 0; j < p_->B.cols; ++j) L.basis.push_back(p_->B.col(j));
    return L;
}
const std::vector<HalfSpace>& Polyhedron::hull_eqs() const { return p_->eqs; }
const std::vector<HalfSpace>& Polyhedron::facet_ineqs() const { return p_->facets; }
const std::vector<Vec>& Polyhedron::vertices() const { return p_->verts; }
const std::vector<Vec>& Polyhedron::rays() const { return p_->rays; }
const std::vector<Vec>& Polyhedron::lineality() const { return p_->lin; }
const BoundingBox& Polyhedron::bbox() const { return p_->box; }
const std::string& Polyhedron::key() const { return p_->key; }

std::vector<Constraint> Polyhedron::ineq_constraints() const {
    std::vector<Constraint> out;
    for (auto& h : p_->facets) out.push_back({to_rat(h.a), h.b});
    return out;
}
std::vector<Constraint> Polyhedron::eq_constraints() const {
    std::vector<Constraint> out;
    for (auto& h : p_->eqs) out.push_back({to_rat(h.a), h.b});
    return out;
}
std::vector<Constraint> Polyhedron::constraints() const {
    auto out = ineq_constraints();
    auto e = eq_constraints();
    out.insert(out.end(), e.begin(), e.end());
    return out;
}

const std::vector<Polyhedron>& Polyhedron::facets() const {
    std::call_once(p_->facet_once, [this] {
        auto ineqs = ineq_constraints();
        auto eqs = eq_constraints();
        for (size_t j = 0; j < ineqs.size(); ++j) {
            std::vector<Constraint> ni, ne = eqs;
            for (size_t i = 0; i < ineqs.size(); ++i)
                if (i != j) ni.push_back(ineqs[i]);
            ne.push_back(ineqs[j]);
            p_->facet_polys.push_back(make(p_->r, ni, ne));
        }
    });
    return p_->facet_polys;
}

std::vector<Polyhedron> Polyhedron::faces() const {
    std::vector<Polyhedron> out;
    if (empty()) return out;
    const auto& F = p_->facets;
    size_t nv = p_->verts.size(), nr = p_->rays.size(), nf = F.size();
    // tight generator masks per facet
    std::vector<std::vector<bool>> tv(nf, std::vector<bool>(nv)), tr(nf, std::vector<bool>(nr));
    for (size_t j = 0; j < nf; ++j) {
        for (size_t i = 0; i < nv; ++i) tv[j][i] = idot(F[j].a, p_->verts[i]) == F[j].b;
        for (size_t i = 0; i < nr; ++i) tr[j][i] = idot(F[j].a, p_->rays[i]) == 0;
    }
    using Gen = std::pair<std::vector<bool>, std::vector<bool>>;
    std::set<Gen> seen;
    std::vector<Gen> queue{{std::vector<bool>(nv, true), std::vector<bool>(nr, true)}};
    seen.insert(queue[0]);
    auto ineqs = ineq_constraints();
    auto eqs = eq_constraints();
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        Gen g = queue[qi];
        std::vector<Constraint> ni, ne = eqs;
        for (size_t j = 0; j < nf; ++j) {
            bool all = true;
            for (size_t i = 0; i < nv && all; ++i) all = !g.first[i] || tv[j][i];
            for (size_t i = 0; i < nr && all; ++i) all = !g.second[i] || tr[j][i];
            if (all) ne.push_back(ineqs[j]);
            else ni.push_back(ineqs[j]);
        }
        out.push_back(qi == 0 ? *this : make(p_->r, ni, ne));
        for (size_t j = 0; j < nf; ++j) {
            Gen h = g;
            bool any = false;
            for (size_t i = 0; i < nv; ++i) {
                h.first[i] = g.first[i] && tv[j][i];
                any = any || h.first[i];
            }
            if (!any) continue;
            for (size_t i = 0; i < nr; ++i) h.second[i] = g.second[i] && tr[j][i];
            if (h == g) continue;
            if (seen.insert(h).second) queue.push_back(h);
        }
    }
    return out;
}

bool Polyhedron::contains(const Vec& x) const {
    if (empty()) return false;
    for (auto& h : p_->eqs)
        if (idot(h.a, x) != h.b) return false;
    for (auto& h : p_->facets)
        if (idot(h.a, x) > h.b) return false;
    return true;
}

bool Polyhedron::in_relint(const Vec& x) const {
    if (!contains(x)) return false;
    for (auto& h : p_->facets)
        if (idot(h.a, x) == h.b) return false;
    return true;
}

bool Polyhedron::contains(const Polyhedron& o) const {
    if (o.empty()) return true;
    if (empty()) return false;
    for (auto& v : o.vertices())
        if (!contains(v)) return false;
    for (auto& w : o.rays()) {
        for (auto& h : p_->eqs)
            if (idot(h.a, w) != 0) return false;
        for (auto& h : p_->facets)
            if (idot(h.a, w) > 0) return false;
    }
    for (auto& l : o.lineality()) {
        for (auto& h : p_->eqs)
            if (idot(h.a, l) != 0) return false;
        for (auto& h : p_->facets)
            if (idot(h.a, l) != 0) return false;
    }
    return true;
}

Polyhedron Polyhedron::intersect(const Polyhedron& o) const {
    if (ambient_rank() != o.ambient_rank()) fail(ErrorKind::AmbientMismatch, "intersecting polyhedra of different ambient rank");
    if (empty() || o.empty() || !bbox().overlaps(o.bbox())) return empty_set(ambient_rank());
    auto ineqs = ineq_constraints();
    auto eqs = eq_constraints();
    for (auto& c : o.ineq_constraints()) ineqs.push_back(c);
    for (auto& c : o.eq_constraints()) eqs.push_back(c);
    return make(ambient_rank(), ineqs, eqs);
}

bool Polyhedron::meets(const Polyhedron& o) const { return !intersect(o).empty(); }

Polyhedron Polyhedron::with(const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs) const {
    if (empty()) return *this;
    auto ni = ineq_constraints();
    auto ne = eq_constraints();
    ni.insert(ni.end(), ineqs.begin(), ineqs.end());
    ne.insert(ne.end(), eqs.begin(), eqs.end());
    return make(ambient_rank(), ni, ne);
}

int Polyhedron::side(const Vec& a, const Rat& b) const {
    int bits = 0;
    for (auto& v : p_->verts) {
        Rat s = dot(a, v) - b;
        if (s < 0) bits |= 1;
        if (s > 0) bits |= 2;
    }
    for (auto& w : p_->rays) {
        Rat s = dot(a, w);
        if (s < 0) bits |= 1;
        if (s > 0) bits |= 2;
    }
    for (auto& l : p_->lin)
        if (dot(a, l) != 0) bits |= 3;
    return bits;
}

Vec Polyhedron::to_local(const Vec& x) const {
    int k = dim(), r = ambient_rank();
    Vec y(k, Rat(0));
    for (int i = 0; i < k; ++i)
        for (int t = 0; t < r; ++t)
            if (p_->W(i, t) != 0) y[i] += p_->W(i, t) * (x[t] - p_->x0[t]);
    return y;
}

Vec Polyhedron::from_local(const Vec& y) const {
    Vec x = p_->x0;
    for (int t = 0; t < ambient_rank(); ++t)
        for (int j = 0; j < dim(); ++j)
            if (p_->B(t, j) != 0) x[t] += p_->B(t, j) * y[j];
    return x;
}

std::string describe(const Polyhedron& P) {
    if (P.empty()) return "{}";
    std::string s = "{dim " + std::to_string(P.dim()) + "; verts";
    for (auto& v : P.vertices()) s += " " + fmt(v);
    if (!P.rays().empty()) {
        s += "; rays";
        for (auto& w : P.rays()) s += " " + fmt(w);
    }
    if (!P.lineality().empty()) {
        s += "; lin";
        for (auto& w : P.lineality()) s += " " + fmt(w);
    }
    return s + "}";
}

bool is_face(const Polyhedron& P, const Polyhedron& x) {
    if (x.empty()) return true;
    if (!P.contains(x)) return false;
    const Vec& c = x.relint_point();
    std::vector<Constraint> ineqs, eqs = P.eq_constraints();
    for (auto& k : P.ineq_constraints()) (dot(k.a, c) == k.b ? eqs : ineqs).push_back(k);
    return Polyhedron::make(P.ambient_rank(), ineqs, eqs) == x;
}

IVec normal_vector(const Polyhedron& sigma, const Polyhedron& tau) {
    if (sigma.empty() || tau.empty() || tau.dim() != sigma.dim() - 1)
        fail(ErrorKind::NotAFacet, describe(tau) + " is not a facet of " + describe(sigma));
    const auto& fs = sigma.facets();
    int j = -1;
    for (size_t i = 0; i < fs.size(); ++i)
        if (fs[i] == tau) { j = int(i); break; }
    if (j < 0) fail(ErrorKind::NotAFacet, describe(tau) + " is not a facet of " + describe(sigma));
    const HalfSpace& h = sigma.facet_ineqs()[j];
    const IntMat& B = sigma.basis();
    int k = B.cols, r = B.rows;
    IVec c(k, Int(0));
    for (int i = 0; i < k; ++i)
        for (int t = 0; t < r; ++t) c[i] += h.a[t] * B(t, i);
    Int g = gcd_all(c);
    for (auto& x : c) x /= g;
    // solve c.y = -1 by iterated extended gcd
    IVec y(k, Int(0));
    Int acc = 0;
    for (int i = 0; i < k; ++i) {
        if (c[i] == 0) continue;
        if (acc == 0) {
            acc = c[i];
            y[i] = 1;
            continue;
        }
        Int gg, s, t;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), acc.get_mpz_t(), c[i].get_mpz_t());
        for (int q = 0; q < i; ++q) y[q] *= s;
        y[i] = t;
        acc = gg;
    }
    // now c.y == acc == +-1
    if (acc > 0)
        for (auto& x : y) x = -x;
    IVec w(r, Int(0));
    for (int t = 0; t < r; ++t)
        for (int i = 0; i < k; ++i) w[t] += B(t, i) * y[i];
    return w;
}

}  // namespace tc
