#include "tropcalc/complex.hpp"

#include "tropcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tc {

std::vector<Polyhedron> Complex::maximal() const {
    std::vector<Polyhedron> out;
    for (auto& c : cells) {
        bool is_max = true;
        for (auto& d : cells)
            if (d.dim() > c.dim() && d.contains(c)) { is_max = false; break; }
        if (is_max) out.push_back(c);
    }
    return out;
}

bool Complex::pure() const {
    auto m = maximal();
    for (auto& c : m)
        if (c.dim() != m[0].dim()) return false;
    return true;
}

bool Complex::contains_cell(const Polyhedron& P) const {
    for (auto& c : cells)
        if (c == P) return true;
    return false;
}

Complex face_closure(int r, const std::vector<Polyhedron>& cells) {
    Complex C;
    C.ambient_rank = r;
    std::set<std::string> seen;
    for (auto& c : cells)
        for (auto& f : c.faces())
            if (seen.insert(f.key()).second) C.cells.push_back(f);
    return C;
}

bool intersects_properly(const Complex& C) {
    std::set<std::string> keys;
    for (auto& c : C.cells) keys.insert(c.key());
    for (size_t i = 0; i < C.cells.size(); ++i)
        for (size_t j = i + 1; j < C.cells.size(); ++j) {
            Polyhedron x = C.cells[i].intersect(C.cells[j]);
            if (x.empty()) continue;
            if (!keys.count(x.key())) return false;
            bool fi = false, fj = false;
            for (auto& f : C.cells[i].faces()) fi = fi || f == x;
            for (auto& f : C.cells[j].faces()) fj = fj || f == x;
            if (!fi || !fj) return false;
        }
    return true;
}

namespace {

struct Hyper {
    Vec a;
    Rat b;
};

std::vector<Hyper> hyperplanes(const Polyhedron& P) {
    std::vector<Hyper> out;
    for (auto& h : P.facet_ineqs()) out.push_back({to_rat(h.a), h.b});
    for (auto& h : P.hull_eqs()) out.push_back({to_rat(h.a), h.b});
    return out;
}

// cheap disjointness: some constraint of one strictly excludes every generator of the other
bool separated(const Polyhedron& P, const Polyhedron& Q) {
    if (!P.bbox().overlaps(Q.bbox())) return true;
    auto strictly_out = [](const Polyhedron& X, const Polyhedron& Y) {
        auto off = [&](const Vec& a, const Rat& b, int allowed) {
            int s = Y.side(a, b);
            if (s != allowed) return false;
            for (auto& v : Y.vertices())
                if (dot(a, v) == b) return false;
            return true;
        };
        for (auto& h : X.facet_ineqs())
            if (off(to_rat(h.a), h.b, 2)) return true;
        for (auto& h : X.hull_eqs()) {
            Vec a = to_rat(h.a);
            if (off(a, h.b, 1) || off(a, h.b, 2)) return true;
        }
        return false;
    };
    return strictly_out(P, Q) || strictly_out(Q, P);
}

}  // namespace

std::vector<std::vector<Polyhedron>> subdivide(const std::vector<Polyhedron>& cells) {
    struct Piece {
        Polyhedron P;
        size_t origin;
    };
    std::vector<Piece> pieces;
    for (size_t i = 0; i < cells.size(); ++i)
        if (!cells[i].empty()) pieces.push_back({cells[i], i});
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < pieces.size(); ++i) {
            for (size_t j = 0; j < pieces.size(); ++j) {
                if (i == j) continue;
                if (separated(pieces[i].P, pieces[j].P)) continue;
                Polyhedron x = pieces[i].P.intersect(pieces[j].P);
                if (x.empty() || (is_face(pieces[i].P, x) && is_face(pieces[j].P, x))) continue;
                for (auto& h : hyperplanes(pieces[j].P)) {
                    if (pieces[i].P.side(h.a, h.b) != 3) continue;
                    Vec na = h.a;
                    for (auto& x : na) x = -x;
                    Polyhedron lo = pieces[i].P.with({{h.a, h.b}});
                    Polyhedron hi = pieces[i].P.with({{na, -h.b}});
                    pieces[i].P = lo;
                    pieces.push_back({hi, pieces[i].origin});
                    changed = true;
                }
            }
        }
    }
    std::vector<std::vector<Polyhedron>> out(cells.size());
    for (auto& p : pieces) out[p.origin].push_back(p.P);
    return out;
}

Complex common_refinement(const Complex& a, const Complex& b, RefineMode mode) {
    if (a.ambient_rank != b.ambient_rank) fail(ErrorKind::AmbientMismatch, "refining complexes of different ambient rank");
    int r = a.ambient_rank;
    std::vector<Polyhedron> ma = a.maximal(), mb = b.maximal();
    std::vector<Polyhedron> cells;
    if (mode == RefineMode::Intersection) {
        for (auto& x : ma)
            for (auto& y : mb) {
                Polyhedron z = x.intersect(y);
                if (!z.empty()) cells.push_back(z);
            }
        // intersections of maximal cells may still overlap; resolve them
        std::vector<Polyhedron> flat;
        for (auto& v : subdivide(cells))
            for (auto& p : v) flat.push_back(p);
        return face_closure(r, flat);
    }
    cells = ma;
    cells.insert(cells.end(), mb.begin(), mb.end());
    std::vector<Polyhedron> flat;
    for (auto& v : subdivide(cells))
        for (auto& p : v) flat.push_back(p);
    Complex C = face_closure(r, flat);
    return C;
}

Rat AffineForm::eval(const Vec& x) const {
    Rat s = c;
    for (size_t i = 0; i < lin.size(); ++i) s += lin[i] * x[i];
    return s;
}

PLDecomposition decomposition_of_pl(const std::vector<AffineForm>& forms, bool is_max) {
    if (forms.empty()) fail(ErrorKind::Usage, "piecewise linear function needs at least one affine form");
    int r = int(forms[0].lin.size());
    PLDecomposition out;
    std::set<std::pair<IVec, std::string>> seen;
    for (size_t i = 0; i < forms.size(); ++i) {
        if (!seen.insert({forms[i].lin, fmt(forms[i].c)}).second) continue;
        std::vector<Constraint> ineqs;
        for (size_t j = 0; j < forms.size(); ++j) {
            if (j == i) continue;
            // max: f_j <= f_i  <=>  (lin_j - lin_i).x <= c_i - c_j
            Vec a(r);
            for (int t = 0; t < r; ++t) a[t] = Rat(forms[j].lin[t] - forms[i].lin[t]);
            Rat b = forms[i].c - forms[j].c;
            if (!is_max) {
                for (auto& x : a) x = -x;
                b = -b;
            }
            ineqs.push_back({a, b});
        }
        Polyhedron R = Polyhedron::make(r, ineqs);
        if (R.empty() || R.dim() < r) continue;
        out.regions.push_back(R);
        out.labels.push_back(int(i));
    }
    out.complex = face_closure(r, out.regions);
    return out;
}

}  // namespace tc
