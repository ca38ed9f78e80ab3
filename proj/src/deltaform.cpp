#include "tropcalc/deltaform.hpp"

#include "tropcalc/errors.hpp"

#include <map>
#include <set>

namespace tc {

namespace {

void check_cell(int r, int p, int q, int l, const Cell& c) {
    if (c.poly.ambient_rank() != r) fail(ErrorKind::AmbientMismatch, "cell lives in R^" + std::to_string(c.poly.ambient_rank()));
    if (!c.poly.empty() && c.poly.dim() != r - l)
        fail(ErrorKind::DimensionMismatch, "cell " + describe(c.poly) + " has dimension " + std::to_string(c.poly.dim()) +
                                               ", expected " + std::to_string(r - l));
    if (c.coeff.is_zero()) return;
    if (c.coeff.rank() != r) fail(ErrorKind::AmbientMismatch, "coefficient lives in R^" + std::to_string(c.coeff.rank()));
    if (c.coeff.p() != p || c.coeff.q() != q) fail(ErrorKind::TypeMismatch, "coefficient bidegree differs from the form's type");
}

void check_same_type(const DeltaForm& a, const DeltaForm& b) {
    if (a.rank() != b.rank()) fail(ErrorKind::AmbientMismatch, "delta-forms on different spaces");
    if (a.p() != b.p() || a.q() != b.q() || a.l() != b.l()) fail(ErrorKind::TypeMismatch, "delta-forms of different types");
}

// Coordinates of each side's normal along a basis V of N_tau (the complement part is dropped).
struct Decomposition {
    IntMat V;                // r x k
    std::vector<Vec> along;  // per side, coordinates in V
};

Decomposition decompose(const Star& s, const BasisChoice& basis) {
    const Polyhedron& tau = s.tau;
    int k = tau.dim(), r = tau.ambient_rank();
    Decomposition d;
    d.V = basis ? basis(tau) : tau.basis();
    const IntMat& W = tau.completion();
    // V = B_tau * U with U the top k rows of W * V
    RatMat U(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Rat x = 0;
            for (int t = 0; t < r; ++t) x += Rat(W(i, t) * d.V(t, j));
            U(i, j) = x;
        }
    auto Uinv = inverse(U);
    if (!Uinv) fail(ErrorKind::Internal, "chosen vectors do not form a basis of the face's lattice");
    for (auto& [idx, w] : s.sides) {
        Vec a(k);
        for (int i = 0; i < k; ++i) {
            Rat x = 0;
            for (int t = 0; t < r; ++t) x += Rat(W(i, t) * w[t]);
            a[i] = x;
        }
        d.along.push_back(*Uinv * a);
    }
    return d;
}

Vec column(const IntMat& V, int j) {
    Vec v(V.rows);
    for (int i = 0; i < V.rows; ++i) v[i] = Rat(V(i, j));
    return v;
}

enum class Side { DoublePrime, Prime };

// sum_sigma <a_sigma; omega> - sum_i <beta_i; v_i>, restricted to tau
Superform boundary_term(const DeltaForm& a, const Star& s, const BasisChoice& basis, Side side) {
    auto d = decompose(s, basis);
    int r = a.rank(), k = s.tau.dim();
    Superform total(r, a.p() - (side == Side::Prime), a.q() - (side == Side::DoublePrime));
    auto ins = [&](const Superform& f, const Vec& v) {
        return side == Side::DoublePrime ? contract(f, {}, {{1, v}}) : contract(f, {{1, v}}, {});
    };
    std::vector<Superform> beta(k, Superform(r, a.p(), a.q()));
    for (size_t t = 0; t < s.sides.size(); ++t) {
        const auto& c = a.cells()[s.sides[t].first];
        total += ins(c.coeff, to_rat(s.sides[t].second));
        for (int i = 0; i < k; ++i)
            if (d.along[t][i] != 0) beta[i] += c.coeff * d.along[t][i];
    }
    for (int i = 0; i < k; ++i)
        if (!beta[i].is_zero()) total -= ins(beta[i], column(d.V, i));
    return canonical_on(s.tau, total);
}

DeltaForm boundary_impl(const DeltaForm& in, const BasisChoice& basis, Side side) {
    int dp = side == Side::Prime, dq = side == Side::DoublePrime;
    DeltaForm a = make_complex(in);
    auto bal = check_balanced(a);
    if (!bal.balanced) fail(ErrorKind::NotBalanced, "boundary of an unbalanced form; first failing face " + describe(bal.failing[0]));
    if ((side == Side::Prime ? a.p() : a.q()) == 0 || a.is_zero())
        return DeltaForm(a.rank(), a.p() - dp, a.q() - dq, a.l() + 1);
    std::vector<Cell> out;
    for (auto& s : stars(a)) {
        Superform c = boundary_term(a, s, basis, side);
        if (side == Side::Prime) c = -c;
        if (!c.is_zero()) out.push_back({s.tau, c});
    }
    return DeltaForm::raw(a.rank(), a.p() - dp, a.q() - dq, a.l() + 1, std::move(out), true);
}

}  // namespace

DeltaForm DeltaForm::raw(int r, int p, int q, int l, std::vector<Cell> cells, bool is_complex) {
    DeltaForm f(r, p, q, l);
    f.cells_ = std::move(cells);
    f.complex_ = is_complex || f.cells_.size() <= 1;
    return f;
}

DeltaForm DeltaForm::from_cells(int r, int p, int q, int l, const std::vector<Cell>& cells) {
    if (l < 0 || l > r) fail(ErrorKind::DimensionMismatch, "codimension out of range");
    std::vector<Cell> out;
    for (auto& c : cells) {
        check_cell(r, p, q, l, c);
        if (c.poly.empty() || c.coeff.is_zero()) continue;
        Superform n = canonical_on(c.poly, c.coeff);
        if (!n.is_zero()) out.push_back({c.poly, n});
    }
    return raw(r, p, q, l, std::move(out), false);
}

DeltaForm DeltaForm::weighted(int r, int l, const std::vector<std::pair<Polyhedron, Rat>>& cells) {
    std::vector<Cell> cs;
    for (auto& [P, w] : cells) cs.push_back({P, Superform::constant(r, w)});
    return from_cells(r, 0, 0, l, cs);
}

bool DeltaForm::is_weighted() const {
    if (p_ || q_) return false;
    for (auto& c : cells_)
        if (c.coeff.degree() > 0) return false;
    return true;
}

Complex DeltaForm::support() const {
    std::vector<Polyhedron> ps;
    DeltaForm m = make_complex(*this);
    for (auto& c : m.cells()) ps.push_back(c.poly);
    return face_closure(r_, ps);
}

DeltaForm DeltaForm::operator+(const DeltaForm& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    check_same_type(*this, o);
    std::vector<Cell> cs = cells_;
    cs.insert(cs.end(), o.cells_.begin(), o.cells_.end());
    return raw(r_, p_, q_, l_, std::move(cs), false);
}

DeltaForm DeltaForm::operator-() const { return *this * Rat(-1); }
DeltaForm DeltaForm::operator-(const DeltaForm& o) const { return *this + (-o); }

DeltaForm DeltaForm::operator*(const Rat& c) const {
    if (c == 0) return DeltaForm(r_, p_, q_, l_);
    std::vector<Cell> cs;
    for (auto& x : cells_) cs.push_back({x.poly, x.coeff * c});
    return raw(r_, p_, q_, l_, std::move(cs), complex_);
}

DeltaForm DeltaForm::map_coeffs(const std::function<Superform(const Polyhedron&, const Superform&)>& fn, int p, int q) const {
    std::vector<Cell> cs;
    for (auto& x : cells_) {
        Superform n = canonical_on(x.poly, fn(x.poly, x.coeff));
        if (!n.is_zero()) cs.push_back({x.poly, n});
    }
    return raw(r_, p, q, l_, std::move(cs), complex_);
}

std::string DeltaForm::str() const {
    std::string s = "type (" + std::to_string(p_) + "," + std::to_string(q_) + "," + std::to_string(l_) + ") on R^" +
                    std::to_string(r_) + "\n";
    for (auto& c : cells_) s += "  " + describe(c.poly) + " : " + c.coeff.str() + "\n";
    return s;
}

DeltaForm make_complex(const DeltaForm& a) {
    if (a.is_complex()) return a;
    std::vector<Polyhedron> ps;
    for (auto& c : a.cells()) ps.push_back(c.poly);
    auto pieces = subdivide(ps);
    std::map<std::string, size_t> at;
    std::vector<Cell> out;
    for (size_t i = 0; i < pieces.size(); ++i)
        for (auto& piece : pieces[i]) {
            auto [it, fresh] = at.emplace(piece.key(), out.size());
            if (fresh) out.push_back({piece, a.cells()[i].coeff});
            else out[it->second].coeff += a.cells()[i].coeff;
        }
    std::vector<Cell> kept;
    for (auto& c : out)
        if (!c.coeff.is_zero()) kept.push_back(std::move(c));
    return DeltaForm::raw(a.rank(), a.p(), a.q(), a.l(), std::move(kept), true);
}

DeltaForm refine_by(const DeltaForm& in, const std::vector<Polyhedron>& regions, bool regions_proper) {
    DeltaForm a = make_complex(in);
    std::vector<Cell> out;
    for (auto& c : a.cells()) {
        // a piece lying in a face shared by several regions is produced once per region
        std::set<std::string> seen;
        for (auto& R : regions) {
            if (!c.poly.bbox().overlaps(R.bbox())) continue;
            if (R.contains(c.poly)) {
                out.push_back(c);
                break;
            }
            Polyhedron x = c.poly.intersect(R);
            if (!x.empty() && x.dim() == c.poly.dim() && seen.insert(x.key()).second) out.push_back({x, c.coeff});
        }
    }
    // pieces of different cells meet in common faces when the regions do
    DeltaForm res = DeltaForm::raw(a.rank(), a.p(), a.q(), a.l(), std::move(out), regions_proper);
    return regions_proper ? res : make_complex(res);
}

bool equal(const DeltaForm& a, const DeltaForm& b) {
    if (a.rank() != b.rank()) fail(ErrorKind::AmbientMismatch, "delta-forms on different spaces");
    if (a.p() != b.p() || a.q() != b.q() || a.l() != b.l()) fail(ErrorKind::TypeMismatch, "comparing delta-forms of different types");
    DeltaForm d = a - b;
    // cells in different affine hulls meet in lower dimension, so each hull is compared on its own
    std::map<std::string, std::vector<Cell>> by_hull;
    for (auto& c : d.cells()) {
        std::string k;
        for (auto& h : c.poly.hull_eqs()) k += fmt(to_rat(h.a)) + fmt(h.b) + ";";
        by_hull[k].push_back(c);
    }
    for (auto& [k, cs] : by_hull) {
        bool same = true;
        for (auto& c : cs) same = same && c.poly == cs[0].poly;
        if (same) {
            Superform t = cs[0].coeff;
            for (size_t i = 1; i < cs.size(); ++i) t += cs[i].coeff;
            if (!t.is_zero()) return false;
            continue;
        }
        if (!make_complex(DeltaForm::raw(d.rank(), d.p(), d.q(), d.l(), cs, false)).is_zero()) return false;
    }
    return true;
}

std::vector<Star> stars(const DeltaForm& a) {
    std::vector<Star> out;
    std::map<std::string, size_t> at;
    for (size_t i = 0; i < a.cells().size(); ++i) {
        const Polyhedron& s = a.cells()[i].poly;
        for (auto& t : s.facets()) {
            auto [it, fresh] = at.emplace(t.key(), out.size());
            if (fresh) out.push_back({t, {}});
            out[it->second].sides.push_back({int(i), normal_vector(s, t)});
        }
    }
    return out;
}

Balance check_balanced(const DeltaForm& in) {
    DeltaForm a = make_complex(in);
    Balance res{true, {}, {}};
    int r = a.rank();
    for (auto& s : stars(a)) {
        int k = s.tau.dim();
        const IntMat& W = s.tau.completion();
        std::vector<Superform> restricted;
        for (auto& [idx, w] : s.sides) restricted.push_back(restrict_to(s.tau, a.cells()[idx].coeff));
        std::vector<std::pair<int, Superform>> bad;
        for (int j = k; j < r; ++j) {
            Superform sum(k, a.p(), a.q());
            for (size_t t = 0; t < s.sides.size(); ++t) {
                Int c = 0;
                for (int u = 0; u < r; ++u) c += W(j, u) * s.sides[t].second[u];
                if (c != 0) sum += restricted[t] * Rat(c);
            }
            if (!sum.is_zero()) bad.push_back({j, sum});
        }
        if (!bad.empty()) {
            res.balanced = false;
            res.failing.push_back(s.tau);
            res.components.push_back(std::move(bad));
        }
    }
    return res;
}

DeltaForm dP1(const DeltaForm& a) {
    std::vector<Cell> cs;
    for (auto& c : a.cells()) {
        Superform d = d1(c.coeff);
        if (!d.is_zero()) cs.push_back({c.poly, d});
    }
    return DeltaForm::raw(a.rank(), a.p() + 1, a.q(), a.l(), std::move(cs), a.is_complex());
}

DeltaForm dP2(const DeltaForm& a) {
    std::vector<Cell> cs;
    for (auto& c : a.cells()) {
        Superform d = d2(c.coeff);
        if (!d.is_zero()) cs.push_back({c.poly, d});
    }
    return DeltaForm::raw(a.rank(), a.p(), a.q() + 1, a.l(), std::move(cs), a.is_complex());
}

DeltaForm j_op(const DeltaForm& a) {
    std::vector<Cell> cs;
    bool neg = a.l() % 2;
    for (auto& c : a.cells()) cs.push_back({c.poly, neg ? -j_op(c.coeff) : j_op(c.coeff)});
    return DeltaForm::raw(a.rank(), a.q(), a.p(), a.l(), std::move(cs), a.is_complex());
}

DeltaForm boundary1(const DeltaForm& a, const BasisChoice& basis) { return boundary_impl(a, basis, Side::DoublePrime); }
DeltaForm boundary2(const DeltaForm& a, const BasisChoice& basis) { return boundary_impl(a, basis, Side::Prime); }

PSForm PSForm::from_pieces(int r, int p, int q, std::vector<Cell> pieces, int proper_hint) {
    for (auto& c : pieces) check_cell(r, p, q, 0, c);
    bool proper = true;
    for (size_t i = 0; i < pieces.size(); ++i)
        for (size_t j = i + 1; j < pieces.size(); ++j) {
            if (!pieces[i].poly.bbox().overlaps(pieces[j].poly.bbox())) continue;
            Polyhedron x = pieces[i].poly.intersect(pieces[j].poly);
            if (x.empty()) continue;
            if (x.dim() == r) fail(ErrorKind::DimensionMismatch, "pieces overlap in " + describe(x));
            if (proper_hint < 0 && proper) proper = is_face(pieces[i].poly, x) && is_face(pieces[j].poly, x);
        }
    PSForm f(r, p, q);
    f.pieces_ = std::move(pieces);
    f.proper_ = proper_hint < 0 ? proper : proper_hint > 0;
    return f;
}

PSForm PSForm::function(int r, const std::vector<std::pair<Polyhedron, Poly>>& pieces, int proper_hint) {
    std::vector<Cell> cs;
    for (auto& [P, f] : pieces) {
        if (f.rank() != r && !f.is_zero()) fail(ErrorKind::AmbientMismatch, "piece polynomial in the wrong number of variables");
        cs.push_back({P, Superform::scalar(f.rank() == r ? f : Poly(r))});
    }
    return from_pieces(r, 0, 0, std::move(cs), proper_hint);
}

PSForm PSForm::global(const Superform& a) {
    PSForm f(a.rank(), a.p(), a.q());
    f.pieces_.push_back({Polyhedron::whole(a.rank()), a});
    return f;
}

namespace {
PSForm pl_function(int r, const std::vector<AffineForm>& forms, bool is_max) {
    for (auto& f : forms)
        if (int(f.lin.size()) != r) fail(ErrorKind::DimensionMismatch, "affine form of the wrong length");
    auto dec = decomposition_of_pl(forms, is_max);
    std::vector<std::pair<Polyhedron, Poly>> ps;
    for (size_t i = 0; i < dec.regions.size(); ++i) {
        const auto& f = forms[dec.labels[i]];
        ps.push_back({dec.regions[i], Poly::linear(to_rat(f.lin), f.c)});
    }
    return PSForm::function(r, ps, 1);
}
}  // namespace

PSForm PSForm::max_of(int r, const std::vector<AffineForm>& forms) { return pl_function(r, forms, true); }
PSForm PSForm::min_of(int r, const std::vector<AffineForm>& forms) { return pl_function(r, forms, false); }

std::vector<Polyhedron> PSForm::regions() const {
    std::vector<Polyhedron> out;
    for (auto& c : pieces_) out.push_back(c.poly);
    return out;
}

int PSForm::locate(const Polyhedron& P) const {
    for (size_t i = 0; i < pieces_.size(); ++i)
        if (pieces_[i].poly.bbox().overlaps(P.bbox()) && pieces_[i].poly.contains(P)) return int(i);
    return -1;
}

const Poly& PSForm::piece_poly(int i) const {
    static const Poly zero;
    const auto& t = pieces_[i].coeff.terms();
    if (t.empty()) return zero;
    return t.begin()->second;
}

Rat PSForm::eval(const Vec& x) const {
    if (p_ || q_) fail(ErrorKind::TypeMismatch, "evaluating a form of positive bidegree");
    for (size_t i = 0; i < pieces_.size(); ++i)
        if (pieces_[i].poly.contains(x)) return pieces_[i].coeff.is_zero() ? Rat(0) : piece_poly(int(i)).eval(x);
    fail(ErrorKind::DimensionMismatch, "point outside the domain " + fmt(x));
}

bool PSForm::continuous() const {
    for (size_t i = 0; i < pieces_.size(); ++i)
        for (size_t j = i + 1; j < pieces_.size(); ++j) {
            if (!pieces_[i].poly.meets(pieces_[j].poly)) continue;
            Polyhedron x = pieces_[i].poly.intersect(pieces_[j].poly);
            if (restrict_to(x, pieces_[i].coeff) != restrict_to(x, pieces_[j].coeff)) return false;
        }
    return true;
}

DeltaForm PSForm::as_delta() const { return DeltaForm::from_cells(r_, p_, q_, 0, pieces_); }

PSForm PSForm::operator+(const PSForm& o) const {
    if (o.r_ != r_) fail(ErrorKind::AmbientMismatch, "adding piecewise forms on different spaces");
    if (o.p_ != p_ || o.q_ != q_) fail(ErrorKind::TypeMismatch, "adding piecewise forms of different bidegree");
    std::vector<Cell> cs;
    for (auto& a : pieces_)
        for (auto& b : o.pieces_) {
            if (!a.poly.bbox().overlaps(b.poly.bbox())) continue;
            Polyhedron x = a.poly.intersect(b.poly);
            if (!x.empty() && x.dim() == r_) cs.push_back({x, a.coeff + b.coeff});
        }
    PSForm f(r_, p_, q_);
    f.pieces_ = std::move(cs);
    f.proper_ = proper_ && o.proper_;
    return f;
}

PSForm PSForm::operator*(const Rat& c) const {
    PSForm f = *this;
    for (auto& x : f.pieces_) x.coeff = x.coeff * c;
    return f;
}

PSForm dP1(const PSForm& f) {
    std::vector<Cell> cs;
    for (auto& c : f.pieces()) cs.push_back({c.poly, d1(c.coeff)});
    return PSForm::from_pieces(f.rank(), f.p() + 1, f.q(), std::move(cs), f.proper());
}

PSForm dP2(const PSForm& f) {
    std::vector<Cell> cs;
    for (auto& c : f.pieces()) cs.push_back({c.poly, d2(c.coeff)});
    return PSForm::from_pieces(f.rank(), f.p(), f.q() + 1, std::move(cs), f.proper());
}

DeltaForm corner_locus(const PSFunction& phi, const DeltaForm& in) {
    if (phi.rank() != in.rank()) fail(ErrorKind::AmbientMismatch, "function and form on different spaces");
    if (phi.p() || phi.q()) fail(ErrorKind::TypeMismatch, "corner locus needs a function");
    DeltaForm a = refine_by(in, phi.regions(), phi.proper());
    int r = a.rank();
    DeltaForm zero(r, a.p(), a.q(), a.l() + 1);
    if (a.is_zero()) return zero;
    auto bal = check_balanced(a);
    if (!bal.balanced) fail(ErrorKind::NotBalanced, "corner locus of an unbalanced form; first failing face " + describe(bal.failing[0]));
    std::vector<int> piece(a.cells().size());
    for (size_t i = 0; i < a.cells().size(); ++i) {
        piece[i] = phi.locate(a.cells()[i].poly);
        if (piece[i] < 0) fail(ErrorKind::DimensionMismatch, "form reaches outside the function's domain");
    }
    std::vector<Cell> out;
    for (auto& s : stars(a)) {
        const Poly& f0 = phi.piece_poly(piece[s.sides[0].first]);
        bool smooth = true;
        for (auto& [idx, w] : s.sides) smooth = smooth && phi.piece_poly(piece[idx]) == f0;
        if (smooth) continue;
        auto d = decompose(s, nullptr);
        int k = s.tau.dim();
        Superform total(r, a.p(), a.q());
        std::vector<Superform> beta(k, Superform(r, a.p(), a.q()));
        for (size_t t = 0; t < s.sides.size(); ++t) {
            const auto& c = a.cells()[s.sides[t].first];
            const Poly& f = phi.piece_poly(piece[s.sides[t].first]);
            Poly df = f.is_zero() ? Poly(r) : f.deriv_dir(to_rat(s.sides[t].second));
            total += c.coeff * df;
            for (int i = 0; i < k; ++i)
                if (d.along[t][i] != 0) beta[i] += c.coeff * d.along[t][i];
        }
        for (int i = 0; i < k; ++i) {
            if (beta[i].is_zero() || f0.is_zero()) continue;
            total -= beta[i] * f0.deriv_dir(column(d.V, i));
        }
        Superform c = canonical_on(s.tau, total);
        if (!c.is_zero()) out.push_back({s.tau, c});
    }
    return DeltaForm::raw(r, a.p(), a.q(), a.l() + 1, std::move(out), true);
}

DeltaForm ps_wedge(const PSForm& w, const DeltaForm& in) {
    if (w.rank() != in.rank()) fail(ErrorKind::AmbientMismatch, "piecewise form and delta-form on different spaces");
    int p = w.p() + in.p(), q = w.q() + in.q();
    if (in.is_zero()) return DeltaForm(in.rank(), p, q, in.l());
    DeltaForm a = refine_by(in, w.regions(), w.proper());
    std::vector<Cell> out;
    for (auto& c : a.cells()) {
        int i = w.locate(c.poly);
        if (i < 0) fail(ErrorKind::DimensionMismatch, "form reaches outside the piecewise form's domain");
        Superform n = canonical_on(c.poly, wedge(w.pieces()[i].coeff, c.coeff));
        if (!n.is_zero()) out.push_back({c.poly, n});
    }
    return DeltaForm::raw(a.rank(), p, q, a.l(), std::move(out), true);
}

PLCheck tropical_pl_check(const PSFunction& phi, const DeltaForm& a) {
    DeltaForm lhs = corner_locus(phi, a);
    PSForm dphi = dP2(phi);
    DeltaForm rhs = boundary1(ps_wedge(dphi, a)) + ps_wedge(dphi, boundary1(a));
    return {equal(lhs, rhs), lhs, rhs};
}

}  // namespace tc
