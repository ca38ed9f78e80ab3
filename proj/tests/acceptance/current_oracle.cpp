#include "current_oracle.hpp"

#include "tropcalc/integration.hpp"

#include <functional>
#include <map>

namespace tc::oracle {

namespace {

// d'(a.x) or d''(a.x)
Superform dlin(int r, const std::vector<Rat>& a, bool second) {
    Superform s(r, second ? 0 : 1, second ? 1 : 0);
    for (int i = 0; i < r; ++i)
        if (a[i] != 0) s += (second ? Superform::ddprime(r, i) : Superform::dprime(r, i)) * a[i];
    return s;
}

Polyhedron cube(const Vec& c, const Rat& e) {
    int r = int(c.size());
    std::vector<Constraint> cs;
    for (int i = 0; i < r; ++i) {
        Vec a(r, Rat(0));
        a[i] = 1;
        cs.push_back({a, c[i] + e});
        a[i] = -1;
        cs.push_back({a, e - c[i]});
    }
    return Polyhedron::make(r, cs);
}

std::vector<std::vector<int>> subsets(int m, int s) {
    std::vector<std::vector<int>> out;
    if (s < 0 || s > m) return out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) != s) continue;
        std::vector<int> v;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) v.push_back(i);
        out.push_back(v);
    }
    return out;
}

// products of the u_j of total degree <= d
std::vector<Poly> monomials(const std::vector<Poly>& u, int d, int r) {
    std::vector<Poly> out;
    std::function<void(size_t, int, const Poly&)> rec = [&](size_t j, int left, const Poly& acc) {
        if (j == u.size()) {
            out.push_back(acc);
            return;
        }
        Poly f = acc;
        for (int e = 0; e <= left; ++e) {
            rec(j + 1, left - e, f);
            f = f * u[j];
        }
    };
    rec(0, d, Poly::constant(r, Rat(1)));
    return out;
}

}  // namespace

bool d1_current_polyhedral(const DeltaForm& a0) {
    DeltaForm a = make_complex(a0);
    int r = a.rank(), p = a.p(), q = a.q(), dt = a.cell_dim() - 1;
    if (a.is_zero() || dt < 0 || p > dt || q > dt) return true;
    int D = 0;
    for (auto& c : a.cells()) D = std::max(D, c.coeff.degree());
    std::map<std::string, Polyhedron> faces;
    for (auto& c : a.cells())
        for (auto& f : c.poly.facets()) faces.emplace(f.key(), f);
    Rat sign = (p + q) % 2 ? -1 : 1;

    for (auto& [key, tau] : faces) {
        const Vec& c = tau.relint_point();
        std::vector<Cell> star;
        std::vector<const Polyhedron*> others;
        for (auto& cell : a.cells()) {
            if (cell.poly.contains(tau)) star.push_back(cell);
            else others.push_back(&cell.poly);
        }
        for (auto& [k2, f] : faces)
            if (k2 != key) others.push_back(&f);
        // shrink Q until it sees no cell or face other than tau and its star
        Rat e = 1;
        Polyhedron Q;
        for (;;) {
            Q = cube(c, e);
            bool clear = true;
            for (auto* o : others)
                if (o->meets(Q)) {
                    clear = false;
                    break;
                }
            if (clear) break;
            e /= 2;
        }
        DeltaForm s = DeltaForm::raw(r, p, q, a.l(), star, true);
        DeltaForm ds = dP1(s);

        Poly H = Poly::constant(r, Rat(1));
        for (int i = 0; i < r; ++i) {
            Poly y = Poly::var(r, i) - Poly::constant(r, c[i]);
            H = H * (Poly::constant(r, e) - y) * (Poly::constant(r, e) + y);
        }
        // local coordinates on tau from the completion rows
        const IntMat& W = tau.completion();
        std::vector<Poly> u(dt);
        std::vector<Superform> du1(dt), du2(dt);
        for (int j = 0; j < dt; ++j) {
            Vec w(r);
            for (int i = 0; i < r; ++i) w[i] = W(j, i);
            u[j] = Poly::linear(w, -dot(w, c));
            du1[j] = dlin(r, w, false);
            du2[j] = dlin(r, w, true);
        }
        std::vector<Poly> monos = monomials(u, D, r);
        auto As = subsets(dt, dt - p), Bs = subsets(dt, dt - q);

        for (auto& h : tau.hull_eqs()) {
            Vec la(r);
            for (int i = 0; i < r; ++i) la[i] = h.a[i];
            Superform dl = dlin(r, la, true);
            for (auto& A : As)
                for (auto& B : Bs) {
                    Superform psi = Superform::constant(r, Rat(1));
                    for (int j : A) psi = wedge(psi, du1[j]);
                    for (int j : B) psi = wedge(psi, du2[j]);
                    Superform base = wedge(dl, psi);
                    for (auto& mo : monos) {
                        Superform eta = base * (H * mo);
                        Rat b = pairing(ds, eta, Q) + sign * pairing(s, d1(eta), Q);
                        if (b != 0) return false;
                    }
                }
        }
    }
    return true;
}

}  // namespace tc::oracle
