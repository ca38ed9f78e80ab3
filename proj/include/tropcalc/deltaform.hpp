#pragma once

#include "tropcalc/complex.hpp"
#include "tropcalc/superform.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tc {

struct Cell {
    Polyhedron poly;
    Superform coeff;  // ambient form, stored as canonical_on(poly, .)
};

// Polyhedral supercurrent sum coeff_sigma [sigma] of type (p, q, l) on R^r.
class DeltaForm {
public:
    DeltaForm() = default;
    DeltaForm(int r, int p, int q, int l) : r_(r), p_(p), q_(q), l_(l) {}

    // Normalizes coefficients and drops zero cells; cells may overlap arbitrarily.
    static DeltaForm from_cells(int r, int p, int q, int l, const std::vector<Cell>& cells);
    // Constant weights, type (0, 0, l).
    static DeltaForm weighted(int r, int l, const std::vector<std::pair<Polyhedron, Rat>>& cells);

    int rank() const { return r_; }
    int p() const { return p_; }
    int q() const { return q_; }
    int l() const { return l_; }
    int cell_dim() const { return r_ - l_; }
    const std::vector<Cell>& cells() const { return cells_; }
    bool is_zero() const { return cells_.empty(); }  // sums are not merged; see make_complex
    bool is_complex() const { return complex_; }
    bool is_weighted() const;  // all coefficients constants of bidegree (0,0)
    Complex support() const;   // face closure of the cells

    DeltaForm operator+(const DeltaForm& o) const;
    DeltaForm operator-(const DeltaForm& o) const;
    DeltaForm operator-() const;
    DeltaForm operator*(const Rat& c) const;
    DeltaForm map_coeffs(const std::function<Superform(const Polyhedron&, const Superform&)>& fn, int p, int q) const;

    std::string str() const;

    // internal: trusted construction from proper, normalized, merged cells
    static DeltaForm raw(int r, int p, int q, int l, std::vector<Cell> cells, bool is_complex);

private:
    int r_ = 0, p_ = 0, q_ = 0, l_ = 0;
    std::vector<Cell> cells_;
    bool complex_ = true;
};

// Subdivides so that cells meet in common faces, merging coefficients of equal cells.
DeltaForm make_complex(const DeltaForm& a);
// Splits every cell along the given codim-0 regions (each piece full-dimensional in its cell).
// When the regions form a polyhedral complex the pieces already meet in common faces.
DeltaForm refine_by(const DeltaForm& a, const std::vector<Polyhedron>& regions, bool regions_proper = false);
bool equal(const DeltaForm& a, const DeltaForm& b);

struct Star {
    Polyhedron tau;
    std::vector<std::pair<int, IVec>> sides;  // (cell index, normal vector)
};
// Codim-1 faces of the maximal cells of a complex-form with their stars.
std::vector<Star> stars(const DeltaForm& a);

struct Balance {
    bool balanced;
    std::vector<Polyhedron> failing;
    // per failing face: (row j of the completion, nonzero sum of restricted coefficients times W_j . omega)
    std::vector<std::vector<std::pair<int, Superform>>> components;
};
Balance check_balanced(const DeltaForm& a);

DeltaForm dP1(const DeltaForm& a);
DeltaForm dP2(const DeltaForm& a);
DeltaForm j_op(const DeltaForm& a);

// Basis of N_tau used in the boundary decomposition; default is the cached lattice basis.
using BasisChoice = std::function<IntMat(const Polyhedron& tau)>;
DeltaForm boundary1(const DeltaForm& a, const BasisChoice& basis = nullptr);
DeltaForm boundary2(const DeltaForm& a, const BasisChoice& basis = nullptr);

// Piecewise smooth form: codim-0 cells covering R^r, one superform per cell.
class PSForm {
public:
    PSForm() = default;
    PSForm(int r, int p, int q) : r_(r), p_(p), q_(q) {}

    // proper_hint: 1 when the regions are known to form a complex, -1 to test it
    static PSForm from_pieces(int r, int p, int q, std::vector<Cell> pieces, int proper_hint = -1);
    static PSForm function(int r, const std::vector<std::pair<Polyhedron, Poly>>& pieces, int proper_hint = -1);
    static PSForm global(const Superform& a);
    static PSForm max_of(int r, const std::vector<AffineForm>& forms);
    static PSForm min_of(int r, const std::vector<AffineForm>& forms);

    int rank() const { return r_; }
    int p() const { return p_; }
    int q() const { return q_; }
    const std::vector<Cell>& pieces() const { return pieces_; }
    std::vector<Polyhedron> regions() const;
    // piece whose cell contains P (P inside one region), -1 when none does
    int locate(const Polyhedron& P) const;
    Rat eval(const Vec& x) const;  // bidegree (0,0) only
    const Poly& piece_poly(int i) const;
    // Pieces agree on common faces.
    bool continuous() const;
    // Regions meet in common faces.
    bool proper() const { return proper_; }
    DeltaForm as_delta() const;

    PSForm operator+(const PSForm& o) const;
    PSForm operator*(const Rat& c) const;

private:
    int r_ = 0, p_ = 0, q_ = 0;
    std::vector<Cell> pieces_;
    bool proper_ = true;
};

using PSFunction = PSForm;

PSForm dP1(const PSForm& f);
PSForm dP2(const PSForm& f);

DeltaForm corner_locus(const PSFunction& phi, const DeltaForm& a);
DeltaForm ps_wedge(const PSForm& w, const DeltaForm& a);

struct PLCheck {
    bool ok;
    DeltaForm lhs, rhs;
};
PLCheck tropical_pl_check(const PSFunction& phi, const DeltaForm& a);

}  // namespace tc
