#pragma once

#include "tropcalc/deltaform.hpp"
#include "tropcalc/polyhedron.hpp"
#include "tropcalc/superform.hpp"

#include <vector>

namespace tc {

// Simplices (vertex lists) covering a bounded polyhedron, coned from the lexicographically least vertex.
std::vector<std::vector<Vec>> triangulate(const Polyhedron& sigma);

// Integral of a polynomial over a polytope in its lattice coordinates.
Rat integrate_poly_local(const Polyhedron& sigma, const Poly& f_local);

Rat integrate_cell(const Polyhedron& sigma, const Superform& a);
// eta of bidegree (k-1, k) or (k, k-1) on sigma, k = dim sigma
Rat integrate_boundary(const Polyhedron& sigma, const Superform& eta);
// Same with a chosen normal vector per facet (in facets() order).
Rat integrate_boundary(const Polyhedron& sigma, const Superform& eta, const std::vector<IVec>& normals);

bool is_symmetric(const Superform& a);

struct CheckResult {
    bool ok;
    Rat lhs, rhs;
};

// Cells with constant weights, all of the same dimension.
using WeightedCells = std::vector<std::pair<Polyhedron, Rat>>;

Rat integrate_cells(const WeightedCells& c, const Superform& a);
Rat integrate_boundary_cells(const WeightedCells& c, const Superform& eta);
CheckResult stokes_check(const WeightedCells& c, const Superform& eta);
CheckResult green_check(const WeightedCells& c, const Superform& alpha, const Superform& beta);

// Constant-weight form as weighted cells; TypeMismatch for other coefficients.
WeightedCells weighted_cells(const DeltaForm& c);
CheckResult stokes_check(const DeltaForm& c, const Superform& eta);
CheckResult green_check(const DeltaForm& c, const Superform& alpha, const Superform& beta);

// sum over cells of the integral of coeff ^ g over the cell clipped to the bounded region
Rat pairing(const DeltaForm& a, const Superform& g, const Polyhedron& clip);

// Sum of the weights of a form of type (0,0,r).
Rat degree(const DeltaForm& a);

}  // namespace tc
