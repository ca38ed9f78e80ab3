#pragma once

#include "tropcalc/affine_map.hpp"
#include "tropcalc/deltaform.hpp"

namespace tc {

Polyhedron image(const AffineMap& F, const Polyhedron& P);
Polyhedron preimage(const AffineMap& F, const Polyhedron& P);

// Cells whose dimension drops are discarded; the others carry the index [N_F(sigma) : dF(N_sigma)].
DeltaForm pushforward_hat(const AffineMap& F, const DeltaForm& a);
// Same push-forward, rejecting cells on which F is not injective.
DeltaForm pushforward_cells(const AffineMap& F, const DeltaForm& a);

// {(x', F(x'))} with weight 1, from its equations.
DeltaForm graph_direct(const AffineMap& F);
// Iterated corner loci of max{f_i(x'), x_i} on the product space; checked against graph_direct.
DeltaForm graph_cycle(const AffineMap& F);

// First projection of [Gamma_F] ^ ([R^s] x a).
DeltaForm pullback(const AffineMap& F, const DeltaForm& a);
PSForm pullback(const AffineMap& F, const PSForm& w);

struct ProjectionCheck {
    bool ok;
    DeltaForm lhs, rhs;
};
// F_hat(a ^ F^* b) against F_hat(a) ^ b
ProjectionCheck projection_formula_check(const AffineMap& F, const DeltaForm& a, const DeltaForm& b);

}  // namespace tc
