#pragma once

#include "tropcalc/deltaform.hpp"

namespace tc::oracle {

// Decides whether d' of a, taken as a current, is again a polyhedral current. Uses only exact
// pairings: around each codim-1 face tau the boundary functional
//   B(eta) = sum over cells of the integral of d'(a ^ eta) over the cell clipped to a small box Q
// is evaluated on test forms eta = H m d''l ^ psi, where H vanishes on the boundary of Q, m runs over
// monomials, l over affine functions vanishing on tau and psi over forms spanning the top degree on tau.
// Such eta restrict to zero on tau, so a polyhedral current on the faces pairs to zero with all of them.
bool d1_current_polyhedral(const DeltaForm& a);

}  // namespace tc::oracle
