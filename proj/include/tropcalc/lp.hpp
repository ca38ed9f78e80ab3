#pragma once

#include "tropcalc/rational.hpp"

#include <vector>

namespace tc {

struct Constraint {
    Vec a;
    Rat b;
};

struct LpResult {
    bool feasible = false;
    Vec witness;      // feasible point when feasible
    Vec farkas_ineq;  // y >= 0 per inequality
    Vec farkas_eq;    // z per equality; sum y_i a_i + sum z_j e_j = 0, y.b + z.f = -1
};

// Exact feasibility of {a.x <= b} and {e.x = f}; dim < 0 infers it from the first constraint.
LpResult lp_feasible(const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs, int dim = -1);

// Checks a Farkas certificate against the constraint system.
bool verify_farkas(const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs, const LpResult& res);

enum class LpStatus { Optimal, Infeasible, Unbounded };
struct LpOpt {
    LpStatus status = LpStatus::Infeasible;
    Rat value;
    Vec point;
};
LpOpt lp_maximize(const Vec& c, const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs);

}  // namespace tc
