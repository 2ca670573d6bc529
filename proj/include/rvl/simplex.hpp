// Exact-rational dense-tableau simplex with Bland's rule (two phases).
//
// Solves  min c.x  s.t.  A x {<=,=,>=} b,  x >= 0  entirely in rationals.
// Bland's anti-cycling rule guarantees termination; every returned optimum
// is exact.  Small and deliberately simple: tableaus here are at most a few
// thousand columns wide and a handful of rows tall.
#pragma once

#include <vector>

#include "rvl/errors.hpp"
#include "rvl/rational.hpp"

namespace rvl {

enum class Rel { LE, EQ, GE };

struct LinearConstraint {
  std::vector<Rat> a;
  Rel rel = Rel::LE;
  Rat rhs;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rat objective;             // c.x at the optimum
  std::vector<Rat> x;        // primal solution (structural variables)
  // y = c_B B^{-1} per constraint row, relative to the sign-normalized rows
  // (rows are negated internally to make rhs >= 0).  Callers here verify any
  // certificate built from duals directly, so no sign convention is assumed.
  std::vector<Rat> dual;
};

// Minimize c.x subject to the constraints and x >= 0.
LPResult solveLP(const std::vector<Rat>& c, const std::vector<LinearConstraint>& rows);

// Feasibility of {A x rel b, x >= 0}: phase-1 only.
bool lpFeasible(const std::vector<LinearConstraint>& rows, int nvars,
                std::vector<Rat>* point = nullptr);

}  // namespace rvl
