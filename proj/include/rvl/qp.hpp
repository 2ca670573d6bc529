// Exact global minimization of (possibly indefinite) quadratics over faces of
// the standard simplex with extra linear constraints, by exhaustive face
// enumeration: on each face the stationarity (KKT) system is solved in exact
// rationals; a quadratic is constant on any affine set of stationary points,
// so degenerate systems reduce to an exact feasibility LP.  Used to certify
// worst-case approximation-ratio lower bounds.
#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "rvl/limits.hpp"

namespace rvl {

struct QuadraticProgram {
  int d = 0;
  std::vector<std::vector<Rat>> Q;  // d x d, symmetric
  std::vector<Rat> c;               // linear term
  Rat c0;                           // constant term
  std::vector<std::pair<std::vector<Rat>, Rat>> eqs;    // a.x == rhs
  std::vector<std::pair<std::vector<Rat>, Rat>> ineqs;  // a.x >= rhs
  // Implicit: x >= 0.  eqs always contains sum(x) == 1 for the builders here.

  Rat objective(const std::vector<Rat>& x) const;
};

struct QPCertificate {
  Rat minValue;
  std::vector<Rat> argmin;
  uint32_t zeroMask = 0;       // variables pinned to zero at the argmin's face
  uint32_t tightMask = 0;      // inequality constraints forced tight there
  long long facesExamined = 0;
};

// Global minimum over {x >= 0} ∩ eqs ∩ ineqs (a compact polytope for every
// builder below).  Ties broken by smallest (zeroMask, tightMask).  Throws
// InfeasibleProgram when the feasible region is empty.
QPCertificate minimizeQP(const QuadraticProgram& qp, bool parallel = true);

// Serial reference half of the kernel pair (exact-equality-tested against the
// OpenMP path).
QPCertificate minimizeQPSerial(const QuadraticProgram& qp);

// min over the simplex of  sum_c p_c(x) w_c(x) - r * w_A(x)  for the mixture
// uWeights[0] U_1 + uWeights[1] U_2 + uWeights[2] U_3 over the 12 m=3 types;
// positive minimum certifies asymptotic ratio > r.  referenceMax adds
// w_A >= w_B and w_A >= w_C.
QuadraticProgram buildOrdinalRatioQP(const std::array<Rat, 3>& uWeights, const Rat& r,
                                     bool referenceMax);

// The 27 majority-outcome cases for  uWeights . (U_1,U_2,U_3) + dWeight * RM:
// each pairwise contest (AB, AC, BC) independently won by either side or tied;
// the random-majority winner distribution is constant per case, majorities
// add (weakened, >=) half-space or (tie) hyperplane constraints.  All 27
// minima positive certifies asymptotic ratio > r at every voter count.
struct MajorityCaseQP {
  QuadraticProgram qp;
  std::array<int, 3> outcome;  // per pair AB, AC, BC: 0 first wins, 1 second, 2 tie
  std::array<Rat, 3> rmWinProb;
  std::string label;
};
std::vector<MajorityCaseQP> buildMajorityCaseQPs(const std::array<Rat, 3>& uWeights,
                                                 const Rat& dWeight, const Rat& r);

// Same ratio program for  qWeight * quadratic-lottery + rfWeight * U_1.
QuadraticProgram buildQuadraticLotteryQP(const Rat& qWeight, const Rat& rfWeight,
                                         const Rat& r, bool referenceMax);

// Exhaustive 1/resolution-grid scan of the program's feasible points: checks
// no grid value falls below minValue, independently of the KKT machinery.
struct GridScan {
  long long pointsVisited = 0;   // feasible grid points
  long long violations = 0;      // points strictly below minValue (expect 0)
  Rat gridMin;                   // smallest grid value seen
};
GridScan scanGridLowerBound(const QuadraticProgram& qp, int resolution,
                            const Rat& minValue);

struct BracketResult {
  Rat lo, hi;
  int iterations = 0;
};

// Bisect the asymptotic-ratio threshold of the program family builder(r,
// referenceMax): the lower endpoint advances only on a nonnegative
// unconstrained minimum, the upper only on a negative referenceMax minimum.
// pre: builder(lo,false) has min >= 0 and builder(hi,true) has min < 0.
BracketResult bracketAsymptoticRatio(
    const std::function<QuadraticProgram(const Rat&, bool)>& builder, const Rat& lo,
    const Rat& hi, const Rat& tol);

}  // namespace rvl
