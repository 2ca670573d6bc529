// Mechanism specifications and exact finite-profile evaluation.
//
// Atom families: unilateral U_q (uniform voter, uniform among his top q),
// duple D_q (uniform candidate pair, pairwise vote with threshold q, coin on
// failure), random-majority (D with q = floor(n/2)+1), random-favorite (U_1),
// random-candidate (U_m), and the quadratic lottery (m = 3 only).  Specs are
// closed under finite mixtures and symmetrization over candidate relabelings.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "rvl/types.hpp"

namespace rvl {

// Probability vector over candidates.
struct Lottery {
  std::vector<Rat> p;

  int m() const { return static_cast<int>(p.size()); }
  void validate() const;
};

struct MechanismSpec;

struct Unilateral {
  int q;
};
struct Duple {
  long long q;
};
struct RandomMajority {};
struct RandomFavorite {};
struct RandomCandidate {};
struct QuadraticLottery {};
struct Mixture {
  std::vector<Rat> weights;               // nonnegative, sum 1
  std::vector<MechanismSpec> parts;       // same length as weights
};
struct Symmetrized {
  std::vector<MechanismSpec> inner;       // exactly one element
};

struct MechanismSpec {
  std::variant<Unilateral, Duple, RandomMajority, RandomFavorite, RandomCandidate,
               QuadraticLottery, Mixture, Symmetrized>
      node;
};

MechanismSpec mixture(const std::vector<std::pair<Rat, MechanismSpec>>& parts);
MechanismSpec unilateral(int q);
MechanismSpec duple(long long q);
MechanismSpec randomMajority();
MechanismSpec randomFavorite();
MechanismSpec randomCandidate();
MechanismSpec quadraticLottery();
MechanismSpec symmetrized(const MechanismSpec& inner);

// Quadratic-lottery probabilities on (top, second, third) given the second
// value alpha: ((4 - a^2)/6, (1 + 2a)/6, (1 - 2a + a^2)/6).
std::array<Rat, 3> quadraticTriple(const Rat& alpha);

// Exact winner distribution of the mechanism on a validated profile.
Lottery evalMechanism(const MechanismSpec& spec, const Profile& p);

// Expected welfare of the mechanism's lottery divided by the best candidate's
// welfare, both exact.
Rat ratioOnProfile(const MechanismSpec& spec, const Profile& p);

// Relabel candidates: new candidate sigma[c] receives old candidate c's
// values.  sigma must be a permutation of 0..m-1.
Profile permuteProfile(const Profile& p, const std::vector<int>& sigma);

// One audited deviation: utility gap E[u_i | truthful] - E[u_i | misreport].
struct AuditReport {
  std::vector<Rat> gaps;   // one per misreport, in input order
  bool anyNegative = false;
};

// Audit voter `voter`'s incentive to deviate to each misreport, under an
// arbitrary evaluator (used for deliberately non-truthful test mechanisms).
AuditReport truthfulnessAudit(const std::function<Lottery(const Profile&)>& eval,
                              const Profile& p, int voter,
                              const std::vector<Valuation>& misreports);

// Same, for a mechanism spec (always nonnegative gaps for the atom families
// and their mixtures/symmetrizations).
AuditReport truthfulnessAudit(const MechanismSpec& spec, const Profile& p, int voter,
                              const std::vector<Valuation>& misreports);

}  // namespace rvl
