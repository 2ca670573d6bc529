// Limit behaviour of mechanisms on type profiles as the grid resolution
// k -> infinity, plus the worst-case profile pessimizer that slides grid
// valuations toward quasi-combinatorial form without increasing the
// welfare quotient.
#pragma once

#include "rvl/mechanisms.hpp"
#include "rvl/types.hpp"

namespace rvl {

// Per-candidate limit welfare of a type profile: each voter of type t
// contributes 1 to every candidate in t's high block and 0 elsewhere.
// Counts mode yields voter units, fractions mode yields fractions of n.
std::vector<Rat> limitWelfare(const TypeProfile& tp);

// Exact limit winner distribution of a mixture over the unilateral, duple,
// random-majority/favorite/candidate and quadratic-lottery families on a
// type profile.  Duple components need voter counts: counts mode, or
// fractions mode with n supplied (scaled counts must be integral).
// Symmetrized specs are rejected here (finite evaluation supports them).
Lottery limitLottery(const MechanismSpec& spec, const TypeProfile& tp, long long n = -1);

// Limit of expected-welfare / best-candidate-welfare on the type profile:
// one exact matrix entry of the limit game.
Rat gameEntry(const MechanismSpec& spec, const TypeProfile& tp, long long n = -1);

// Finite-resolution ratios ratioOnProfile(spec, realizeTypeProfile(tp, k))
// for each k in ks, for comparing against the limit entry.
std::vector<std::pair<int, Rat>> entryConvergence(const MechanismSpec& spec,
                                                  const TypeProfile& tp,
                                                  const std::vector<int>& ks);

struct PessimizeResult {
  Profile profile;   // every voter quasi-combinatorial (alternation number 2)
  Rat gStart;        // welfare quotient before sliding
  Rat gEnd;          // welfare quotient after sliding (gEnd <= gStart)
  int slides = 0;    // endpoint moves applied
};

// Welfare quotient with candidate 0 as the fixed reference:
//     g(u) = sum_c  P[J elects c] * welfare(c)  /  welfare(candidate 0).
Rat welfareQuotient(const MechanismSpec& spec, const Profile& p);

// Slides grid values (resolution k) until every voter is quasi-combinatorial,
// never increasing the welfare quotient.  Ordinal mixtures (no quadratic
// component) use maximal-run block slides and always succeed; mixtures with a
// quadratic component (m = 3) slide isolated middle values to an adjacent-to-
// 0-or-1 endpoint and throw PessimizeObstruction when every candidate move
// would strictly increase the quotient.  Requires positive reference welfare.
PessimizeResult pessimizeProfile(const MechanismSpec& spec, const Profile& p, int k);

}  // namespace rvl
