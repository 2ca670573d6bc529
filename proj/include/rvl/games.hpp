// Exact zero-sum matrix games between a mechanism designer (rows: mechanism
// families) and an adversary (columns: limit type profiles).  Entry (J, t) is
// the limit ratio gameEntry(J, t); the game value is the best worst-case
// approximation ratio achievable by mixing the row mechanisms.
#pragma once

#include <string>
#include <vector>

#include "rvl/limits.hpp"

namespace rvl {

enum class RowFamily { OU, O };  // OU: unilaterals only; O: unilaterals + duples

struct GameMatrix {
  std::vector<MechanismSpec> rows;
  std::vector<std::string> rowNames;
  std::vector<TypeProfile> columns;
  long long n = 0;
  std::vector<std::vector<Rat>> entries;  // rows x columns
};

// The mechanism rows for a family at (m, n): OU is U_1..U_m; O additionally
// has D_q for q = floor(n/2)+1 .. n.
std::vector<MechanismSpec> rowsForFamily(RowFamily family, int m, long long n);
std::vector<std::string> rowNamesForFamily(RowFamily family, int m, long long n);

// Full game over canonical type-profile columns (voter/candidate relabelings
// lose nothing: every row mechanism is anonymous and neutral).
GameMatrix buildGameOU(int m, long long n, bool parallel = true);
GameMatrix buildGameO(int m, long long n, bool parallel = true);

// Game restricted to caller-supplied columns (e.g. a published catalogue).
GameMatrix buildRestrictedGame(const std::vector<MechanismSpec>& rows,
                               const std::vector<std::string>& rowNames,
                               const std::vector<TypeProfile>& columns, long long n,
                               bool parallel = true);

// Serial reference for the entry kernel (exact-equality-tested against the
// OpenMP kernel used when parallel = true).
std::vector<std::vector<Rat>> buildEntriesSerial(const std::vector<MechanismSpec>& rows,
                                                 const std::vector<TypeProfile>& columns,
                                                 long long n);
std::vector<std::vector<Rat>> buildEntriesParallel(const std::vector<MechanismSpec>& rows,
                                                   const std::vector<TypeProfile>& columns,
                                                   long long n);

struct GameSolution {
  Rat value;
  std::vector<Rat> rowMixture;     // optimal design mixture over rows
  std::vector<Rat> columnMixture;  // adversary's optimal mixture over columns
  bool certificateChecked = false;  // direct inequality verification passed
};

// Exact value and both optimal mixtures, certificate re-verified by direct
// inequality checks (row mixture attains >= value on every column; column
// mixture holds every row to <= value).
GameSolution solveZeroSumGame(const GameMatrix& g);

// Re-verifies the solution and returns it with the adversary support checked
// against the Shapley-Snow bound (<= #rows; basic solutions satisfy this).
GameSolution extractSmallSupport(const GameMatrix& g, const GameSolution& s);

// min over columns of (mixture . column): the guaranteed ratio of a fixed
// row mixture, for checking published mixtures against game values.
Rat verifyMixtureValue(const GameMatrix& g, const std::vector<Rat>& rowMixture);

}  // namespace rvl
