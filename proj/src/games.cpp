#include "rvl/games.hpp"

#include <algorithm>

#include "rvl/simplex.hpp"

namespace rvl {

std::vector<MechanismSpec> rowsForFamily(RowFamily family, int m, long long n) {
  std::vector<MechanismSpec> rows;
  for (int q = 1; q <= m; ++q) rows.push_back(unilateral(q));
  if (family == RowFamily::O)
    for (long long q = n / 2 + 1; q <= n; ++q) rows.push_back(duple(q));
  return rows;
}

std::vector<std::string> rowNamesForFamily(RowFamily family, int m, long long n) {
  std::vector<std::string> names;
  for (int q = 1; q <= m; ++q) names.push_back("U" + std::to_string(q));
  if (family == RowFamily::O)
    for (long long q = n / 2 + 1; q <= n; ++q) names.push_back("D" + std::to_string(q));
  return names;
}

std::vector<std::vector<Rat>> buildEntriesSerial(const std::vector<MechanismSpec>& rows,
                                                 const std::vector<TypeProfile>& columns,
                                                 long long n) {
  std::vector<std::vector<Rat>> e(rows.size(),
                                  std::vector<Rat>(columns.size(), Rat(0)));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < columns.size(); ++c) e[r][c] = gameEntry(rows[r], columns[c], n);
  return e;
}

std::vector<std::vector<Rat>> buildEntriesParallel(const std::vector<MechanismSpec>& rows,
                                                   const std::vector<TypeProfile>& columns,
                                                   long long n) {
  std::vector<std::vector<Rat>> e(rows.size(),
                                  std::vector<Rat>(columns.size(), Rat(0)));
  const long long total = static_cast<long long>(rows.size()) *
                          static_cast<long long>(columns.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long long idx = 0; idx < total; ++idx) {
    const size_t r = static_cast<size_t>(idx) / columns.size();
    const size_t c = static_cast<size_t>(idx) % columns.size();
    e[r][c] = gameEntry(rows[r], columns[c], n);
  }
  return e;
}

namespace {

GameMatrix buildGame(RowFamily family, int m, long long n, bool parallel) {
  GameMatrix g;
  g.rows = rowsForFamily(family, m, n);
  g.rowNames = rowNamesForFamily(family, m, n);
  g.columns = enumerateTypeProfiles(m, n, /*canonicalOnly=*/true);
  g.n = n;
  g.entries = parallel ? buildEntriesParallel(g.rows, g.columns, n)
                       : buildEntriesSerial(g.rows, g.columns, n);
  return g;
}

}  // namespace

GameMatrix buildGameOU(int m, long long n, bool parallel) {
  return buildGame(RowFamily::OU, m, n, parallel);
}

GameMatrix buildGameO(int m, long long n, bool parallel) {
  return buildGame(RowFamily::O, m, n, parallel);
}

GameMatrix buildRestrictedGame(const std::vector<MechanismSpec>& rows,
                               const std::vector<std::string>& rowNames,
                               const std::vector<TypeProfile>& columns, long long n,
                               bool parallel) {
  if (rows.size() != rowNames.size()) throw InvalidInput("restricted game: name mismatch");
  if (rows.empty() || columns.empty()) throw InvalidInput("restricted game: empty game");
  for (const TypeProfile& tp : columns) {
    tp.validate();
    if (tp.countsMode && tp.n != n)
      throw InvalidInput("restricted game: column voter count differs from n");
  }
  GameMatrix g;
  g.rows = rows;
  g.rowNames = rowNames;
  g.columns = columns;
  g.n = n;
  g.entries = parallel ? buildEntriesParallel(rows, columns, n)
                       : buildEntriesSerial(rows, columns, n);
  return g;
}

namespace {

// Direct certificate check: x spans >= value on every column, y holds every
// row to <= value, both mixtures are distributions.
bool certifySolution(const GameMatrix& g, const Rat& value, const std::vector<Rat>& x,
                     const std::vector<Rat>& y) {
  const size_t R = g.rows.size(), C = g.columns.size();
  if (x.size() != R || y.size() != C) return false;
  Rat sx(0), sy(0);
  for (const Rat& v : x) {
    if (v < Rat(0)) return false;
    sx += v;
  }
  for (const Rat& v : y) {
    if (v < Rat(0)) return false;
    sy += v;
  }
  if (sx != Rat(1) || sy != Rat(1)) return false;
  for (size_t c = 0; c < C; ++c) {
    Rat dot(0);
    for (size_t r = 0; r < R; ++r)
      if (!x[r].isZero()) dot += x[r] * g.entries[r][c];
    if (dot < value) return false;
  }
  for (size_t r = 0; r < R; ++r) {
    Rat dot(0);
    for (size_t c = 0; c < C; ++c)
      if (!y[c].isZero()) dot += y[c] * g.entries[r][c];
    if (dot > value) return false;
  }
  return true;
}

}  // namespace

GameSolution solveZeroSumGame(const GameMatrix& g) {
  const size_t R = g.rows.size(), C = g.columns.size();
  if (R == 0 || C == 0) throw InvalidInput("solveZeroSumGame: empty game");
  for (const auto& row : g.entries)
    for (const Rat& v : row)
      if (v.sign() <= 0 || v > Rat(1))
        throw InvalidInput("solveZeroSumGame: entries must lie in (0, 1]");

  GameSolution sol;
  if (R <= C) {
    // max 1.z  s.t.  M z <= 1, z >= 0  (R constraint rows); optimum is 1/value,
    // primal z scales to the adversary mixture, duals to the row mixture.
    std::vector<Rat> cost(C, Rat(-1));
    std::vector<LinearConstraint> rows(R);
    for (size_t r = 0; r < R; ++r) {
      rows[r].a = g.entries[r];
      rows[r].rel = Rel::LE;
      rows[r].rhs = Rat(1);
    }
    LPResult lp = solveLP(cost, rows);
    if (lp.status != LPStatus::Optimal)
      throw std::runtime_error("solveZeroSumGame: LP not optimal");
    const Rat invValue = -lp.objective;
    sol.value = Rat(1) / invValue;
    sol.columnMixture.assign(C, Rat(0));
    for (size_t c = 0; c < C; ++c) sol.columnMixture[c] = lp.x[c] * sol.value;
    sol.rowMixture.assign(R, Rat(0));
    for (size_t r = 0; r < R; ++r) sol.rowMixture[r] = -lp.dual[r] * sol.value;
  } else {
    // Transposed orientation on 2 - M (entries stay positive): its value is
    // 2 - value, its row player is the adversary.  C constraint rows.
    std::vector<Rat> cost(R, Rat(-1));
    std::vector<LinearConstraint> rows(C);
    for (size_t c = 0; c < C; ++c) {
      rows[c].a.resize(R);
      for (size_t r = 0; r < R; ++r) rows[c].a[r] = Rat(2) - g.entries[r][c];
      rows[c].rel = Rel::LE;
      rows[c].rhs = Rat(1);
    }
    LPResult lp = solveLP(cost, rows);
    if (lp.status != LPStatus::Optimal)
      throw std::runtime_error("solveZeroSumGame: LP not optimal");
    const Rat primedValue = Rat(1) / (-lp.objective);
    sol.value = Rat(2) - primedValue;
    sol.rowMixture.assign(R, Rat(0));
    for (size_t r = 0; r < R; ++r) sol.rowMixture[r] = lp.x[r] * primedValue;
    sol.columnMixture.assign(C, Rat(0));
    for (size_t c = 0; c < C; ++c) sol.columnMixture[c] = -lp.dual[c] * primedValue;
  }

  sol.certificateChecked = certifySolution(g, sol.value, sol.rowMixture, sol.columnMixture);
  if (!sol.certificateChecked)
    throw std::runtime_error("solveZeroSumGame: certificate verification failed");
  return sol;
}

GameSolution extractSmallSupport(const GameMatrix& g, const GameSolution& s) {
  size_t support = 0;
  for (const Rat& v : s.columnMixture)
    if (!v.isZero()) ++support;
  GameSolution out = s;
  out.certificateChecked = certifySolution(g, s.value, s.rowMixture, s.columnMixture);
  if (!out.certificateChecked)
    throw std::runtime_error("extractSmallSupport: certificate verification failed");
  if (support > g.rows.size())
    throw std::runtime_error("extractSmallSupport: basic solution exceeded the row bound");
  return out;
}

Rat verifyMixtureValue(const GameMatrix& g, const std::vector<Rat>& rowMixture) {
  if (rowMixture.size() != g.rows.size())
    throw InvalidInput("verifyMixtureValue: mixture size mismatch");
  Rat total(0);
  for (const Rat& v : rowMixture) {
    if (v < Rat(0)) throw InvalidInput("verifyMixtureValue: negative weight");
    total += v;
  }
  if (total != Rat(1)) throw InvalidInput("verifyMixtureValue: weights must sum to 1");
  Rat best;
  bool first = true;
  for (size_t c = 0; c < g.columns.size(); ++c) {
    Rat dot(0);
    for (size_t r = 0; r < g.rows.size(); ++r)
      if (!rowMixture[r].isZero()) dot += rowMixture[r] * g.entries[r][c];
    if (first || dot < best) {
      best = dot;
      first = false;
    }
  }
  return best;
}

}  // namespace rvl
