#include "rvl/simplex.hpp"

#include <algorithm>

namespace rvl {

namespace {

// Dense tableau holding B^{-1}[A | I] and B^{-1}b, with the basis tracked
// explicitly.  Reduced costs are recomputed from scratch each iteration
// (rows are few in every use here, so this is cheap and keeps pivots simple).
struct Tableau {
  int rows = 0;
  int cols = 0;                       // structural + slack + artificial
  std::vector<std::vector<Rat>> t;    // rows x cols
  std::vector<Rat> rhs;               // rows
  std::vector<int> basis;             // basic column per row
  std::vector<int> identityCol;       // initial identity column per row

  void pivot(int prow, int pcol) {
    const Rat inv = Rat(1) / t[static_cast<size_t>(prow)][static_cast<size_t>(pcol)];
    auto& pr = t[static_cast<size_t>(prow)];
    for (Rat& v : pr) v *= inv;
    rhs[static_cast<size_t>(prow)] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == prow) continue;
      const Rat factor = t[static_cast<size_t>(r)][static_cast<size_t>(pcol)];
      if (factor.isZero()) continue;
      auto& row = t[static_cast<size_t>(r)];
      for (int j = 0; j < cols; ++j) {
        if (pr[static_cast<size_t>(j)].isZero()) continue;
        row[static_cast<size_t>(j)] -= factor * pr[static_cast<size_t>(j)];
      }
      rhs[static_cast<size_t>(r)] -= factor * rhs[static_cast<size_t>(prow)];
    }
    basis[static_cast<size_t>(prow)] = pcol;
  }

  // Bland: entering = lowest-index negative reduced cost; leaving = lowest
  // basic column among minimum-ratio rows.  Returns false when optimal.
  // cost[j] is the phase objective coefficient; banned columns are skipped.
  bool step(const std::vector<Rat>& cost, const std::vector<char>& banned,
            bool* unbounded) {
    // Reduced costs r_j = cost_j - cost_B . column_j.
    std::vector<Rat> costB(static_cast<size_t>(rows));
    for (int r = 0; r < rows; ++r)
      costB[static_cast<size_t>(r)] = cost[static_cast<size_t>(basis[static_cast<size_t>(r)])];
    int entering = -1;
    for (int j = 0; j < cols && entering < 0; ++j) {
      if (banned[static_cast<size_t>(j)]) continue;
      Rat rc = cost[static_cast<size_t>(j)];
      for (int r = 0; r < rows; ++r) {
        const Rat& a = t[static_cast<size_t>(r)][static_cast<size_t>(j)];
        if (!a.isZero()) rc -= costB[static_cast<size_t>(r)] * a;
      }
      if (rc.sign() < 0) entering = j;
    }
    if (entering < 0) return false;
    int leaving = -1;
    Rat bestRatio;
    for (int r = 0; r < rows; ++r) {
      const Rat& a = t[static_cast<size_t>(r)][static_cast<size_t>(entering)];
      if (a.sign() <= 0) continue;
      Rat ratio = rhs[static_cast<size_t>(r)] / a;
      if (leaving < 0 || ratio < bestRatio ||
          (ratio == bestRatio &&
           basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leaving)])) {
        leaving = r;
        bestRatio = ratio;
      }
    }
    if (leaving < 0) {
      *unbounded = true;
      return false;
    }
    pivot(leaving, entering);
    return true;
  }
};

}  // namespace

LPResult solveLP(const std::vector<Rat>& c, const std::vector<LinearConstraint>& rowsIn) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rowsIn.size());

  // Normalize to b >= 0.
  std::vector<LinearConstraint> rows = rowsIn;
  for (auto& row : rows) {
    if (static_cast<int>(row.a.size()) != n)
      throw InvalidInput("solveLP: constraint width mismatch");
    if (row.rhs.sign() < 0) {
      for (Rat& v : row.a) v = -v;
      row.rhs = -row.rhs;
      row.rel = row.rel == Rel::LE ? Rel::GE : (row.rel == Rel::GE ? Rel::LE : Rel::EQ);
    }
  }

  int slackCount = 0, artCount = 0;
  for (const auto& row : rows) {
    if (row.rel != Rel::EQ) ++slackCount;
    if (row.rel != Rel::LE) ++artCount;
  }

  Tableau tb;
  tb.rows = m;
  tb.cols = n + slackCount + artCount;
  tb.t.assign(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(tb.cols), Rat(0)));
  tb.rhs.resize(static_cast<size_t>(m));
  tb.basis.assign(static_cast<size_t>(m), -1);
  tb.identityCol.assign(static_cast<size_t>(m), -1);

  int nextSlack = n, nextArt = n + slackCount;
  std::vector<char> isArtificial(static_cast<size_t>(tb.cols), 0);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) tb.t[static_cast<size_t>(r)][static_cast<size_t>(j)] = rows[static_cast<size_t>(r)].a[static_cast<size_t>(j)];
    tb.rhs[static_cast<size_t>(r)] = rows[static_cast<size_t>(r)].rhs;
    switch (rows[static_cast<size_t>(r)].rel) {
      case Rel::LE:
        tb.t[static_cast<size_t>(r)][static_cast<size_t>(nextSlack)] = Rat(1);
        tb.basis[static_cast<size_t>(r)] = nextSlack;
        tb.identityCol[static_cast<size_t>(r)] = nextSlack;
        ++nextSlack;
        break;
      case Rel::GE:
        tb.t[static_cast<size_t>(r)][static_cast<size_t>(nextSlack)] = Rat(-1);
        ++nextSlack;
        [[fallthrough]];
      case Rel::EQ:
        tb.t[static_cast<size_t>(r)][static_cast<size_t>(nextArt)] = Rat(1);
        tb.basis[static_cast<size_t>(r)] = nextArt;
        tb.identityCol[static_cast<size_t>(r)] = nextArt;
        isArtificial[static_cast<size_t>(nextArt)] = 1;
        ++nextArt;
        break;
    }
  }

  std::vector<char> noneBanned(static_cast<size_t>(tb.cols), 0);
  LPResult res;

  // Phase 1: drive artificials to zero.
  if (artCount > 0) {
    std::vector<Rat> phase1(static_cast<size_t>(tb.cols), Rat(0));
    for (int j = 0; j < tb.cols; ++j)
      if (isArtificial[static_cast<size_t>(j)]) phase1[static_cast<size_t>(j)] = Rat(1);
    bool unbounded = false;
    while (tb.step(phase1, noneBanned, &unbounded)) {
    }
    Rat infeas(0);
    for (int r = 0; r < m; ++r)
      if (isArtificial[static_cast<size_t>(tb.basis[static_cast<size_t>(r)])])
        infeas += tb.rhs[static_cast<size_t>(r)];
    if (!infeas.isZero()) {
      res.status = LPStatus::Infeasible;
      return res;
    }
    // Drive degenerate basic artificials out so phase 2 cannot revive them;
    // rows with no non-artificial pivot are identically zero and stay inert.
    for (int r = 0; r < m; ++r) {
      if (!isArtificial[static_cast<size_t>(tb.basis[static_cast<size_t>(r)])]) continue;
      for (int j = 0; j < tb.cols; ++j) {
        if (isArtificial[static_cast<size_t>(j)]) continue;
        if (!tb.t[static_cast<size_t>(r)][static_cast<size_t>(j)].isZero()) {
          tb.pivot(r, j);
          break;
        }
      }
    }
  }

  // Phase 2: original objective, artificials banned from entering.
  std::vector<Rat> cost(static_cast<size_t>(tb.cols), Rat(0));
  for (int j = 0; j < n; ++j) cost[static_cast<size_t>(j)] = c[static_cast<size_t>(j)];
  std::vector<char> banned = isArtificial;
  bool unbounded = false;
  while (tb.step(cost, banned, &unbounded)) {
  }
  if (unbounded) {
    res.status = LPStatus::Unbounded;
    return res;
  }

  res.status = LPStatus::Optimal;
  res.x.assign(static_cast<size_t>(n), Rat(0));
  for (int r = 0; r < m; ++r)
    if (tb.basis[static_cast<size_t>(r)] < n)
      res.x[static_cast<size_t>(tb.basis[static_cast<size_t>(r)])] = tb.rhs[static_cast<size_t>(r)];
  res.objective = Rat(0);
  for (int j = 0; j < n; ++j) res.objective += c[static_cast<size_t>(j)] * res.x[static_cast<size_t>(j)];
  // Duals: y = cost_B . B^{-1}; B^{-1} columns live under the initial identity.
  res.dual.assign(static_cast<size_t>(m), Rat(0));
  for (int i = 0; i < m; ++i) {
    Rat y(0);
    const int idCol = tb.identityCol[static_cast<size_t>(i)];
    for (int r = 0; r < m; ++r) {
      const int b = tb.basis[static_cast<size_t>(r)];
      if (b < n && !tb.t[static_cast<size_t>(r)][static_cast<size_t>(idCol)].isZero())
        y += c[static_cast<size_t>(b)] * tb.t[static_cast<size_t>(r)][static_cast<size_t>(idCol)];
    }
    res.dual[static_cast<size_t>(i)] = y;
  }
  return res;
}

bool lpFeasible(const std::vector<LinearConstraint>& rows, int nvars, std::vector<Rat>* point) {
  std::vector<Rat> zero(static_cast<size_t>(nvars), Rat(0));
  LPResult r = solveLP(zero, rows);
  if (r.status != LPStatus::Optimal) return false;
  if (point) *point = r.x;
  return true;
}

}  // namespace rvl
