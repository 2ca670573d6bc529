#include "rvl/qp.hpp"

#include <algorithm>
#include <optional>

#include "rvl/simplex.hpp"

namespace rvl {

Rat QuadraticProgram::objective(const std::vector<Rat>& x) const {
  Rat v = c0;
  for (int i = 0; i < d; ++i) {
    if (x[static_cast<size_t>(i)].isZero()) continue;
    v += c[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    for (int j = 0; j < d; ++j)
      if (!x[static_cast<size_t>(j)].isZero())
        v += x[static_cast<size_t>(i)] * Q[static_cast<size_t>(i)][static_cast<size_t>(j)] *
             x[static_cast<size_t>(j)];
  }
  return v;
}

namespace {

// Gaussian elimination over the rationals; returns one solution of M z = b,
// nullopt when inconsistent; *unique reports a full-rank column space.
std::optional<std::vector<Rat>> solveLinear(std::vector<std::vector<Rat>> M,
                                            std::vector<Rat> b, bool* unique) {
  const int rows = static_cast<int>(M.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(M.front().size());
  std::vector<int> pivotCol;
  int prow = 0;
  for (int col = 0; col < cols && prow < rows; ++col) {
    int sel = -1;
    for (int r = prow; r < rows; ++r)
      if (!M[static_cast<size_t>(r)][static_cast<size_t>(col)].isZero()) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(M[static_cast<size_t>(sel)], M[static_cast<size_t>(prow)]);
    std::swap(b[static_cast<size_t>(sel)], b[static_cast<size_t>(prow)]);
    const Rat inv = Rat(1) / M[static_cast<size_t>(prow)][static_cast<size_t>(col)];
    for (Rat& v : M[static_cast<size_t>(prow)]) v *= inv;
    b[static_cast<size_t>(prow)] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == prow) continue;
      const Rat f = M[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f.isZero()) continue;
      for (int j = col; j < cols; ++j)
        M[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            f * M[static_cast<size_t>(prow)][static_cast<size_t>(j)];
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(prow)];
    }
    pivotCol.push_back(col);
    ++prow;
  }
  for (int r = prow; r < rows; ++r)
    if (!b[static_cast<size_t>(r)].isZero()) return std::nullopt;
  *unique = (prow == cols);
  std::vector<Rat> z(static_cast<size_t>(cols), Rat(0));  // free variables at 0
  for (int r = 0; r < prow; ++r) {
    Rat v = b[static_cast<size_t>(r)];
    for (int j = pivotCol[static_cast<size_t>(r)] + 1; j < cols; ++j)
      if (!z[static_cast<size_t>(j)].isZero())
        v -= M[static_cast<size_t>(r)][static_cast<size_t>(j)] * z[static_cast<size_t>(j)];
    z[static_cast<size_t>(pivotCol[static_cast<size_t>(r)])] = v;
  }
  return z;
}

struct FaceOutcome {
  bool feasible = false;
  Rat value;
  std::vector<Rat> x;
};

// Minimal value of the quadratic restricted to one face: variables outside
// suppMask pinned to 0, the tightMask inequalities turned into equalities.
// Returns the stationary value on the face when a feasible stationary point
// exists; skips (infeasible result) otherwise -- the global minimizer is
// stationary in the relative interior of its own active-set face, which this
// enumeration also visits.
FaceOutcome examineFace(const QuadraticProgram& qp, uint32_t suppMask, uint32_t tightMask) {
  FaceOutcome out;
  std::vector<int> support;
  for (int i = 0; i < qp.d; ++i)
    if (suppMask & (1u << i)) support.push_back(i);
  const int S = static_cast<int>(support.size());

  // Active equalities: the program's plus the tight inequalities.
  std::vector<std::pair<std::vector<Rat>, Rat>> active = qp.eqs;
  for (size_t k = 0; k < qp.ineqs.size(); ++k)
    if (tightMask & (1u << k)) active.push_back(qp.ineqs[k]);
  const int E = static_cast<int>(active.size());

  // KKT system in (x_S, lambda): gradient rows then constraint rows.
  const int dim = S + E;
  std::vector<std::vector<Rat>> M(static_cast<size_t>(dim),
                                  std::vector<Rat>(static_cast<size_t>(dim), Rat(0)));
  std::vector<Rat> rhs(static_cast<size_t>(dim), Rat(0));
  for (int i = 0; i < S; ++i) {
    const int gi = support[static_cast<size_t>(i)];
    for (int j = 0; j < S; ++j) {
      const int gj = support[static_cast<size_t>(j)];
      M[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          Rat(2) * qp.Q[static_cast<size_t>(gi)][static_cast<size_t>(gj)];
    }
    for (int e = 0; e < E; ++e)
      M[static_cast<size_t>(i)][static_cast<size_t>(S + e)] =
          -active[static_cast<size_t>(e)].first[static_cast<size_t>(gi)];
    rhs[static_cast<size_t>(i)] = -qp.c[static_cast<size_t>(gi)];
  }
  for (int e = 0; e < E; ++e) {
    for (int j = 0; j < S; ++j)
      M[static_cast<size_t>(S + e)][static_cast<size_t>(j)] =
          active[static_cast<size_t>(e)].first[static_cast<size_t>(support[static_cast<size_t>(j)])];
    rhs[static_cast<size_t>(S + e)] = active[static_cast<size_t>(e)].second;
  }

  bool unique = false;
  auto sol = solveLinear(M, rhs, &unique);
  if (!sol) return out;  // no stationary point on this face's affine hull

  auto assemble = [&](const std::vector<Rat>& xs) {
    std::vector<Rat> x(static_cast<size_t>(qp.d), Rat(0));
    for (int i = 0; i < S; ++i)
      x[static_cast<size_t>(support[static_cast<size_t>(i)])] = xs[static_cast<size_t>(i)];
    return x;
  };
  auto feasibleOnFace = [&](const std::vector<Rat>& x) {
    for (int i = 0; i < S; ++i)
      if (x[static_cast<size_t>(support[static_cast<size_t>(i)])] < Rat(0)) return false;
    for (size_t k = 0; k < qp.ineqs.size(); ++k) {
      if (tightMask & (1u << k)) continue;
      Rat dot(0);
      for (int i = 0; i < qp.d; ++i)
        if (!x[static_cast<size_t>(i)].isZero())
          dot += qp.ineqs[k].first[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
      if (dot < qp.ineqs[k].second) return false;
    }
    return true;
  };

  if (unique) {
    std::vector<Rat> x = assemble(std::vector<Rat>(sol->begin(), sol->begin() + S));
    if (!feasibleOnFace(x)) return out;
    out.feasible = true;
    out.x = std::move(x);
    out.value = qp.objective(out.x);
    return out;
  }

  // Degenerate stationary set: the objective is constant on it, so any
  // feasible point will do.  Feasibility LP over (x_S >= 0, lambda split into
  // two nonnegative halves), stationarity and activity as equality rows,
  // inactive inequalities as >= rows.
  const int nv = S + 2 * E;
  std::vector<LinearConstraint> lpRows;
  for (int r = 0; r < dim; ++r) {
    LinearConstraint row;
    row.a.assign(static_cast<size_t>(nv), Rat(0));
    for (int j = 0; j < S; ++j) row.a[static_cast<size_t>(j)] = M[static_cast<size_t>(r)][static_cast<size_t>(j)];
    for (int e = 0; e < E; ++e) {
      row.a[static_cast<size_t>(S + e)] = M[static_cast<size_t>(r)][static_cast<size_t>(S + e)];
      row.a[static_cast<size_t>(S + E + e)] = -M[static_cast<size_t>(r)][static_cast<size_t>(S + e)];
    }
    row.rel = Rel::EQ;
    row.rhs = rhs[static_cast<size_t>(r)];
    lpRows.push_back(std::move(row));
  }
  for (size_t k = 0; k < qp.ineqs.size(); ++k) {
    if (tightMask & (1u << k)) continue;
    LinearConstraint row;
    row.a.assign(static_cast<size_t>(nv), Rat(0));
    for (int j = 0; j < S; ++j)
      row.a[static_cast<size_t>(j)] =
          qp.ineqs[k].first[static_cast<size_t>(support[static_cast<size_t>(j)])];
    row.rel = Rel::GE;
    row.rhs = qp.ineqs[k].second;
    lpRows.push_back(std::move(row));
  }
  std::vector<Rat> point;
  if (!lpFeasible(lpRows, nv, &point)) return out;
  std::vector<Rat> x = assemble(std::vector<Rat>(point.begin(), point.begin() + S));
  out.feasible = true;
  out.x = std::move(x);
  out.value = qp.objective(out.x);
  return out;
}

struct BestFace {
  bool found = false;
  Rat value;
  std::vector<Rat> x;
  uint32_t zeroMask = 0;
  uint32_t tightMask = 0;

  // Order: smaller value first, then smaller (zeroMask, tightMask).
  bool better(const Rat& v, uint32_t zm, uint32_t tm) const {
    if (!found) return true;
    if (v != value) return v < value;
    if (zm != zeroMask) return zm < zeroMask;
    return tm < tightMask;
  }
};

QPCertificate minimizeQPImpl(const QuadraticProgram& qp, bool parallel) {
  if (qp.d < 1 || qp.d > 20) throw InvalidInput("minimizeQP: dimension out of range");
  if (static_cast<int>(qp.Q.size()) != qp.d || static_cast<int>(qp.c.size()) != qp.d)
    throw InvalidInput("minimizeQP: shape mismatch");
  for (int i = 0; i < qp.d; ++i)
    for (int j = 0; j < qp.d; ++j)
      if (qp.Q[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
          qp.Q[static_cast<size_t>(j)][static_cast<size_t>(i)])
        throw InvalidInput("minimizeQP: Q must be symmetric");
  if (qp.ineqs.size() > 12) throw InvalidInput("minimizeQP: too many inequalities");

  const uint32_t suppEnd = 1u << qp.d;
  const uint32_t tightEnd = 1u << qp.ineqs.size();
  const long long totalFaces =
      static_cast<long long>(suppEnd - 1) * static_cast<long long>(tightEnd);

  BestFace best;
  long long examined = 0;

#pragma omp parallel if (parallel)
  {
    BestFace local;
    long long localExamined = 0;
#pragma omp for schedule(dynamic, 64) nowait
    for (int64_t supp = 1; supp < static_cast<int64_t>(suppEnd); ++supp) {
      for (uint32_t tight = 0; tight < tightEnd; ++tight) {
        ++localExamined;
        FaceOutcome fo = examineFace(qp, static_cast<uint32_t>(supp), tight);
        if (!fo.feasible) continue;
        const uint32_t zm = (suppEnd - 1) & ~static_cast<uint32_t>(supp);
        if (local.better(fo.value, zm, tight)) {
          local.found = true;
          local.value = fo.value;
          local.x = std::move(fo.x);
          local.zeroMask = zm;
          local.tightMask = tight;
        }
      }
    }
#pragma omp critical(rvl_qp_merge)
    {
      examined += localExamined;
      if (local.found && best.better(local.value, local.zeroMask, local.tightMask)) {
        best.found = true;
        best.value = local.value;
        best.x = std::move(local.x);
        best.zeroMask = local.zeroMask;
        best.tightMask = local.tightMask;
      }
    }
  }

  if (!best.found) throw InfeasibleProgram("minimizeQP: empty feasible region");
  (void)totalFaces;

  QPCertificate cert;
  cert.minValue = best.value;
  cert.argmin = best.x;
  cert.zeroMask = best.zeroMask;
  cert.tightMask = best.tightMask;
  cert.facesExamined = examined;
  return cert;
}

}  // namespace

QPCertificate minimizeQP(const QuadraticProgram& qp, bool parallel) {
  return minimizeQPImpl(qp, parallel);
}

QPCertificate minimizeQPSerial(const QuadraticProgram& qp) {
  return minimizeQPImpl(qp, false);
}

namespace {

// Linear coefficient rows over the 12 m=3 types: W[c][t] = 1 iff t's high
// block contains c; P\[c][t] from limitLottery on the unit type profile.
struct CoeffRows {
  std::vector<std::vector<Rat>> w;  // 3 x 12
};

CoeffRows welfareRows() {
  const auto types = enumerateTypes(3);
  CoeffRows rows;
  rows.w.assign(3, std::vector<Rat>(types.size(), Rat(0)));
  for (size_t t = 0; t < types.size(); ++t)
    for (int c : types[t].highBlock()) rows.w[static_cast<size_t>(c)][t] = Rat(1);
  return rows;
}

std::vector<std::vector<Rat>> lotteryRows(const MechanismSpec& atom) {
  const auto types = enumerateTypes(3);
  std::vector<std::vector<Rat>> p(3, std::vector<Rat>(types.size(), Rat(0)));
  for (size_t t = 0; t < types.size(); ++t) {
    TypeProfile unit;
    unit.m = 3;
    unit.countsMode = false;
    unit.w.assign(types.size(), Rat(0));
    unit.w[t] = Rat(1);
    Lottery lot = limitLottery(atom, unit);
    for (int c = 0; c < 3; ++c) p[static_cast<size_t>(c)][t] = lot.p[static_cast<size_t>(c)];
  }
  return p;
}

// Base ratio program: objective sum_c (P_c . x)(W_c . x) + (linExtra . x)
// - r (W_A . x) over the simplex; optional w_A-maximal half-spaces.
QuadraticProgram ratioProgram(const std::vector<std::vector<Rat>>& P,
                              const std::vector<Rat>& linExtra, const Rat& r,
                              bool referenceMax) {
  const int d = 12;
  CoeffRows wr = welfareRows();
  QuadraticProgram qp;
  qp.d = d;
  qp.Q.assign(static_cast<size_t>(d), std::vector<Rat>(static_cast<size_t>(d), Rat(0)));
  qp.c.assign(static_cast<size_t>(d), Rat(0));
  qp.c0 = Rat(0);
  for (int cnd = 0; cnd < 3; ++cnd) {
    const auto& pc = P[static_cast<size_t>(cnd)];
    const auto& wc = wr.w[static_cast<size_t>(cnd)];
    for (int i = 0; i < d; ++i) {
      if (pc[static_cast<size_t>(i)].isZero() && wc[static_cast<size_t>(i)].isZero()) continue;
      for (int j = 0; j < d; ++j) {
        // Symmetrized contribution of (P_c . x)(W_c . x).
        Rat v = pc[static_cast<size_t>(i)] * wc[static_cast<size_t>(j)] +
                pc[static_cast<size_t>(j)] * wc[static_cast<size_t>(i)];
        if (!v.isZero())
          qp.Q[static_cast<size_t>(i)][static_cast<size_t>(j)] += v / Rat(2);
      }
    }
  }
  for (int i = 0; i < d; ++i)
    qp.c[static_cast<size_t>(i)] =
        linExtra[static_cast<size_t>(i)] - r * wr.w[0][static_cast<size_t>(i)];
  qp.eqs.push_back({std::vector<Rat>(static_cast<size_t>(d), Rat(1)), Rat(1)});
  if (referenceMax) {
    for (int other = 1; other < 3; ++other) {
      std::vector<Rat> a(static_cast<size_t>(d), Rat(0));
      for (int i = 0; i < d; ++i)
        a[static_cast<size_t>(i)] =
            wr.w[0][static_cast<size_t>(i)] - wr.w[static_cast<size_t>(other)][static_cast<size_t>(i)];
      qp.ineqs.push_back({std::move(a), Rat(0)});
    }
  }
  return qp;
}

std::vector<std::vector<Rat>> combinedUnilateralRows(const std::array<Rat, 3>& uWeights) {
  std::vector<std::vector<Rat>> P(3, std::vector<Rat>(12, Rat(0)));
  for (int q = 1; q <= 3; ++q) {
    if (uWeights[static_cast<size_t>(q - 1)].isZero()) continue;
    auto rows = lotteryRows(unilateral(q));
    for (int c = 0; c < 3; ++c)
      for (int t = 0; t < 12; ++t)
        P[static_cast<size_t>(c)][static_cast<size_t>(t)] +=
            uWeights[static_cast<size_t>(q - 1)] * rows[static_cast<size_t>(c)][static_cast<size_t>(t)];
  }
  return P;
}

}  // namespace

QuadraticProgram buildOrdinalRatioQP(const std::array<Rat, 3>& uWeights, const Rat& r,
                                     bool referenceMax) {
  Rat total = uWeights[0] + uWeights[1] + uWeights[2];
  if (total != Rat(1)) throw InvalidInput("buildOrdinalRatioQP: weights must sum to 1");
  for (const Rat& w : uWeights)
    if (w < Rat(0)) throw InvalidInput("buildOrdinalRatioQP: negative weight");
  return ratioProgram(combinedUnilateralRows(uWeights), std::vector<Rat>(12, Rat(0)), r,
                      referenceMax);
}

std::vector<MajorityCaseQP> buildMajorityCaseQPs(const std::array<Rat, 3>& uWeights,
                                                 const Rat& dWeight, const Rat& r) {
  Rat total = uWeights[0] + uWeights[1] + uWeights[2] + dWeight;
  if (total != Rat(1)) throw InvalidInput("buildMajorityCaseQPs: weights must sum to 1");
  if (dWeight < Rat(0)) throw InvalidInput("buildMajorityCaseQPs: negative duple weight");
  for (const Rat& w : uWeights)
    if (w < Rat(0)) throw InvalidInput("buildMajorityCaseQPs: negative weight");

  const auto types = enumerateTypes(3);
  auto P = combinedUnilateralRows(uWeights);
  CoeffRows wr = welfareRows();

  // Majority indicator per pair: fraction of voters preferring `first`.
  const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  std::array<std::vector<Rat>, 3> majority;
  for (int pi = 0; pi < 3; ++pi) {
    majority[static_cast<size_t>(pi)].assign(types.size(), Rat(0));
    for (size_t t = 0; t < types.size(); ++t)
      if (types[t].prefers(pairs[static_cast<size_t>(pi)].first,
                           pairs[static_cast<size_t>(pi)].second))
        majority[static_cast<size_t>(pi)][t] = Rat(1);
  }
  static const char* kPairName[3] = {"AB", "AC", "BC"};
  static const char* kOutName[3] = {">", "<", "="};

  std::vector<MajorityCaseQP> cases;
  std::array<int, 3> outcome{};
  for (outcome[0] = 0; outcome[0] < 3; ++outcome[0]) {
    for (outcome[1] = 0; outcome[1] < 3; ++outcome[1]) {
      for (outcome[2] = 0; outcome[2] < 3; ++outcome[2]) {
        // Random-majority election probabilities: uniform pair, winner takes
        // the pair's slot, ties split it.
        std::array<Rat, 3> q{Rat(0), Rat(0), Rat(0)};
        for (int pi = 0; pi < 3; ++pi) {
          auto [a, b] = pairs[static_cast<size_t>(pi)];
          switch (outcome[static_cast<size_t>(pi)]) {
            case 0: q[static_cast<size_t>(a)] += Rat(1, 3); break;
            case 1: q[static_cast<size_t>(b)] += Rat(1, 3); break;
            case 2:
              q[static_cast<size_t>(a)] += Rat(1, 6);
              q[static_cast<size_t>(b)] += Rat(1, 6);
              break;
          }
        }
        // dWeight * q_c * (W_c . x) is linear in x.
        std::vector<Rat> linExtra(12, Rat(0));
        for (int cnd = 0; cnd < 3; ++cnd)
          for (int t = 0; t < 12; ++t)
            linExtra[static_cast<size_t>(t)] +=
                dWeight * q[static_cast<size_t>(cnd)] * wr.w[static_cast<size_t>(cnd)][static_cast<size_t>(t)];

        MajorityCaseQP mc;
        mc.qp = ratioProgram(P, linExtra, r, /*referenceMax=*/false);
        mc.outcome = outcome;
        mc.rmWinProb = q;
        std::string label;
        for (int pi = 0; pi < 3; ++pi) {
          if (pi) label += " ";
          label += kPairName[pi];
          label += kOutName[outcome[static_cast<size_t>(pi)]];
        }
        mc.label = label;
        // Majority constraints, ties exact and wins weakened to >= (a weakly
        // larger feasible set can only lower the certified minimum).
        for (int pi = 0; pi < 3; ++pi) {
          const auto& ind = majority[static_cast<size_t>(pi)];
          switch (outcome[static_cast<size_t>(pi)]) {
            case 0:
              mc.qp.ineqs.push_back({ind, Rat(1, 2)});
              break;
            case 1: {
              std::vector<Rat> neg(ind.size());
              for (size_t t = 0; t < ind.size(); ++t) neg[t] = -ind[t];
              mc.qp.ineqs.push_back({std::move(neg), Rat(-1, 2)});
              break;
            }
            case 2:
              mc.qp.eqs.push_back({ind, Rat(1, 2)});
              break;
          }
        }
        cases.push_back(std::move(mc));
      }
    }
  }
  return cases;
}

QuadraticProgram buildQuadraticLotteryQP(const Rat& qWeight, const Rat& rfWeight,
                                         const Rat& r, bool referenceMax) {
  if (qWeight + rfWeight != Rat(1))
    throw InvalidInput("buildQuadraticLotteryQP: weights must sum to 1");
  if (qWeight < Rat(0) || rfWeight < Rat(0))
    throw InvalidInput("buildQuadraticLotteryQP: negative weight");
  std::vector<std::vector<Rat>> P(3, std::vector<Rat>(12, Rat(0)));
  if (!qWeight.isZero()) {
    auto rows = lotteryRows(quadraticLottery());
    for (int c = 0; c < 3; ++c)
      for (int t = 0; t < 12; ++t)
        P[static_cast<size_t>(c)][static_cast<size_t>(t)] +=
            qWeight * rows[static_cast<size_t>(c)][static_cast<size_t>(t)];
  }
  if (!rfWeight.isZero()) {
    auto rows = lotteryRows(unilateral(1));
    for (int c = 0; c < 3; ++c)
      for (int t = 0; t < 12; ++t)
        P[static_cast<size_t>(c)][static_cast<size_t>(t)] +=
            rfWeight * rows[static_cast<size_t>(c)][static_cast<size_t>(t)];
  }
  return ratioProgram(P, std::vector<Rat>(12, Rat(0)), r, referenceMax);
}

GridScan scanGridLowerBound(const QuadraticProgram& qp, int resolution, const Rat& minValue) {
  if (resolution < 1) throw InvalidInput("scanGridLowerBound: resolution must be >= 1");
  const int d = qp.d;
  const long long N = resolution;

  // Scale the objective to integers: f(y/N) = (y.Ay + N b.y + N^2 e) / (D N^2).
  mpz_class D(1);
  auto foldDen = [&D](const Rat& v) { D = lcm(D, v.den()); };
  for (const auto& row : qp.Q)
    for (const Rat& v : row) foldDen(v);
  for (const Rat& v : qp.c) foldDen(v);
  foldDen(qp.c0);

  auto scaled = [&](const Rat& v) -> long long {
    mpz_class z = v.num() * (D / v.den());
    if (!z.fits_slong_p()) throw ResourceLimit("scanGridLowerBound: coefficient overflow");
    return z.get_si();
  };
  std::vector<std::vector<long long>> A(static_cast<size_t>(d),
                                        std::vector<long long>(static_cast<size_t>(d), 0));
  std::vector<long long> b(static_cast<size_t>(d), 0);
  for (int i = 0; i < d; ++i) {
    b[static_cast<size_t>(i)] = scaled(qp.c[static_cast<size_t>(i)]) * N;
    for (int j = 0; j < d; ++j)
      A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          scaled(qp.Q[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  }
  const long long e0 = scaled(qp.c0) * N * N;

  // Constraints scaled to integers over y (coefficients here are at worst
  // halves, so the lcm stays tiny).
  struct IntRow {
    std::vector<long long> a;
    long long rhs;
    bool equality;
  };
  std::vector<IntRow> rows;
  auto addRow = [&](const std::pair<std::vector<Rat>, Rat>& src, bool equality) {
    mpz_class dd(1);
    for (const Rat& v : src.first) dd = lcm(dd, v.den());
    dd = lcm(dd, src.second.den());
    IntRow row;
    row.equality = equality;
    for (const Rat& v : src.first) {
      mpz_class z = v.num() * (dd / v.den());
      row.a.push_back(z.get_si());
    }
    mpz_class rr = src.second.num() * (dd / src.second.den());
    row.rhs = rr.get_si() * N;
    rows.push_back(std::move(row));
  };
  for (const auto& eq : qp.eqs) addRow(eq, true);
  for (const auto& iq : qp.ineqs) addRow(iq, false);

  // Violation threshold: integer value V < minValue * D * N^2  <=>  V <= C-1
  // with C = ceil(minValue * D * N^2); C fits easily in the V range.
  const mpz_class NN(std::to_string(N * N));
  Rat thresh = minValue * Rat(D * NN, mpz_class(1));
  mpz_class ceilT;
  mpz_cdiv_q(ceilT.get_mpz_t(), thresh.num().get_mpz_t(), thresh.den().get_mpz_t());
  if (mpz_sizeinbase(ceilT.get_mpz_t(), 2) > 100)
    throw ResourceLimit("scanGridLowerBound: threshold exceeds integer range");
  __int128 limit = 0;
  {
    // Convert |ceilT| (at most ~2^100) to __int128 via two 64-bit halves.
    mpz_class absT = abs(ceilT);
    mpz_class hi = absT >> 64;
    mpz_class lo = absT - (hi << 64);
    limit = (static_cast<__int128>(hi.get_ui()) << 64) + static_cast<__int128>(lo.get_ui());
    if (sgn(ceilT) < 0) limit = -limit;
    limit -= 1;  // violation <=> V <= limit
  }

  GridScan scan;
  bool haveMin = false;
  __int128 minV = 0;

#pragma omp parallel
  {
    std::vector<long long> y(static_cast<size_t>(d), 0);
    long long localPoints = 0, localViol = 0;
    __int128 localMin = 0;
    bool localHave = false;

    // Recursive composition enumeration, parallelized over y[0].
    auto leaf = [&](const std::vector<long long>& yy) {
      for (const IntRow& row : rows) {
        long long dot = 0;
        for (int i = 0; i < d; ++i) dot += row.a[static_cast<size_t>(i)] * yy[static_cast<size_t>(i)];
        if (row.equality ? dot != row.rhs : dot < row.rhs) return;
      }
      __int128 V = e0;
      for (int i = 0; i < d; ++i) {
        const long long yi = yy[static_cast<size_t>(i)];
        if (yi == 0) continue;
        V += static_cast<__int128>(b[static_cast<size_t>(i)]) * yi;
        long long rowdot = 0;
        const auto& Ai = A[static_cast<size_t>(i)];
        for (int j = 0; j < d; ++j) rowdot += Ai[static_cast<size_t>(j)] * yy[static_cast<size_t>(j)];
        V += static_cast<__int128>(rowdot) * yi;
      }
      ++localPoints;
      if (V <= limit) ++localViol;
      if (!localHave || V < localMin) {
        localMin = V;
        localHave = true;
      }
    };
    auto rec = [&](auto&& self, int slot, long long remaining) -> void {
      if (slot + 1 == d) {
        y[static_cast<size_t>(slot)] = remaining;
        leaf(y);
        return;
      }
      for (long long v = 0; v <= remaining; ++v) {
        y[static_cast<size_t>(slot)] = v;
        self(self, slot + 1, remaining - v);
      }
    };

#pragma omp for schedule(dynamic) nowait
    for (long long y0 = 0; y0 <= N; ++y0) {
      y[0] = y0;
      if (d == 1) {
        if (y0 == N) leaf(y);
      } else {
        rec(rec, 1, N - y0);
      }
    }

#pragma omp critical(rvl_grid_merge)
    {
      scan.pointsVisited += localPoints;
      scan.violations += localViol;
      if (localHave && (!haveMin || localMin < minV)) {
        minV = localMin;
        haveMin = true;
      }
    }
  }

  if (haveMin) {
    // __int128 -> mpz via decimal text.
    const bool neg = minV < 0;
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-minV)
                                : static_cast<unsigned __int128>(minV);
    std::string digits;
    do {
      digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
      mag /= 10;
    } while (mag != 0);
    if (neg) digits.insert(digits.begin(), '-');
    scan.gridMin = Rat(mpz_class(digits), D * NN);
  }
  return scan;
}

BracketResult bracketAsymptoticRatio(
    const std::function<QuadraticProgram(const Rat&, bool)>& builder, const Rat& lo,
    const Rat& hi, const Rat& tol) {
  if (!(lo < hi) || tol <= Rat(0)) throw InvalidBracket("bracketAsymptoticRatio: bad interval");
  if (minimizeQP(builder(lo, false)).minValue < Rat(0))
    throw InvalidBracket("bracketAsymptoticRatio: lower program negative at lo");
  if (minimizeQP(builder(hi, true)).minValue >= Rat(0))
    throw InvalidBracket("bracketAsymptoticRatio: upper program nonnegative at hi");

  BracketResult res;
  res.lo = lo;
  res.hi = hi;
  while (res.hi - res.lo > tol) {
    const Rat mid = (res.lo + res.hi) / Rat(2);
    if (minimizeQP(builder(mid, false)).minValue >= Rat(0)) {
      res.lo = mid;
    } else if (minimizeQP(builder(mid, true)).minValue < Rat(0)) {
      res.hi = mid;
    } else {
      throw InvalidBracket("bracketAsymptoticRatio: program signs disagree at midpoint");
    }
    ++res.iterations;
  }
  return res;
}

}  // namespace rvl
