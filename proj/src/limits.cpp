#include "rvl/limits.hpp"

#include <algorithm>
#include <optional>

namespace rvl {

namespace {

// Flattened mixture atom with its accumulated weight.
struct Atom {
  enum Kind { kUnilateral, kDuple, kRandomMajority, kQuadratic } kind;
  long long q = 0;  // unilateral rank cap or duple threshold
  Rat weight;
};

void flattenSpec(const MechanismSpec& spec, const Rat& weight, int m,
                 std::vector<Atom>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Unilateral>) {
          if (node.q < 1 || node.q > m) throw InvalidInput("limitLottery: unilateral q out of range");
          out.push_back({Atom::kUnilateral, node.q, weight});
        } else if constexpr (std::is_same_v<T, RandomFavorite>) {
          out.push_back({Atom::kUnilateral, 1, weight});
        } else if constexpr (std::is_same_v<T, RandomCandidate>) {
          out.push_back({Atom::kUnilateral, m, weight});
        } else if constexpr (std::is_same_v<T, Duple>) {
          out.push_back({Atom::kDuple, node.q, weight});
        } else if constexpr (std::is_same_v<T, RandomMajority>) {
          out.push_back({Atom::kRandomMajority, 0, weight});
        } else if constexpr (std::is_same_v<T, QuadraticLottery>) {
          if (m != 3) throw InvalidInput("limitLottery: quadratic component needs m = 3");
          out.push_back({Atom::kQuadratic, 0, weight});
        } else if constexpr (std::is_same_v<T, Mixture>) {
          if (node.weights.size() != node.parts.size() || node.parts.empty())
            throw InvalidInput("mixture: weights and parts must align");
          Rat total(0);
          for (const Rat& w : node.weights) {
            if (w < Rat(0)) throw InvalidInput("mixture: negative weight");
            total += w;
          }
          if (total != Rat(1)) throw InvalidInput("mixture: weights must sum to 1");
          for (size_t i = 0; i < node.parts.size(); ++i)
            if (!node.weights[i].isZero())
              flattenSpec(node.parts[i], weight * node.weights[i], m, out);
        } else {
          static_assert(std::is_same_v<T, Symmetrized>);
          throw InvalidInput("limitLottery: symmetrized specs are not supported here");
        }
      },
      spec.node);
}

// (top, second, third) limit probabilities of the quadratic lottery on a
// type: the second value tends to 0 (split 1) or 1 (split 2).
std::array<Rat, 3> qLimitTriple(int split) {
  return split == 1 ? std::array<Rat, 3>{Rat(2, 3), Rat(1, 6), Rat(1, 6)}
                    : std::array<Rat, 3>{Rat(1, 2), Rat(1, 2), Rat(0)};
}

}  // namespace

std::vector<Rat> limitWelfare(const TypeProfile& tp) {
  tp.validate();
  const auto types = enumerateTypes(tp.m);
  std::vector<Rat> w(static_cast<size_t>(tp.m), Rat(0));
  for (size_t i = 0; i < types.size(); ++i) {
    if (tp.w[i].isZero()) continue;
    for (int c : types[i].highBlock()) w[static_cast<size_t>(c)] += tp.w[i];
  }
  return w;
}

Lottery limitLottery(const MechanismSpec& spec, const TypeProfile& tp, long long n) {
  tp.validate();
  const int m = tp.m;
  std::vector<Atom> atoms;
  flattenSpec(spec, Rat(1), m, atoms);

  const bool needsCounts = std::any_of(atoms.begin(), atoms.end(), [](const Atom& a) {
    return a.kind == Atom::kDuple || a.kind == Atom::kRandomMajority;
  });
  std::vector<Rat> counts;
  long long effN = tp.countsMode ? tp.n : n;
  if (needsCounts) {
    if (tp.countsMode) {
      counts = tp.w;
    } else if (n > 0) {
      for (const Rat& f : tp.w) {
        Rat c = f * Rat(n);
        if (!c.isInteger())
          throw InvalidInput("limitLottery: fractions do not scale to integer counts at n");
        counts.push_back(c);
      }
    } else {
      throw InvalidInput("limitLottery: duple component needs counts mode or explicit n");
    }
  }

  const auto types = enumerateTypes(m);
  const auto fracs = tp.fractions();
  Lottery out;
  out.p.assign(static_cast<size_t>(m), Rat(0));

  for (const Atom& atom : atoms) {
    switch (atom.kind) {
      case Atom::kUnilateral: {
        const Rat share = atom.weight / Rat(atom.q);
        for (size_t i = 0; i < types.size(); ++i) {
          if (fracs[i].isZero()) continue;
          const auto& r = types[i].ranking;
          for (long long j = 0; j < atom.q; ++j)
            out.p[static_cast<size_t>(r[r.size() - 1 - static_cast<size_t>(j)])] +=
                share * fracs[i];
        }
        break;
      }
      case Atom::kDuple:
      case Atom::kRandomMajority: {
        const long long q = atom.kind == Atom::kRandomMajority ? effN / 2 + 1 : atom.q;
        if (q < effN / 2 + 1 || q > effN + 1)
          throw InvalidInput("limitLottery: duple threshold out of range");
        const Rat pairShare = atom.weight * Rat(2, static_cast<long long>(m) * (m - 1));
        for (int a = 0; a < m; ++a) {
          for (int b = a + 1; b < m; ++b) {
            Rat votesA(0);
            for (size_t i = 0; i < types.size(); ++i)
              if (!counts[i].isZero() && types[i].prefers(a, b)) votesA += counts[i];
            const Rat votesB = Rat(effN) - votesA;
            if (votesA >= Rat(q)) {
              out.p[static_cast<size_t>(a)] += pairShare;
            } else if (votesB >= Rat(q)) {
              out.p[static_cast<size_t>(b)] += pairShare;
            } else {
              out.p[static_cast<size_t>(a)] += pairShare / Rat(2);
              out.p[static_cast<size_t>(b)] += pairShare / Rat(2);
            }
          }
        }
        break;
      }
      case Atom::kQuadratic: {
        for (size_t i = 0; i < types.size(); ++i) {
          if (fracs[i].isZero()) continue;
          const auto& r = types[i].ranking;
          auto tri = qLimitTriple(types[i].split);
          out.p[static_cast<size_t>(r[2])] += atom.weight * tri[0] * fracs[i];
          out.p[static_cast<size_t>(r[1])] += atom.weight * tri[1] * fracs[i];
          out.p[static_cast<size_t>(r[0])] += atom.weight * tri[2] * fracs[i];
        }
        break;
      }
    }
  }
  return out;
}

Rat gameEntry(const MechanismSpec& spec, const TypeProfile& tp, long long n) {
  Lottery lot = limitLottery(spec, tp, n);
  auto w = limitWelfare(tp);
  Rat expected(0);
  for (size_t c = 0; c < w.size(); ++c) expected += lot.p[c] * w[c];
  return expected / *std::max_element(w.begin(), w.end());
}

std::vector<std::pair<int, Rat>> entryConvergence(const MechanismSpec& spec,
                                                  const TypeProfile& tp,
                                                  const std::vector<int>& ks) {
  std::vector<std::pair<int, Rat>> out;
  for (int k : ks) {
    Profile p = realizeTypeProfile(tp, k);
    out.emplace_back(k, ratioOnProfile(spec, p));
  }
  return out;
}

Rat welfareQuotient(const MechanismSpec& spec, const Profile& p) {
  auto w = welfare(p);
  if (w.front().isZero())
    throw InvalidInput("welfareQuotient: reference candidate has zero welfare");
  Lottery lot = evalMechanism(spec, p);
  Rat expected(0);
  for (size_t c = 0; c < w.size(); ++c) expected += lot.p[c] * w[c];
  return expected / w.front();
}

namespace {

bool specContainsQuadratic(const MechanismSpec& spec) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, QuadraticLottery>) {
          return true;
        } else if constexpr (std::is_same_v<T, Mixture>) {
          for (size_t i = 0; i < node.parts.size(); ++i)
            if (!node.weights[i].isZero() && specContainsQuadratic(node.parts[i])) return true;
          return false;
        } else if constexpr (std::is_same_v<T, Symmetrized>) {
          return !node.inner.empty() && specContainsQuadratic(node.inner.front());
        } else {
          return false;
        }
      },
      spec.node);
}

// Grid levels of one voter, ascending, plus the candidate owning each level.
struct VoterLevels {
  std::vector<long> levels;
  std::vector<int> owner;
};

VoterLevels voterLevels(const Valuation& u, int k) {
  VoterLevels out;
  std::vector<std::pair<long, int>> lv;
  for (int c = 0; c < u.m(); ++c) {
    Rat scaled = u.v[static_cast<size_t>(c)] * Rat(k);
    if (!scaled.isInteger()) throw InvalidInput("pessimizeProfile: value off the 1/k grid");
    lv.emplace_back(scaled.num().get_si(), c);
  }
  std::sort(lv.begin(), lv.end());
  for (auto& [level, c] : lv) {
    out.levels.push_back(level);
    out.owner.push_back(c);
  }
  return out;
}

// Maximal runs of consecutive levels, as [first index, last index] into lv.
std::vector<std::pair<int, int>> maximalRuns(const std::vector<long>& levels) {
  std::vector<std::pair<int, int>> runs;
  int start = 0;
  for (int i = 1; i <= static_cast<int>(levels.size()); ++i) {
    if (i == static_cast<int>(levels.size()) ||
        levels[static_cast<size_t>(i)] != levels[static_cast<size_t>(i - 1)] + 1) {
      runs.emplace_back(start, i - 1);
      start = i;
    }
  }
  return runs;
}

Profile slideRun(const Profile& p, int voter, const VoterLevels& lv, int runFirst,
                 int runLast, long shift, int k) {
  Profile out = p;
  for (int i = runFirst; i <= runLast; ++i) {
    const int c = lv.owner[static_cast<size_t>(i)];
    out.voters[static_cast<size_t>(voter)].v[static_cast<size_t>(c)] =
        Rat(lv.levels[static_cast<size_t>(i)] + shift, k);
  }
  return out;
}

}  // namespace

PessimizeResult pessimizeProfile(const MechanismSpec& spec, const Profile& p, int k) {
  p.validate();
  if (k <= 2 * p.m()) throw InvalidInput("pessimizeProfile: need k > 2m");
  const bool quadratic = specContainsQuadratic(spec);
  if (quadratic && p.m() != 3)
    throw InvalidInput("pessimizeProfile: quadratic mixtures need m = 3");

  PessimizeResult res;
  res.profile = p;
  res.gStart = welfareQuotient(spec, p);
  Rat g = res.gStart;

  for (;;) {
    // First voter still short of quasi-combinatorial form.
    int voter = -1;
    for (int i = 0; i < res.profile.n(); ++i) {
      if (alternationNumber(res.profile.voters[static_cast<size_t>(i)], k) > 2) {
        voter = i;
        break;
      }
    }
    if (voter < 0) break;

    if (!quadratic) {
      // Ordinal path: slide the lowest interior run of the first unfinished
      // voter; the quotient is fractional-linear in the shift, so one
      // endpoint does not increase it.
      VoterLevels lv = voterLevels(res.profile.voters[static_cast<size_t>(voter)], k);
      auto runs = maximalRuns(lv.levels);
      auto [first, last] = runs[1];
      const long lo = lv.levels[static_cast<size_t>(runs[0].second)] -
                      lv.levels[static_cast<size_t>(first)] + 1;
      const long hi = lv.levels[static_cast<size_t>(runs[2].first)] -
                      lv.levels[static_cast<size_t>(last)] - 1;
      Profile pLo = slideRun(res.profile, voter, lv, first, last, lo, k);
      Profile pHi = slideRun(res.profile, voter, lv, first, last, hi, k);
      const Rat gLo = welfareQuotient(spec, pLo);
      const Rat gHi = welfareQuotient(spec, pHi);
      if (gLo > g && gHi > g)
        throw PessimizeObstruction("pessimizeProfile: ordinal slide increased the quotient");
      if (gLo <= gHi) {
        res.profile = std::move(pLo);
        g = gLo;
      } else {
        res.profile = std::move(pHi);
        g = gHi;
      }
      ++res.slides;
    } else {
      // Quadratic path (m = 3): move some voter's isolated middle value to an
      // endpoint adjacent to the 0-run or the 1-run, requiring g not to grow.
      std::optional<std::tuple<Rat, int, long>> best;  // (g, voter, target level)
      for (int i = 0; i < res.profile.n(); ++i) {
        const Valuation& u = res.profile.voters[static_cast<size_t>(i)];
        if (alternationNumber(u, k) <= 2) continue;
        VoterLevels lv = voterLevels(u, k);
        // Middle value is the single interior level; endpoints 1/k, (k-1)/k.
        for (long target : {1L, static_cast<long>(k - 1)}) {
          Profile cand = res.profile;
          cand.voters[static_cast<size_t>(i)].v[static_cast<size_t>(lv.owner[1])] =
              Rat(target, k);
          Rat gc = welfareQuotient(spec, cand);
          if (gc > g) continue;
          if (!best || gc < std::get<0>(*best))
            best = std::make_tuple(gc, i, target);
        }
      }
      if (!best)
        throw PessimizeObstruction(
            "pessimizeProfile: every quadratic endpoint slide increases the quotient "
            "(interior-minimum obstruction)");
      auto [gBest, i, target] = *best;
      VoterLevels lv = voterLevels(res.profile.voters[static_cast<size_t>(i)], k);
      res.profile.voters[static_cast<size_t>(i)].v[static_cast<size_t>(lv.owner[1])] =
          Rat(target, k);
      g = gBest;
      ++res.slides;
    }
  }

  res.gEnd = g;
  return res;
}

}  // namespace rvl
