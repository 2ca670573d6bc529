#include "rvl/mechanisms.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

namespace rvl {

void Lottery::validate() const {
  Rat total(0);
  for (const Rat& x : p) {
    if (x < Rat(0)) throw InvalidInput("lottery: negative probability");
    total += x;
  }
  if (total != Rat(1)) throw InvalidInput("lottery: probabilities must sum to 1");
}

MechanismSpec unilateral(int q) { return MechanismSpec{Unilateral{q}}; }
MechanismSpec duple(long long q) { return MechanismSpec{Duple{q}}; }
MechanismSpec randomMajority() { return MechanismSpec{RandomMajority{}}; }
MechanismSpec randomFavorite() { return MechanismSpec{RandomFavorite{}}; }
MechanismSpec randomCandidate() { return MechanismSpec{RandomCandidate{}}; }
MechanismSpec quadraticLottery() { return MechanismSpec{QuadraticLottery{}}; }

MechanismSpec mixture(const std::vector<std::pair<Rat, MechanismSpec>>& parts) {
  Mixture mix;
  for (const auto& [w, spec] : parts) {
    mix.weights.push_back(w);
    mix.parts.push_back(spec);
  }
  return MechanismSpec{std::move(mix)};
}

MechanismSpec symmetrized(const MechanismSpec& inner) {
  return MechanismSpec{Symmetrized{{inner}}};
}

std::array<Rat, 3> quadraticTriple(const Rat& alpha) {
  const Rat a2 = alpha * alpha;
  return {(Rat(4) - a2) / Rat(6), (Rat(1) + Rat(2) * alpha) / Rat(6),
          (Rat(1) - Rat(2) * alpha + a2) / Rat(6)};
}

namespace {

void checkMixtureWeights(const Mixture& mix) {
  if (mix.weights.size() != mix.parts.size() || mix.parts.empty())
    throw InvalidInput("mixture: weights and parts must align");
  Rat total(0);
  for (const Rat& w : mix.weights) {
    if (w < Rat(0)) throw InvalidInput("mixture: negative weight");
    total += w;
  }
  if (total != Rat(1)) throw InvalidInput("mixture: weights must sum to 1");
}

Lottery evalUnilateral(int q, const Profile& p) {
  const int m = p.m();
  if (q < 1 || q > m) throw InvalidInput("unilateral: need 1 <= q <= m");
  Lottery out;
  out.p.assign(static_cast<size_t>(m), Rat(0));
  const Rat share = Rat(1, static_cast<long long>(p.n()) * q);
  for (const Valuation& u : p.voters)
    for (int c : u.topCandidates(q)) out.p[static_cast<size_t>(c)] += share;
  return out;
}

Lottery evalDuple(long long q, const Profile& p) {
  const int m = p.m();
  const long long n = p.n();
  if (q < n / 2 + 1 || q > n + 1)
    throw InvalidInput("duple: need floor(n/2)+1 <= q <= n+1");
  Lottery out;
  out.p.assign(static_cast<size_t>(m), Rat(0));
  const Rat pairShare = Rat(2, static_cast<long long>(m) * (m - 1));
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      long long votesA = 0;
      for (const Valuation& u : p.voters)
        if (u.prefers(a, b)) ++votesA;
      const long long votesB = n - votesA;
      if (votesA >= q) {
        out.p[static_cast<size_t>(a)] += pairShare;
      } else if (votesB >= q) {
        out.p[static_cast<size_t>(b)] += pairShare;
      } else {
        out.p[static_cast<size_t>(a)] += pairShare / Rat(2);
        out.p[static_cast<size_t>(b)] += pairShare / Rat(2);
      }
    }
  }
  return out;
}

Lottery evalQuadratic(const Profile& p) {
  if (p.m() != 3) throw InvalidInput("quadratic-lottery: defined for m = 3 only");
  Lottery out;
  out.p.assign(3, Rat(0));
  const Rat voterShare(1, p.n());
  for (const Valuation& u : p.voters) {
    auto asc = u.rankingAscending();  // [third, second, top]
    const Rat& alpha = u.v[static_cast<size_t>(asc[1])];
    auto tri = quadraticTriple(alpha);
    out.p[static_cast<size_t>(asc[2])] += voterShare * tri[0];
    out.p[static_cast<size_t>(asc[1])] += voterShare * tri[1];
    out.p[static_cast<size_t>(asc[0])] += voterShare * tri[2];
  }
  return out;
}

std::vector<std::vector<int>> allPermutations(int m) {
  std::vector<int> sigma(static_cast<size_t>(m));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

}  // namespace

Profile permuteProfile(const Profile& p, const std::vector<int>& sigma) {
  Profile out = p;
  for (size_t i = 0; i < p.voters.size(); ++i)
    for (int c = 0; c < p.m(); ++c)
      out.voters[i].v[static_cast<size_t>(sigma[static_cast<size_t>(c)])] =
          p.voters[i].v[static_cast<size_t>(c)];
  return out;
}

Lottery evalMechanism(const MechanismSpec& spec, const Profile& p) {
  p.validate();
  const int m = p.m();
  return std::visit(
      [&](const auto& node) -> Lottery {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Unilateral>) {
          return evalUnilateral(node.q, p);
        } else if constexpr (std::is_same_v<T, Duple>) {
          return evalDuple(node.q, p);
        } else if constexpr (std::is_same_v<T, RandomMajority>) {
          return evalDuple(p.n() / 2 + 1, p);
        } else if constexpr (std::is_same_v<T, RandomFavorite>) {
          return evalUnilateral(1, p);
        } else if constexpr (std::is_same_v<T, RandomCandidate>) {
          return evalUnilateral(m, p);
        } else if constexpr (std::is_same_v<T, QuadraticLottery>) {
          return evalQuadratic(p);
        } else if constexpr (std::is_same_v<T, Mixture>) {
          checkMixtureWeights(node);
          Lottery out;
          out.p.assign(static_cast<size_t>(m), Rat(0));
          for (size_t i = 0; i < node.parts.size(); ++i) {
            if (node.weights[i].isZero()) continue;
            Lottery part = evalMechanism(node.parts[i], p);
            for (int c = 0; c < m; ++c)
              out.p[static_cast<size_t>(c)] += node.weights[i] * part.p[static_cast<size_t>(c)];
          }
          return out;
        } else {
          static_assert(std::is_same_v<T, Symmetrized>);
          if (node.inner.size() != 1) throw InvalidInput("symmetrized: needs one inner spec");
          Lottery out;
          out.p.assign(static_cast<size_t>(m), Rat(0));
          const auto perms = allPermutations(m);
          const Rat share(1, static_cast<long long>(perms.size()));
          for (const auto& sigma : perms) {
            Lottery run = evalMechanism(node.inner.front(), permuteProfile(p, sigma));
            // Candidate c was relabeled sigma[c] during the run.
            for (int c = 0; c < m; ++c)
              out.p[static_cast<size_t>(c)] +=
                  share * run.p[static_cast<size_t>(sigma[static_cast<size_t>(c)])];
          }
          return out;
        }
      },
      spec.node);
}

Rat ratioOnProfile(const MechanismSpec& spec, const Profile& p) {
  Lottery lot = evalMechanism(spec, p);
  auto w = welfare(p);
  Rat expected(0);
  for (int c = 0; c < p.m(); ++c)
    expected += lot.p[static_cast<size_t>(c)] * w[static_cast<size_t>(c)];
  return expected / *std::max_element(w.begin(), w.end());
}

AuditReport truthfulnessAudit(const std::function<Lottery(const Profile&)>& eval,
                              const Profile& p, int voter,
                              const std::vector<Valuation>& misreports) {
  p.validate();
  if (voter < 0 || voter >= p.n()) throw InvalidInput("audit: voter index out of range");
  const Valuation& truth = p.voters[static_cast<size_t>(voter)];
  auto expectedUtility = [&](const Lottery& lot) {
    Rat u(0);
    for (int c = 0; c < p.m(); ++c)
      u += lot.p[static_cast<size_t>(c)] * truth.v[static_cast<size_t>(c)];
    return u;
  };
  const Rat truthful = expectedUtility(eval(p));
  AuditReport report;
  for (const Valuation& lie : misreports) {
    Profile deviated = p;
    deviated.voters[static_cast<size_t>(voter)] = lie;
    deviated.validate();
    Rat gap = truthful - expectedUtility(eval(deviated));
    if (gap < Rat(0)) report.anyNegative = true;
    report.gaps.push_back(std::move(gap));
  }
  return report;
}

AuditReport truthfulnessAudit(const MechanismSpec& spec, const Profile& p, int voter,
                              const std::vector<Valuation>& misreports) {
  return truthfulnessAudit(
      [&](const Profile& q) { return evalMechanism(spec, q); }, p, voter, misreports);
}

}  // namespace rvl
