#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "rvl/catalog.hpp"
#include "rvl/limits.hpp"

using namespace rvl;

namespace {

constexpr int A = 0, B = 1, C = 2;

Valuation val(std::vector<Rat> v) { return Valuation{std::move(v)}; }

TypeProfile fractionsProfile(std::vector<std::pair<int, Rat>> parts) {
  TypeProfile tp;
  tp.m = 3;
  tp.countsMode = false;
  tp.w.assign(12, Rat(0));
  for (auto& [idx, f] : parts) tp.w[static_cast<size_t>(idx)] = f;
  tp.validate();
  return tp;
}

}  // namespace

TEST_CASE("limit welfare counts high-block memberships") {
  // 14398 x2 (high {A}) + 2185 x5 (high {A,B}) + 6417 x11 (high {B,C}).
  const TypeProfile tp =
      makeCounts(3, 23000, {{1, 14398}, {4, 2185}, {10, 6417}});
  CHECK(limitWelfare(tp) == std::vector<Rat>{Rat(16583), Rat(8602), Rat(6417)});
  // Fractions mode: half x1 (high {A,B}) + half x11 (high {B,C}).
  const TypeProfile frac = fractionsProfile({{0, Rat(1, 2)}, {10, Rat(1, 2)}});
  CHECK(limitWelfare(frac) == std::vector<Rat>{Rat(1, 2), Rat(1), Rat(1, 2)});
}

TEST_CASE("limit lotteries for the ordinal families") {
  // Tops: x2 -> A, x5 -> B, x11 -> C.
  const TypeProfile tp =
      makeCounts(3, 23000, {{1, 14398}, {4, 2185}, {10, 6417}});
  CHECK(limitLottery(unilateral(1), tp).p ==
        std::vector<Rat>{Rat(14398, 23000), Rat(2185, 23000), Rat(6417, 23000)});
  CHECK(limitLottery(unilateral(3), tp).p ==
        std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
  // Pairwise: A beats B 14398-8602, A beats C 16583-6417, B beats C 16583-6417.
  CHECK(limitLottery(randomMajority(), tp).p ==
        std::vector<Rat>{Rat(2, 3), Rat(1, 3), Rat(0)});
  // The threshold n+1 can never fire, leaving the pure coin.
  CHECK(limitLottery(duple(23001), tp).p ==
        std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
  // Duple needs counts, or fractions plus an explicit n.
  const TypeProfile frac = fractionsProfile({{0, Rat(1, 2)}, {10, Rat(1, 2)}});
  CHECK_THROWS_AS(limitLottery(randomMajority(), frac), InvalidInput);
  CHECK(limitLottery(randomMajority(), frac, 23000).p ==
        limitLottery(randomMajority(), thm6Catalogue()[2]).p);
  CHECK_THROWS_AS(limitLottery(symmetrized(randomFavorite()), tp), InvalidInput);
}

TEST_CASE("game entries for the published five-column catalogue") {
  const auto cat = thm6Catalogue();
  REQUIRE(cat.size() == 5);
  const std::vector<std::vector<Rat>> uRows = {
      {Rat(564717, 721000), Rat(229, 322), Rat(1, 2), Rat(11, 15), Rat(13, 15)},
      {Rat(485841, 721000), Rat(461, 644), Rat(3, 4), Rat(3, 5), Rat(13, 30)},
      {Rat(458, 721), Rat(31, 42), Rat(2, 3), Rat(2, 3), Rat(5, 9)},
  };
  for (int q = 1; q <= 3; ++q)
    for (size_t j = 0; j < 5; ++j) {
      CAPTURE(q);
      CAPTURE(j);
      CHECK(gameEntry(unilateral(q), cat[j]) ==
            uRows[static_cast<size_t>(q) - 1][j]);
    }
  const std::vector<Rat> d11501 = {Rat(1816, 2163), Rat(5, 7), Rat(2, 3),
                                   Rat(5, 9), Rat(2, 3)};
  const std::vector<Rat> d23000 = {Rat(458, 721), Rat(31, 42), Rat(2, 3),
                                   Rat(2, 3), Rat(5, 9)};
  for (size_t j = 0; j < 5; ++j) {
    CHECK(gameEntry(duple(11501), cat[j]) == d11501[j]);
    CHECK(gameEntry(duple(23000), cat[j]) == d23000[j]);
  }
  CHECK(gameEntry(randomMajority(), cat[0]) == Rat(1816, 2163));
}

TEST_CASE("quadratic lottery limits depend only on the split") {
  // Split-1 types put the second value at 0, split-2 types at 1.
  const TypeProfile split1 = makeCounts(3, 1, {{1, 1}});   // x2: A > B > C
  CHECK(limitLottery(quadraticLottery(), split1).p ==
        std::vector<Rat>{Rat(2, 3), Rat(1, 6), Rat(1, 6)});
  CHECK(gameEntry(quadraticLottery(), split1) == Rat(2, 3));
  const TypeProfile split2 = makeCounts(3, 1, {{4, 1}});   // x5: B top, A second
  CHECK(limitLottery(quadraticLottery(), split2).p ==
        std::vector<Rat>{Rat(1, 2), Rat(1, 2), Rat(0)});
  // Mixtures pass through linearly.
  const MechanismSpec mix =
      mixture({{Rat(71, 100), quadraticLottery()}, {Rat(29, 100), randomFavorite()}});
  CHECK(limitLottery(mix, split1).p ==
        std::vector<Rat>{Rat(71, 100) * Rat(2, 3) + Rat(29, 100), Rat(71, 600),
                         Rat(71, 600)});
}

TEST_CASE("finite ratios approach the limit entry") {
  const TypeProfile tp = makeCounts(3, 5, {{4, 2}, {8, 3}});  // x5:2, x9:3
  CHECK(gameEntry(unilateral(1), tp) == Rat(13, 25));
  CHECK(gameEntry(duple(3), tp) == Rat(11, 15));
  for (const MechanismSpec& spec : {unilateral(1), duple(3)}) {
    const Rat limit = gameEntry(spec, tp);
    const auto conv = entryConvergence(spec, tp, {100, 10000});
    REQUIRE(conv.size() == 2);
    CHECK(conv[0].first == 100);
    CHECK(conv[1].first == 10000);
    for (const auto& [k, r] : conv) CHECK((r - limit).abs() <= Rat(30, k));
    CHECK((conv[1].second - limit).abs() <= (conv[0].second - limit).abs());
  }
}

TEST_CASE("welfare quotient uses candidate 0 as the fixed reference") {
  Profile p;
  p.voters = {val({Rat(1), Rat(1, 2), Rat(0)}), val({Rat(0), Rat(1), Rat(1, 4)})};
  // welfare (1, 3/2, 1/4); U3 elects uniformly: E = 11/12, reference 1.
  CHECK(welfareQuotient(unilateral(3), p) == Rat(11, 12));
  const MechanismSpec mix =
      mixture({{Rat(3, 4), unilateral(3)}, {Rat(1, 4), unilateral(1)}});
  // U1 lottery (1/2, 1/2, 0): E = 5/4;  3/4 * 11/12 + 1/4 * 5/4 = 1.
  CHECK(welfareQuotient(mix, p) == Rat(1));
}

TEST_CASE("ordinal pessimizer slides both middles toward the low block") {
  Profile p;
  p.voters = {val({Rat(1), Rat(1, 2), Rat(0)}), val({Rat(0), Rat(1), Rat(1, 4)})};
  const MechanismSpec mix =
      mixture({{Rat(3, 4), unilateral(3)}, {Rat(1, 4), unilateral(1)}});
  const PessimizeResult res = pessimizeProfile(mix, p, 20);
  CHECK(res.gStart == Rat(1));
  CHECK(res.gEnd == Rat(25, 32));
  CHECK(res.slides == 2);
  for (const Valuation& u : res.profile.voters) CHECK(alternationNumber(u, 20) == 2);
  CHECK(res.gEnd == welfareQuotient(mix, res.profile));
}

TEST_CASE("pessimizer never increases the quotient on random ordinal inputs") {
  std::mt19937_64 rng(31415);
  const int k = 12;
  const MechanismSpec spec =
      mixture({{Rat(1, 2), randomMajority()}, {Rat(1, 2), unilateral(2)}});
  int accepted = 0;
  for (int trial = 0; trial < 80 && accepted < 50; ++trial) {
    // Voter 0 puts candidate 0 on top so the reference welfare is positive.
    Profile p;
    const int n = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      std::vector<int> mids(k - 1);
      std::iota(mids.begin(), mids.end(), 1);
      std::shuffle(mids.begin(), mids.end(), rng);
      std::vector<Rat> v{Rat(0), Rat(1), Rat(mids[0], k)};
      std::shuffle(v.begin(), v.end(), rng);
      if (i == 0)
        std::swap(v[0], v[static_cast<size_t>(
                       std::max_element(v.begin(), v.end()) - v.begin())]);
      p.voters.push_back(val(v));
    }
    p.validate();
    ++accepted;
    const PessimizeResult res = pessimizeProfile(spec, p, k);
    CHECK(res.gEnd <= res.gStart);
    CHECK(res.gStart == welfareQuotient(spec, p));
    CHECK(res.gEnd == welfareQuotient(spec, res.profile));
    for (const Valuation& u : res.profile.voters) CHECK(alternationNumber(u, k) == 2);
  }
  CHECK(accepted == 50);
}

TEST_CASE("quadratic pessimizer slides a middle value or refuses honestly") {
  // Voter 0's middle (B at 1/2) slides to 1/10: the quotient drops from
  // 2023/2280 to 591/760, while the move to 9/10 would raise it to 599/600.
  Profile ok;
  ok.voters = {val({Rat(1), Rat(1, 2), Rat(0)}), val({Rat(9, 10), Rat(1), Rat(0)})};
  const PessimizeResult res = pessimizeProfile(quadraticLottery(), ok, 10);
  CHECK(res.gStart == Rat(2023, 2280));
  CHECK(res.gEnd == Rat(591, 760));
  CHECK(res.slides == 1);
  CHECK(res.profile.voters[0].v == std::vector<Rat>{Rat(1), Rat(1, 10), Rat(0)});
  for (const Valuation& u : res.profile.voters) CHECK(alternationNumber(u, 10) == 2);

  // An already quasi-combinatorial profile needs no slides at all.
  Profile fixed;
  fixed.voters = {val({Rat(1), Rat(1, 10), Rat(0)}), val({Rat(9, 10), Rat(1), Rat(0)})};
  const PessimizeResult noop = pessimizeProfile(quadraticLottery(), fixed, 10);
  CHECK(noop.slides == 0);
  CHECK(noop.gEnd == noop.gStart);

  // Here both candidate moves of voter 0's middle strictly raise the
  // quotient, so the slide must refuse rather than degrade the bound.
  Profile stuck;
  stuck.voters = {val({Rat(1), Rat(0), Rat(9, 10)}), val({Rat(0), Rat(3, 5), Rat(1)})};
  CHECK_THROWS_AS(pessimizeProfile(quadraticLottery(), stuck, 10), PessimizeObstruction);
}

TEST_CASE("counts and fractions modes agree on limit quantities") {
  const TypeProfile counts = makeCounts(3, 10, {{1, 5}, {4, 3}, {9, 2}});
  TypeProfile frac;
  frac.m = 3;
  frac.countsMode = false;
  frac.w = counts.fractions();
  frac.validate();
  for (const MechanismSpec& spec : {unilateral(1), unilateral(2), quadraticLottery()})
    CHECK(limitLottery(spec, counts).p == limitLottery(spec, frac).p);
  CHECK(gameEntry(randomMajority(), counts) == gameEntry(randomMajority(), frac, 10));
  const auto wc = limitWelfare(counts);
  const auto wf = limitWelfare(frac);
  for (size_t c = 0; c < 3; ++c) CHECK(wc[c] == wf[c] * Rat(10));
}
