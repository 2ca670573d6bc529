#include <doctest.h>

#include "rvl/catalog.hpp"
#include "rvl/mechanisms.hpp"

using namespace rvl;

TEST_CASE("the five published adversary columns") {
  const auto cat = thm6Catalogue();
  REQUIRE(cat.size() == 5);
  for (const TypeProfile& tp : cat) {
    CHECK(tp.m == 3);
    CHECK(tp.countsMode);
    CHECK(tp.n == 23000);
    CHECK_NOTHROW(tp.validate());
  }
  auto counts = [&](size_t j) {
    std::vector<std::pair<int, long long>> nz;
    for (size_t i = 0; i < cat[j].w.size(); ++i)
      if (!cat[j].w[i].isZero())
        nz.push_back({static_cast<int>(i), cat[j].w[i].floor().get_si()});
    return nz;
  };
  using NZ = std::vector<std::pair<int, long long>>;
  CHECK(counts(0) == NZ{{1, 14398}, {4, 2185}, {10, 6417}});
  CHECK(counts(1) == NZ{{1, 6000}, {4, 8000}, {11, 9000}});
  CHECK(counts(2) == NZ{{0, 11500}, {10, 11500}});
  CHECK(counts(3) == NZ{{1, 9200}, {4, 4600}, {11, 9200}});
  CHECK(counts(4) == NZ{{1, 13800}, {11, 9200}});
}

TEST_CASE("many-candidate lower-bound profile") {
  const Profile p = thmNegProfile(20);
  CHECK(p.m() == 20);
  CHECK(p.n() == 26);  // 19 singleton voters + floor(20^(2/3)) = 7 block voters
  CHECK_NOTHROW(p.validate());
  const auto w = welfare(p);
  CHECK(w[19] == Rat(2793, 400));  // (1 - 1/400) * 7
  for (size_t c = 0; c + 1 < w.size(); ++c) CHECK(w[c] < Rat(41, 20));
  CHECK(maxWelfare(p) == Rat(2793, 400));

  // All the classic ordinal mechanisms land at most 5 * m^(-2/3) here:
  // with ratio r that is exactly 400 r^3 <= 125.
  for (const MechanismSpec& spec :
       {randomMajority(), randomFavorite(), randomCandidate(), unilateral(2)}) {
    const Rat r = ratioOnProfile(spec, p);
    CHECK(r * r * r * Rat(400) <= Rat(125));
  }

  CHECK_THROWS_AS(thmNegProfile(19), InvalidInput);  // below the family floor
  CHECK_THROWS_AS(thmNegProfile(27), InvalidInput);  // perfect cube
  CHECK_NOTHROW(thmNegProfile(28).validate());
}

TEST_CASE("condorcet cycle profile") {
  const Profile p = condorcetProfile(1000);
  REQUIRE(p.n() == 3);
  CHECK(welfare(p) == std::vector<Rat>{Rat(1999, 1000), Rat(1001, 1000), Rat(1001, 1000)});
  CHECK_NOTHROW(p.validate());
  // Strict cycle: A beats B, B beats C, C beats A, each 2 votes to 1.
  int abA = 0, bcB = 0, caC = 0;
  for (const Valuation& u : p.voters) {
    abA += u.prefers(0, 1);
    bcB += u.prefers(1, 2);
    caC += u.prefers(2, 0);
  }
  CHECK(abA == 2);
  CHECK(bcB == 2);
  CHECK(caC == 2);
}

TEST_CASE("dictatorship witness pair differs in a single entry") {
  const auto [p1, p2] = thmDmProfiles();
  CHECK(welfare(p1) == std::vector<Rat>{Rat(23, 10), Rat(2), Rat(1)});
  const auto w2 = welfare(p2);
  CHECK(w2[0] == Rat(16001, 10000));
  CHECK(w2[1] == Rat(2));
  CHECK(w2[2] == Rat(1));
  CHECK(maxWelfare(p2) == Rat(2));
  REQUIRE(p1.n() == p2.n());
  int diffs = 0;
  for (size_t i = 0; i < p1.voters.size(); ++i)
    for (size_t c = 0; c < 3; ++c)
      if (p1.voters[i].v[c] != p2.voters[i].v[c]) {
        ++diffs;
        CHECK(p1.voters[i].v[c] == Rat(7, 10));
        CHECK(p2.voters[i].v[c] == Rat(1, 10000));
      }
  CHECK(diffs == 1);
}

TEST_CASE("fixtures resolve by name") {
  for (int i = 1; i <= 5; ++i) {
    const Fixture f = fixtureByName("thm6#" + std::to_string(i));
    REQUIRE(std::holds_alternative<TypeProfile>(f));
    CHECK(std::get<TypeProfile>(f) == thm6Catalogue()[static_cast<size_t>(i) - 1]);
  }
  const Fixture cond = fixtureByName("condorcet?k=1000");
  REQUIRE(std::holds_alternative<Profile>(cond));
  CHECK(welfare(std::get<Profile>(cond))[0] == Rat(1999, 1000));
  const Fixture neg = fixtureByName("thmNeg?m=20");
  REQUIRE(std::holds_alternative<Profile>(neg));
  CHECK(std::get<Profile>(neg).m() == 20);
  CHECK(std::holds_alternative<Profile>(fixtureByName("thmDm#1")));
  CHECK(std::holds_alternative<Profile>(fixtureByName("thmDm#2")));
  CHECK_THROWS_AS(fixtureByName("thm6#0"), InvalidInput);
  CHECK_THROWS_AS(fixtureByName("thm6#6"), InvalidInput);
  CHECK_THROWS_AS(fixtureByName("unknown"), InvalidInput);
  CHECK_THROWS_AS(fixtureByName("thmNeg?m=8"), InvalidInput);
}
