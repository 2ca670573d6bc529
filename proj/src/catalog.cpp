#include "rvl/catalog.hpp"

#include <map>

namespace rvl {

std::vector<TypeProfile> thm6Catalogue() {
  // Zero-based type indices: x2 -> 1, x5 -> 4, x11 -> 10, x12 -> 11, x1 -> 0.
  const long long n = 23000;
  std::vector<TypeProfile> cat;
  cat.push_back(makeCounts(3, n, {{1, 14398}, {4, 2185}, {10, 6417}}));
  cat.push_back(makeCounts(3, n, {{1, 6000}, {4, 8000}, {11, 9000}}));
  cat.push_back(makeCounts(3, n, {{0, 11500}, {10, 11500}}));
  cat.push_back(makeCounts(3, n, {{1, 9200}, {4, 4600}, {11, 9200}}));
  cat.push_back(makeCounts(3, n, {{1, 13800}, {11, 9200}}));
  return cat;
}

namespace {

mpz_class floorRoot(long long value, unsigned long nth) {
  mpz_class v(std::to_string(value));
  mpz_class r;
  mpz_root(r.get_mpz_t(), v.get_mpz_t(), nth);
  return r;
}

}  // namespace

Profile thmNegProfile(int m) {
  if (m < 20) throw InvalidInput("thmNegProfile: need m >= 20");
  const long long k = floorRoot(m, 3).get_si();
  const long long g = floorRoot(static_cast<long long>(m) * m, 3).get_si();
  if (k * g > m - 1)
    throw InvalidInput("thmNegProfile: blocks do not fit beside the last candidate "
                       "(perfect-cube m)");

  const mpz_class m3 = mpz_class(m) * m * m;
  const Rat one(1);
  // Candidate indices: blocks cover 0 .. k*g-1; the special candidate is m-1.
  const int special = m - 1;
  auto blockOf = [&](int c) -> long long {
    return (c < k * g) ? c / k : -1;
  };

  Profile p;
  // Singleton voters i = 0 .. m-2: value 1 on candidate i, 0 on the special
  // candidate, distinct fillers j/m^3 (j = 1..m-2) ascending by candidate.
  for (int i = 0; i < m - 1; ++i) {
    Valuation u;
    u.v.assign(static_cast<size_t>(m), Rat(0));
    u.v[static_cast<size_t>(i)] = one;
    u.v[static_cast<size_t>(special)] = Rat(0);
    long long filler = 1;
    for (int c = 0; c < m - 1; ++c) {
      if (c == i) continue;
      u.v[static_cast<size_t>(c)] = Rat(mpz_class(std::to_string(filler)), m3);
      ++filler;
    }
    p.voters.push_back(std::move(u));
  }
  // Block voters j = 0 .. g-1: members of block j get values just below 1
  // (first member exactly 1), the special candidate exactly 1 - 1/m^2,
  // everyone else fillers j'/m^3 starting at 0.
  for (long long j = 0; j < g; ++j) {
    Valuation u;
    u.v.assign(static_cast<size_t>(m), Rat(0));
    for (long long i = 0; i < k; ++i) {
      const int c = static_cast<int>(j * k + i);
      u.v[static_cast<size_t>(c)] =
          i == 0 ? one : Rat(m3 - mpz_class(std::to_string(i)), m3);
    }
    u.v[static_cast<size_t>(special)] =
        Rat(mpz_class(m) * m - 1, mpz_class(m) * m);
    long long filler = 0;
    for (int c = 0; c < m - 1; ++c) {
      if (blockOf(c) == j) continue;
      u.v[static_cast<size_t>(c)] = Rat(mpz_class(std::to_string(filler)), m3);
      ++filler;
    }
    p.voters.push_back(std::move(u));
  }
  p.validate();
  return p;
}

Profile condorcetProfile(long long k) {
  if (k < 2) throw InvalidInput("condorcetProfile: need k >= 2");
  const Rat eps(1, k);
  Profile p;
  p.voters.push_back(Valuation{{Rat(1), eps, Rat(0)}});          // A > B > C
  p.voters.push_back(Valuation{{Rat(0), Rat(1), eps}});          // B > C > A
  p.voters.push_back(Valuation{{Rat(1) - eps, Rat(0), Rat(1)}}); // C > A > B
  p.validate();
  return p;
}

std::pair<Profile, Profile> thmDmProfiles() {
  Profile p1;
  p1.voters.push_back(Valuation{{Rat(7, 10), Rat(1), Rat(0)}});
  p1.voters.push_back(Valuation{{Rat(8, 10), Rat(1), Rat(0)}});
  p1.voters.push_back(Valuation{{Rat(8, 10), Rat(0), Rat(1)}});
  p1.validate();
  Profile p2 = p1;
  p2.voters[0].v[0] = Rat(1, 10000);
  p2.validate();
  return {p1, p2};
}

Fixture fixtureByName(const std::string& name) {
  if (name.rfind("thm6#", 0) == 0) {
    const std::string idx = name.substr(5);
    if (idx.size() == 1 && idx[0] >= '1' && idx[0] <= '5')
      return thm6Catalogue()[static_cast<size_t>(idx[0] - '1')];
    throw InvalidInput("fixture: thm6 index must be 1..5");
  }
  if (name.rfind("condorcet?k=", 0) == 0) {
    const long long k = std::atoll(name.substr(12).c_str());
    return condorcetProfile(k);
  }
  if (name.rfind("thmNeg?m=", 0) == 0) {
    const int m = std::atoi(name.substr(9).c_str());
    return thmNegProfile(m);
  }
  if (name == "thmDm#1") return thmDmProfiles().first;
  if (name == "thmDm#2") return thmDmProfiles().second;
  throw InvalidInput("fixture: unknown name '" + name + "'");
}

}  // namespace rvl
