#include "rvl/types.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

namespace rvl {

void Valuation::validate() const {
  const int mm = m();
  if (mm < 2) throw InvalidInput("valuation: need at least 2 candidates");
  bool hasZero = false, hasOne = false;
  std::set<Rat> seen;
  for (const Rat& x : v) {
    if (x < Rat(0) || x > Rat(1)) throw InvalidInput("valuation: value outside [0,1]");
    if (!seen.insert(x).second) throw InvalidInput("valuation: tied values");
    if (x.isZero()) hasZero = true;
    if (x == Rat(1)) hasOne = true;
  }
  if (!hasZero || !hasOne) throw InvalidInput("valuation: must attain both 0 and 1");
}

std::vector<int> Valuation::rankingAscending() const {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
  return idx;
}

std::vector<int> Valuation::topCandidates(int count) const {
  auto asc = rankingAscending();
  std::vector<int> top(asc.end() - count, asc.end());
  std::reverse(top.begin(), top.end());
  return top;
}

void Profile::validate() const {
  if (voters.empty()) throw InvalidInput("profile: no voters");
  const int mm = voters.front().m();
  for (const Valuation& u : voters) {
    if (u.m() != mm) throw InvalidInput("profile: inconsistent candidate count");
    u.validate();
  }
}

std::vector<Rat> welfare(const Profile& p) {
  std::vector<Rat> w(static_cast<size_t>(p.m()), Rat(0));
  for (const Valuation& u : p.voters)
    for (int c = 0; c < p.m(); ++c) w[static_cast<size_t>(c)] += u.v[static_cast<size_t>(c)];
  return w;
}

Rat maxWelfare(const Profile& p) {
  auto w = welfare(p);
  return *std::max_element(w.begin(), w.end());
}

Profile replicateProfile(const Profile& p, int k) {
  if (k < 1) throw InvalidInput("replicateProfile: k must be >= 1");
  Profile out;
  out.voters.reserve(p.voters.size() * static_cast<size_t>(k));
  for (const Valuation& u : p.voters)
    for (int i = 0; i < k; ++i) out.voters.push_back(u);
  return out;
}

bool QuasiType::prefers(int a, int b) const {
  int pa = -1, pb = -1;
  for (int i = 0; i < m(); ++i) {
    if (ranking[static_cast<size_t>(i)] == a) pa = i;
    if (ranking[static_cast<size_t>(i)] == b) pb = i;
  }
  return pa > pb;
}

std::vector<int> QuasiType::highBlock() const {
  return {ranking.end() - split, ranking.end()};
}

std::vector<QuasiType> enumerateTypes(int m) {
  if (m < 2) throw InvalidInput("enumerateTypes: need m >= 2");
  std::vector<int> perm(static_cast<size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<QuasiType> out;
  // perm lists candidates most-preferred-first; iterate in lex order.
  do {
    std::vector<int> ranking(perm.rbegin(), perm.rend());
    for (int s = m - 1; s >= 1; --s) out.push_back(QuasiType{ranking, s});
  } while (std::next_permutation(perm.begin(), perm.end()));
  // The published m=3 table orders the third ranking's splits ascending;
  // pin that anomaly verbatim.
  if (m == 3) std::swap(out[2], out[3]);
  return out;
}

namespace {

const std::vector<QuasiType>& typesCached(int m) {
  static std::map<int, std::vector<QuasiType>> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, enumerateTypes(m)).first;
  return it->second;
}

int typeIndex(const QuasiType& t) {
  const auto& types = typesCached(t.m());
  for (size_t i = 0; i < types.size(); ++i)
    if (types[i] == t) return static_cast<int>(i);
  throw InvalidInput("typeIndex: not a valid type");
}

long long maxColumnsCap() {
  if (const char* env = std::getenv("RVL_MAX_COLUMNS")) {
    long long cap = std::atoll(env);
    if (cap > 0) return cap;
  }
  return 100000;
}

}  // namespace

std::string typeLabel(const QuasiType& t) {
  return "x" + std::to_string(typeIndex(t) + 1);
}

Valuation eta(const QuasiType& t, int k) {
  const int m = t.m();
  if (k <= 2 * m) throw InvalidInput("eta: need k > 2m");
  if (t.split < 1 || t.split >= m) throw InvalidInput("eta: split out of range");
  Valuation u;
  u.v.assign(static_cast<size_t>(m), Rat(0));
  const int low = m - t.split;
  // Low block: 0, 1/k, ..., (low-1)/k in preference order; high block ends at 1.
  for (int i = 0; i < low; ++i)
    u.v[static_cast<size_t>(t.ranking[static_cast<size_t>(i)])] = Rat(i, k);
  for (int i = 0; i < t.split; ++i)
    u.v[static_cast<size_t>(t.ranking[static_cast<size_t>(low + i)])] =
        Rat(k - t.split + 1 + i, k);
  return u;
}

namespace {

// Grid levels of u, ascending; throws when some value is off the 1/k grid.
std::vector<long> gridLevels(const Valuation& u, int k) {
  std::vector<long> levels;
  for (const Rat& x : u.v) {
    Rat scaled = x * Rat(k);
    if (!scaled.isInteger()) throw InvalidInput("alternationNumber: value off the 1/k grid");
    levels.push_back(scaled.num().get_si());
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

}  // namespace

int alternationNumber(const Valuation& u, int k) {
  u.validate();
  auto levels = gridLevels(u, k);
  std::vector<char> in(static_cast<size_t>(k) + 1, 0);
  for (long lv : levels) in[static_cast<size_t>(lv)] = 1;
  int a = 0;
  for (int j = 0; j < k; ++j)
    if (in[static_cast<size_t>(j)] != in[static_cast<size_t>(j) + 1]) ++a;
  return a;
}

std::optional<QuasiType> typeOf(const Valuation& u, int k) {
  const int m = u.m();
  if (k <= 2 * m) throw InvalidInput("typeOf: need k > 2m");
  if (alternationNumber(u, k) != 2) return std::nullopt;
  // Two runs anchored at 0 and 1: the split is the size of the high run,
  // which (for k > 2m) is exactly the set of values above 1/2.
  QuasiType t;
  t.ranking = u.rankingAscending();
  t.split = 0;
  for (const Rat& x : u.v)
    if (x > Rat(1, 2)) ++t.split;
  if (eta(t, k).v != u.v) return std::nullopt;  // runs not flush against 0/1
  return t;
}

void TypeProfile::validate() const {
  const auto& types = typesCached(m);
  if (w.size() != types.size()) throw InvalidInput("typeProfile: wrong weight count");
  Rat total(0);
  for (const Rat& x : w) {
    if (x < Rat(0)) throw InvalidInput("typeProfile: negative weight");
    if (countsMode && !x.isInteger()) throw InvalidInput("typeProfile: non-integer count");
    total += x;
  }
  if (countsMode) {
    if (n <= 0) throw InvalidInput("typeProfile: counts mode needs n >= 1");
    if (total != Rat(n)) throw InvalidInput("typeProfile: counts must sum to n");
  } else {
    if (total != Rat(1)) throw InvalidInput("typeProfile: fractions must sum to 1");
  }
}

std::vector<Rat> TypeProfile::fractions() const {
  if (!countsMode) return w;
  std::vector<Rat> f = w;
  for (Rat& x : f) x /= Rat(n);
  return f;
}

TypeProfile makeCounts(int m, long long n,
                       const std::vector<std::pair<int, long long>>& typeCounts) {
  TypeProfile tp;
  tp.m = m;
  tp.countsMode = true;
  tp.n = n;
  tp.w.assign(typesCached(m).size(), Rat(0));
  for (auto [idx, c] : typeCounts) {
    if (idx < 0 || static_cast<size_t>(idx) >= tp.w.size())
      throw InvalidInput("makeCounts: type index out of range");
    tp.w[static_cast<size_t>(idx)] += Rat(c);
  }
  tp.validate();
  return tp;
}

TypeProfile canonicalizeTypeProfile(const TypeProfile& tp) {
  tp.validate();
  const auto& types = typesCached(tp.m);
  std::map<QuasiType, int> index;
  for (size_t i = 0; i < types.size(); ++i) index.emplace(types[i], static_cast<int>(i));

  std::vector<int> sigma(static_cast<size_t>(tp.m));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::optional<std::vector<Rat>> best;
  do {
    std::vector<Rat> relabeled(tp.w.size(), Rat(0));
    for (size_t i = 0; i < types.size(); ++i) {
      if (tp.w[i].isZero()) continue;
      QuasiType t = types[i];
      for (int& c : t.ranking) c = sigma[static_cast<size_t>(c)];
      relabeled[static_cast<size_t>(index.at(t))] += tp.w[i];
    }
    if (!best || std::lexicographical_compare(relabeled.begin(), relabeled.end(),
                                              best->begin(), best->end()))
      best = std::move(relabeled);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  TypeProfile out = tp;
  out.w = *best;
  return out;
}

mpz_class typeProfileCount(int m, long long n) {
  const auto T = static_cast<unsigned long>(typesCached(m).size());
  mpz_class count;
  mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(n) + T - 1, T - 1);
  return count;
}

std::vector<TypeProfile> enumerateTypeProfiles(int m, long long n, bool canonicalOnly) {
  if (n < 1) throw InvalidInput("enumerateTypeProfiles: need n >= 1");
  const auto& types = typesCached(m);
  const mpz_class total = typeProfileCount(m, n);
  const long long cap = maxColumnsCap();
  if (total > mpz_class(std::to_string(cap)))
    throw ResourceLimit("enumerateTypeProfiles: " + total.get_str() +
                        " compositions exceed the cap of " + std::to_string(cap) +
                        " (set RVL_MAX_COLUMNS to raise)");

  std::vector<TypeProfile> out;
  std::vector<Rat> w(types.size(), Rat(0));
  // Depth-first over compositions of n into |types| parts.
  auto rec = [&](auto&& self, size_t slot, long long remaining) -> void {
    if (slot + 1 == w.size()) {
      w[slot] = Rat(remaining);
      TypeProfile tp;
      tp.m = m;
      tp.countsMode = true;
      tp.n = n;
      tp.w = w;
      if (!canonicalOnly || canonicalizeTypeProfile(tp).w == tp.w) out.push_back(tp);
      w[slot] = Rat(0);
      return;
    }
    for (long long c = 0; c <= remaining; ++c) {
      w[slot] = Rat(c);
      self(self, slot + 1, remaining - c);
    }
    w[slot] = Rat(0);
  };
  rec(rec, 0, n);
  return out;
}

Profile realizeTypeProfile(const TypeProfile& tp, int k) {
  tp.validate();
  if (!tp.countsMode) throw InvalidInput("realizeTypeProfile: counts mode required");
  const auto& types = typesCached(tp.m);
  Profile p;
  for (size_t i = 0; i < types.size(); ++i) {
    if (tp.w[i].isZero()) continue;
    Valuation u = eta(types[i], k);
    long long c = tp.w[i].num().get_si();
    for (long long j = 0; j < c; ++j) p.voters.push_back(u);
  }
  return p;
}

}  // namespace rvl
