// Core domain types: normalized valuations, profiles, quasi-combinatorial
// types, and type profiles (candidate-count histograms over the type list).
//
// A valuation over m candidates is injective, takes values in [0,1], and
// attains both 0 and 1.  A quasi-combinatorial type is (ranking, split):
// ranking lists candidates from least to most preferred; split s is the size
// of the high block (values near 1).  There are m!*(m-1) types.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rvl/errors.hpp"
#include "rvl/rational.hpp"

namespace rvl {

// One voter's valuation; u.v[c] is the value assigned to candidate c.
struct Valuation {
  std::vector<Rat> v;

  int m() const { return static_cast<int>(v.size()); }
  // Throws InvalidInput unless injective, within [0,1], attaining 0 and 1.
  void validate() const;
  // Candidates ordered from least to most preferred.
  std::vector<int> rankingAscending() const;
  // The `count` most preferred candidates.
  std::vector<int> topCandidates(int count) const;
  // True if u(a) > u(b).
  bool prefers(int a, int b) const { return v[a] > v[b]; }
};

struct Profile {
  std::vector<Valuation> voters;

  int n() const { return static_cast<int>(voters.size()); }
  int m() const { return voters.empty() ? 0 : voters.front().m(); }
  // Validates every ballot and the shared candidate count.
  void validate() const;
};

// Sum over voters of u_i(c), for each candidate c.
std::vector<Rat> welfare(const Profile& p);
// Largest welfare entry (always > 0 for a valid nonempty profile).
Rat maxWelfare(const Profile& p);

// Each ballot duplicated k times, block order preserved.
Profile replicateProfile(const Profile& p, int k);

// Quasi-combinatorial type: ranking (least to most preferred) plus the size
// of the high block, 1 <= split <= m-1.
struct QuasiType {
  std::vector<int> ranking;
  int split = 0;

  int m() const { return static_cast<int>(ranking.size()); }
  int mostPreferred() const { return ranking.back(); }
  // True if the type ranks a above b.
  bool prefers(int a, int b) const;
  // Candidates in the high block (the `split` most preferred).
  std::vector<int> highBlock() const;
  friend bool operator==(const QuasiType&, const QuasiType&) = default;
  friend auto operator<=>(const QuasiType&, const QuasiType&) = default;
};

// All m!*(m-1) types in the pinned order (m=3 matches the published 12-column
// table x1..x12; other m use rankings lex by most-preferred-first with split
// descending m-1..1).
std::vector<QuasiType> enumerateTypes(int m);

// "x1".."x12"-style label of a type, i.e. 1 + its enumerateTypes index.
std::string typeLabel(const QuasiType& t);

// Canonical grid valuation of type t at resolution k (requires k > 2m):
// low block takes 0, 1/k, ..., high block ends at 1.
Valuation eta(const QuasiType& t, int k);

// Number of grid boundaries j/k -> (j+1)/k crossed in/out of the image
// (equals 2 exactly for quasi-combinatorial valuations).  Requires all values
// on the 1/k grid.
int alternationNumber(const Valuation& u, int k);

// The type t with eta(t,k) == u when u is quasi-combinatorial (a(u) == 2 and
// grid-valued), otherwise nullopt.  Off-grid input throws InvalidInput.
std::optional<QuasiType> typeOf(const Valuation& u, int k);

// Histogram over enumerateTypes(m).  In counts mode, w holds nonnegative
// integers summing to n; in fractions mode, nonnegative rationals summing
// to 1 (and n is absent).
struct TypeProfile {
  int m = 0;
  bool countsMode = true;
  long long n = 0;  // meaningful only in counts mode
  std::vector<Rat> w;

  void validate() const;
  // Weights normalized to sum 1 (identity in fractions mode).
  std::vector<Rat> fractions() const;
  friend bool operator==(const TypeProfile&, const TypeProfile&) = default;
};

TypeProfile makeCounts(int m, long long n, const std::vector<std::pair<int, long long>>& typeCounts);

// Lexicographically-least weight vector over all m! candidate relabelings.
TypeProfile canonicalizeTypeProfile(const TypeProfile& tp);

// All counts-mode type profiles with n voters (compositions of n over the
// type list), optionally reduced to canonical representatives.  Throws
// ResourceLimit naming the composition count when it exceeds the cap
// (environment variable RVL_MAX_COLUMNS, default 100000).
std::vector<TypeProfile> enumerateTypeProfiles(int m, long long n, bool canonicalOnly);

// The composition count C(n + T - 1, T - 1) with T = m!*(m-1).
mpz_class typeProfileCount(int m, long long n);

// A concrete profile realizing tp at grid resolution k: count[t] voters with
// ballot eta(t, k), in type order.  Counts mode only.
Profile realizeTypeProfile(const TypeProfile& tp, int k);

}  // namespace rvl
