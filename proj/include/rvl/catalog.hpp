// Named fixtures: the published five-column catalogue for the (3, 23000)
// restricted games, the many-candidate lower-bound profile family, the
// Condorcet-cycle profile, and the two-profile dictatorship witness.
// Fixtures are addressable by name ("thm6#1", "condorcet?k=1000", ...).
#pragma once

#include <variant>

#include "rvl/types.hpp"

namespace rvl {

// The five published adversary columns at m = 3, n = 23000 (counts mode).
std::vector<TypeProfile> thm6Catalogue();

// Lower-bound profile family: m >= 20 candidates, n = m - 1 + g voters with
// g = floor(m^{2/3}), k = floor(m^{1/3}); m - 1 singleton voters plus g block
// voters over a partition into consecutive k-blocks.  Candidate m-1 (0-based)
// has welfare exactly (1 - 1/m^2) g; all others stay below 2 + 1/m.  Perfect
// cubes are rejected (their blocks do not fit beside candidate m).
Profile thmNegProfile(int m);

// Condorcet cycle at strength 1/k: rankings A>B>C, B>C>A, C>A>B with the
// epsilon values 1/k (and 1 - 1/k for the third voter's A).
Profile condorcetProfile(long long k);

// Two profiles separated by one voter's valuation of A (7/10 vs 1/10000);
// welfare (23/10, 2, 1) and (optimum B) respectively.
std::pair<Profile, Profile> thmDmProfiles();

// Fixture lookup by name: "thm6#1".."thm6#5", "condorcet?k=K", "thmNeg?m=M",
// "thmDm#1", "thmDm#2".  Unknown names throw InvalidInput.
using Fixture = std::variant<Profile, TypeProfile>;
Fixture fixtureByName(const std::string& name);

}  // namespace rvl
