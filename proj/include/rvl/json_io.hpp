// JSON wire formats (nlohmann/json).  Shapes are stable contracts:
//   Profile      {"m":3,"n":3,"voters":[["1","1/1000","0"], ...]}
//   TypeProfile  {"m":3,"n":23000,"counts":{"x2":14398, ...}}         (counts)
//                {"m":3,"fractions":{"x2":"14398/23000", ...}}       (fractions)
//   Mechanism    {"unilateral":2} | {"duple":12} | "random-majority" |
//                "random-favorite" | "random-candidate" | "quadratic-lottery" |
//                {"mix":[["3/4",{"unilateral":3}], ...]} | {"symmetrized": ...}
// Values are exact rationals rendered as strings; counts are JSON integers.
#pragma once

#include <json.hpp>

#include "rvl/mechanisms.hpp"

namespace rvl {

using Json = nlohmann::ordered_json;

Json profileToJson(const Profile& p);
Profile profileFromJson(const Json& j);

Json typeProfileToJson(const TypeProfile& tp);
TypeProfile typeProfileFromJson(const Json& j);

Json mechanismToJson(const MechanismSpec& spec);
MechanismSpec mechanismFromJson(const Json& j);

// ["5/8","1/3","1/24"]-style probability array.
Json lotteryToJson(const Lottery& lot);

// {"exact":"61/100","decimal":"0.61"} pair used throughout reports.
Json rationalJson(const Rat& v);

// Parses a file, wrapping parse failures in InvalidInput with the path.
Json loadJsonFile(const std::string& path);

}  // namespace rvl
