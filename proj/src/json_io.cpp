#include "rvl/json_io.hpp"

#include <fstream>
#include <map>
#include <utility>

namespace rvl {
namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidInput("json: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long long asInt(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    bad(std::string(what) + " must be an integer");
  return j.get<long long>();
}

// Accepts "p/q" strings and bare JSON integers.
Rat asRat(const Json& j, const char* what) {
  if (j.is_string()) {
    try {
      return Rat::parse(j.get<std::string>());
    } catch (const std::domain_error& e) {
      bad(std::string(what) + ": " + e.what());
    }
  }
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(j.get<long long>());
  bad(std::string(what) + " must be a rational string");
}

}  // namespace

Json profileToJson(const Profile& p) {
  Json voters = Json::array();
  for (const Valuation& u : p.voters) {
    Json row = Json::array();
    for (const Rat& x : u.v) row.push_back(x.str());
    voters.push_back(std::move(row));
  }
  return Json{{"m", p.m()}, {"n", p.n()}, {"voters", std::move(voters)}};
}

Profile profileFromJson(const Json& j) {
  const long long m = asInt(field(j, "m"), "m");
  const long long n = asInt(field(j, "n"), "n");
  const Json& voters = field(j, "voters");
  if (!voters.is_array()) bad("voters must be an array");
  if (static_cast<long long>(voters.size()) != n) bad("n does not match the voter count");
  Profile p;
  for (const Json& row : voters) {
    if (!row.is_array() || static_cast<long long>(row.size()) != m)
      bad("each voter must list exactly m values");
    Valuation u;
    for (const Json& x : row) u.v.push_back(asRat(x, "voter value"));
    p.voters.push_back(std::move(u));
  }
  p.validate();
  return p;
}

Json typeProfileToJson(const TypeProfile& tp) {
  tp.validate();
  const auto types = enumerateTypes(tp.m);
  Json weights = Json::object();
  for (size_t t = 0; t < types.size(); ++t) {
    if (tp.w[t].isZero()) continue;
    if (tp.countsMode)
      weights[typeLabel(types[t])] = tp.w[t].num().get_si();
    else
      weights[typeLabel(types[t])] = tp.w[t].str();
  }
  Json out{{"m", tp.m}};
  if (tp.countsMode) out["n"] = tp.n;
  out[tp.countsMode ? "counts" : "fractions"] = std::move(weights);
  return out;
}

TypeProfile typeProfileFromJson(const Json& j) {
  TypeProfile tp;
  tp.m = static_cast<int>(asInt(field(j, "m"), "m"));
  if (tp.m < 2 || tp.m > 8) bad("m out of range");
  const bool counts = j.contains("counts");
  if (counts == j.contains("fractions")) bad("need exactly one of counts/fractions");
  tp.countsMode = counts;
  const auto types = enumerateTypes(tp.m);
  std::map<std::string, int> index;
  for (size_t t = 0; t < types.size(); ++t) index[typeLabel(types[t])] = static_cast<int>(t);
  tp.w.assign(types.size(), Rat(0));

  const Json& weights = field(j, counts ? "counts" : "fractions");
  if (!weights.is_object()) bad("type weights must be an object");
  for (const auto& [label, value] : weights.items()) {
    auto it = index.find(label);
    if (it == index.end()) bad("unknown type label \"" + label + "\"");
    tp.w[it->second] = counts ? Rat(asInt(value, "count")) : asRat(value, "fraction");
  }
  if (counts) tp.n = asInt(field(j, "n"), "n");
  tp.validate();
  return tp;
}

Json mechanismToJson(const MechanismSpec& spec) {
  return std::visit(
      [](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Unilateral>) return Json{{"unilateral", node.q}};
        if constexpr (std::is_same_v<T, Duple>) return Json{{"duple", node.q}};
        if constexpr (std::is_same_v<T, RandomMajority>) return "random-majority";
        if constexpr (std::is_same_v<T, RandomFavorite>) return "random-favorite";
        if constexpr (std::is_same_v<T, RandomCandidate>) return "random-candidate";
        if constexpr (std::is_same_v<T, QuadraticLottery>) return "quadratic-lottery";
        if constexpr (std::is_same_v<T, Mixture>) {
          Json parts = Json::array();
          for (size_t i = 0; i < node.parts.size(); ++i)
            parts.push_back(Json::array({node.weights[i].str(), mechanismToJson(node.parts[i])}));
          return Json{{"mix", std::move(parts)}};
        }
        if constexpr (std::is_same_v<T, Symmetrized>)
          return Json{{"symmetrized", mechanismToJson(node.inner.front())}};
      },
      spec.node);
}

MechanismSpec mechanismFromJson(const Json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "random-majority") return randomMajority();
    if (name == "random-favorite") return randomFavorite();
    if (name == "random-candidate") return randomCandidate();
    if (name == "quadratic-lottery") return quadraticLottery();
    bad("unknown mechanism name \"" + name + "\"");
  }
  if (!j.is_object() || j.size() != 1) bad("mechanism must be a name or a one-key object");
  const auto it = j.begin();
  const std::string key = it.key();
  const Json& value = it.value();
  if (key == "unilateral") return unilateral(static_cast<int>(asInt(value, "unilateral rank")));
  if (key == "duple") return duple(asInt(value, "duple threshold"));
  if (key == "symmetrized") return symmetrized(mechanismFromJson(value));
  if (key == "mix") {
    if (!value.is_array() || value.empty()) bad("mix must be a nonempty array");
    std::vector<std::pair<Rat, MechanismSpec>> parts;
    for (const Json& entry : value) {
      if (!entry.is_array() || entry.size() != 2) bad("mix entries are [weight, mechanism] pairs");
      parts.emplace_back(asRat(entry.at(0), "mix weight"), mechanismFromJson(entry.at(1)));
    }
    return mixture(parts);
  }
  bad("unknown mechanism key \"" + key + "\"");
}

Json lotteryToJson(const Lottery& lot) {
  Json out = Json::array();
  for (const Rat& x : lot.p) out.push_back(x.str());
  return out;
}

Json rationalJson(const Rat& v) {
  return Json{{"exact", v.str()}, {"decimal", v.decimal()}};
}

Json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("failed to parse '" + path + "': " + e.what());
  }
}

}  // namespace rvl
