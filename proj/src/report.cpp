#include "rvl/report.hpp"

#include <cstdint>
#include <ostream>
#include <sstream>

namespace rvl {
namespace {

std::string csvCell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void renderMd(const Table& t, std::ostream& os) {
  if (!t.title.empty()) os << "### " << t.title << "\n\n";
  os << "|";
  for (const auto& h : t.header) os << " " << h << " |";
  os << "\n|";
  for (size_t i = 0; i < t.header.size(); ++i) os << " --- |";
  os << "\n";
  for (const auto& row : t.rows) {
    os << "|";
    for (const auto& cell : row) os << " " << cell << " |";
    os << "\n";
  }
  os << "\n";
}

void renderCsv(const Table& t, std::ostream& os) {
  if (!t.title.empty()) os << "# " << t.title << "\n";
  for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csvCell(t.header[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csvCell(row[i]);
    os << "\n";
  }
}

Json tableToJson(const Table& t) {
  return Json{{"title", t.title}, {"header", t.header}, {"rows", t.rows}};
}

}  // namespace

void RunReport::require(const std::string& name, bool pass, const std::string& detail) {
  assertions.push_back({name, pass, detail});
}

bool RunReport::allPassed() const {
  for (const auto& a : assertions)
    if (!a.pass) return false;
  return true;
}

Json RunReport::toJson() const {
  Json tabs = Json::array();
  for (const auto& t : tables) tabs.push_back(tableToJson(t));
  Json asserts = Json::array();
  for (const auto& a : assertions)
    asserts.push_back(Json{{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  return Json{{"command", command},
              {"inputs", inputs},
              {"inputs_digest", fnv1aHex(inputs.dump())},
              {"tables", std::move(tabs)},
              {"outputs", outputs},
              {"assertions", std::move(asserts)},
              {"all_passed", allPassed()},
              {"timing_ms", timingMs}};
}

void printReport(const RunReport& r, std::ostream& os, const std::string& format) {
  if (format == "json") {
    os << r.toJson().dump(2) << "\n";
    return;
  }
  if (format != "md" && format != "csv") throw InvalidInput("unknown format '" + format + "'");
  for (const auto& t : r.tables) {
    if (format == "md")
      renderMd(t, os);
    else
      renderCsv(t, os);
  }
  if (!r.outputs.empty()) os << (format == "md" ? "```\n" : "");
  for (const auto& [key, value] : r.outputs.items())
    os << key << " = " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  if (!r.outputs.empty()) os << (format == "md" ? "```\n" : "");
  for (const auto& a : r.assertions) {
    os << (a.pass ? "[PASS] " : "[FAIL] ") << a.name;
    if (!a.pass && !a.detail.empty()) os << "  (" << a.detail << ")";
    os << "\n";
  }
  std::ostringstream ms;
  ms.setf(std::ios::fixed);
  ms.precision(1);
  ms << r.timingMs;
  os << (r.allPassed() ? "OK" : "FAILED") << " (" << r.assertions.size() << " assertions, "
     << ms.str() << " ms)\n";
}

std::string fnv1aHex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace rvl
