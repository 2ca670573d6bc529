// Shared CLI reporting: named pass/fail assertions, simple tables rendered as
// markdown/csv/json, and run metadata (command echo, input digest, timing).
#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>

#include "rvl/json_io.hpp"

namespace rvl {

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;  // shown on failure (and in JSON reports)
};

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct RunReport {
  std::string command;
  Json inputs = Json::object();
  std::vector<Table> tables;
  Json outputs = Json::object();
  std::vector<Assertion> assertions;
  double timingMs = 0;

  void require(const std::string& name, bool pass, const std::string& detail = "");
  bool allPassed() const;
  Json toJson() const;
};

// Renders tables + assertions + timing; format is "md", "csv", or "json"
// (json serializes the whole report).  Unknown formats throw InvalidInput.
void printReport(const RunReport& r, std::ostream& os, const std::string& format);

// FNV-1a 64-bit digest, lowercase hex; used to fingerprint echoed inputs.
std::string fnv1aHex(const std::string& bytes);

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsedMs() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

}  // namespace rvl
