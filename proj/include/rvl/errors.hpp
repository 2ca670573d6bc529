// Typed error hierarchy shared by every module.
#pragma once

#include <stdexcept>
#include <string>

namespace rvl {

// Precondition violations on caller-supplied data (non-normalized profiles,
// out-of-range thresholds, off-grid values, malformed JSON payloads, ...).
struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// An enumeration would exceed a configured cap; the message names the count.
struct ResourceLimit : std::runtime_error {
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

// A quadratic program whose feasible region is empty.
struct InfeasibleProgram : std::runtime_error {
  explicit InfeasibleProgram(const std::string& what) : std::runtime_error(what) {}
};

// Bisection endpoints whose program signs do not bracket a crossing.
struct InvalidBracket : std::runtime_error {
  explicit InvalidBracket(const std::string& what) : std::runtime_error(what) {}
};

// Quadratic-lottery pessimization hit a profile where every admissible
// endpoint slide strictly increases the objective (interior-minimum
// obstruction); the ordinal path never throws this.
struct PessimizeObstruction : std::runtime_error {
  explicit PessimizeObstruction(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rvl
