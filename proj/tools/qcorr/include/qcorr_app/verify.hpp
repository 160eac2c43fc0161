// Oracle suites: each compares a fast path against an independent one and
// reports the worst discrepancy.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcorr::app {

struct Check {
  std::string label;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_error <= tolerance; }
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<Check> checks;
  bool passed() const;
};

const std::vector<std::string>& suite_names();

// tolerance overrides every check's own tolerance when set. Throws
// ValidationError for an unknown suite name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::optional<double> tolerance = std::nullopt);

}  // namespace qcorr::app
