#pragma once

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "torusq/cli/config.hpp"
#include "torusq/zakspace.hpp"

namespace torusq::cli {

enum class Bound { Upper, Lower };

/// One measured quantity: passes if value ≤ tolerance (upper) or ≥ tolerance (lower).
struct Residual {
  std::string check;
  double value = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::Upper;

  bool pass() const { return bound == Bound::Upper ? value <= tolerance : value >= tolerance; }
};

/// A file to be written under the output directory.
struct Artifact {
  std::string name;
  std::string contents;
};

struct SuiteResult {
  std::string suite;
  std::vector<Residual> residuals;
  std::vector<Artifact> artifacts;
  nlohmann::json details = nlohmann::json::object();
  double wall_seconds = 0.0;

  bool pass() const;
  /// Largest value among upper-bound residuals (0 if none).
  double max_residual() const;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dirac",       "heisenberg",   "zak",         "prequant-identities",
                                              "go-theorem", "reducibility", "bad-operator", "all"};
  return names;
}

/// Runs a suite on a resolved config. Throws ConfigError for unknown suites.
SuiteResult run_suite(const std::string& name, const RunConfig& config);

/// Unit-norm section whose components carry random Gaussian coefficients on degrees 0..cap.
ZakSection random_tail_light(ChernLevel level, const BasisPtr& basis, int cap, std::mt19937_64& rng);

/// "e(m,n)".
std::string mode_label(FourierMode mode);

}  // namespace torusq::cli
