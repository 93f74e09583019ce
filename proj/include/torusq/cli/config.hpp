#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "torusq/zakspace.hpp"

namespace torusq::cli {

/// Invalid or inconsistent run configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Settings shared by every suite. Optional fields are filled in by resolve();
 * a resolved config has every field set and passes validation.
 */
struct RunConfig {
  int n = 1;
  int max_degree = 48;
  std::optional<int> quadrature;
  int gx = 128;
  int gy = 128;
  /// Zak window K (default: default_window(D)).
  std::optional<int> window;
  /// Interior margin for residuals (default D/2).
  std::optional<int> margin;
  /// Interior margin for commutant estimates (default D/4 of each truncation).
  std::optional<int> commutant_margin;
  /// Largest |m|, |n| of the monomials exercised.
  int degree_max = 2;
  std::vector<int> d_list{24, 32, 40};
  std::uint64_t seed = 20240601;
  /// Random section pairs for the Zak checks.
  int zak_pairs = 20;
  /// Highest Hermite degree carried by random test sections (default D/4).
  std::optional<int> tail_cap;
  /// Truncation and section degree used for the grid-oracle comparison.
  int oracle_degree = 200;
  int oracle_tail_cap = 4;
  std::map<std::string, double> thresholds = default_thresholds();
  std::filesystem::path out = "torusq-out";

  static std::map<std::string, double> default_thresholds();

  GridParams grid() const { return {gx, gy, window.value_or(kAutoWindow)}; }
  double threshold(const std::string& name) const;
};

/**
 * Fills defaults and validates; throws ConfigError. gy is raised to the
 * smallest multiple of 4|N| that is at least the requested value and exceeds
 * 2|N|(K+1), so the window's frequencies are resolved.
 */
RunConfig resolve(RunConfig config);

/// Overlays the keys of a flat JSON object onto config. Unknown keys are errors.
void apply_json(RunConfig& config, const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

nlohmann::json to_json(const RunConfig& config);

/// "128x96" → (128, 96).
std::pair<int, int> parse_grid(const std::string& text);
/// "24,32,40" → {24, 32, 40}.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace torusq::cli
