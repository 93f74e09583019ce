#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "torusq/cli/config.hpp"
#include "torusq/cli/suites.hpp"

namespace torusq::cli {

/// Suite wrapper document: suite, pass, config, residuals, artifacts, details.
nlohmann::json report_json(const SuiteResult& result, const RunConfig& config);

/// "check,value,tolerance,pass" with RFC 4180 quoting of check names.
std::string residuals_csv(const SuiteResult& result);

/**
 * Writes report.json, residuals.csv and the suite's artifacts under config.out.
 * Returns the paths written. Contents are a function of (result, config) only.
 */
std::vector<std::filesystem::path> emit_report(const SuiteResult& result, const RunConfig& config);

}  // namespace torusq::cli
