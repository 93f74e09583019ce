#include "torusq/cli/report.hpp"

#include <sstream>

#include "torusq/io.hpp"

namespace torusq::cli {

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

nlohmann::json report_json(const SuiteResult& result, const RunConfig& config) {
  nlohmann::json j;
  j["suite"] = result.suite;
  j["pass"] = result.pass();
  j["config"] = to_json(config);
  j["residuals"] = nlohmann::json::array();
  for (const auto& r : result.residuals)
    j["residuals"].push_back({{"check", r.check},
                              {"value", r.value},
                              {"tolerance", r.tolerance},
                              {"bound", r.bound == Bound::Upper ? "upper" : "lower"},
                              {"pass", r.pass()}});
  j["artifacts"] = nlohmann::json::array();
  for (const auto& a : result.artifacts) j["artifacts"].push_back(a.name);
  j["details"] = result.details;
  return j;
}

std::string residuals_csv(const SuiteResult& result) {
  std::ostringstream os;
  os << "check,value,tolerance,pass\n";
  for (const auto& r : result.residuals)
    os << csv_field(r.check) << ',' << format_double(r.value) << ',' << format_double(r.tolerance) << ','
       << (r.pass() ? "true" : "false") << '\n';
  return os.str();
}

std::vector<std::filesystem::path> emit_report(const SuiteResult& result, const RunConfig& config) {
  std::vector<std::filesystem::path> written;
  const auto put = [&](const std::filesystem::path& path, const std::string& contents) {
    write_file(path, contents);
    written.push_back(path);
  };
  put(config.out / "report.json", report_json(result, config).dump(2) + "\n");
  put(config.out / "residuals.csv", residuals_csv(result));
  for (const auto& a : result.artifacts) put(config.out / a.name, a.contents);
  return written;
}

}  // namespace torusq::cli
