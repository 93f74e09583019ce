#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "torusq/cli/config.hpp"
#include "torusq/cli/report.hpp"
#include "torusq/cli/suites.hpp"
#include "torusq/commutant.hpp"
#include "torusq/io.hpp"

namespace {

using namespace torusq;
using namespace torusq::cli;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Overrides {
  std::string config_path;
  std::optional<int> n, degree_max, hermite_d, quad, window, margin, commutant_margin;
  std::optional<std::string> grid, d_list, out;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "flat JSON config; flags override its values");
  cmd->add_option("--n", o.n, "Chern level N (nonzero)");
  cmd->add_option("--hermite-D", o.hermite_d, "max Hermite degree D");
  cmd->add_option("--quad", o.quad, "Gauss-Hermite order (>= 2D+16)");
  cmd->add_option("--d-list", o.d_list, "truncations for commutant studies, e.g. 24,32,40");
  cmd->add_option("--out", o.out, "output directory");
}

RunConfig build_config(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  if (o.n) c.n = *o.n;
  if (o.degree_max) c.degree_max = *o.degree_max;
  if (o.hermite_d) c.max_degree = *o.hermite_d;
  if (o.quad) c.quadrature = *o.quad;
  if (o.grid) std::tie(c.gx, c.gy) = parse_grid(*o.grid);
  if (o.window) c.window = *o.window;
  if (o.margin) c.margin = *o.margin;
  if (o.commutant_margin) c.commutant_margin = *o.commutant_margin;
  if (o.d_list) c.d_list = parse_int_list(*o.d_list);
  if (o.seed) c.seed = *o.seed;
  if (o.threshold) c.thresholds["commutant"] = *o.threshold;
  if (o.out) c.out = *o.out;
  return resolve(c);
}

int run_verify(const std::string& suite, const Overrides& o) {
  const RunConfig config = build_config(o);
  const SuiteResult result = run_suite(suite, config);
  emit_report(result, config);
  int failures = 0;
  for (const auto& r : result.residuals) {
    if (r.pass()) continue;
    ++failures;
    std::cout << "FAIL  " << r.check << "  value " << r.value << (r.bound == Bound::Upper ? " > " : " < ")
              << r.tolerance << '\n';
  }
  std::cout << suite << ": " << (result.pass() ? "PASS" : "FAIL") << "  (" << result.residuals.size() << " checks, "
            << failures << " failed, max residual " << result.max_residual() << ", " << std::fixed
            << std::setprecision(2) << result.wall_seconds << " s)\n"
            << "report: " << (config.out / "report.json").string() << '\n';
  return result.pass() ? 0 : kExitFail;
}

std::vector<TrigPoly> read_observables(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read observable file " + path);
  std::vector<TrigPoly> out;
  std::string line, block;
  const auto flush = [&] {
    if (block.find_first_not_of(" \t\r\n") != std::string::npos) {
      try {
        out.push_back(from_text(block));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
      }
    }
    block.clear();
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      flush();
    else
      block += line + '\n';
  }
  flush();
  if (out.empty()) throw ConfigError(path + ": no observables");
  return out;
}

int run_commutant(const std::string& set_spec, const Overrides& o) {
  const RunConfig config = build_config(o);
  OperatorSet set;
  if (set_spec == "FN")
    set = complete_set_FN();
  else if (set_spec.rfind("custom:", 0) == 0)
    set = observable_set(set_spec, read_observables(set_spec.substr(7)));
  else
    throw ConfigError("--set must be FN or custom:<file>");

  const CommutantReport report = convergence_study(
      set, ChernLevel(config.n), config.d_list,
      [&](int degree) { return config.commutant_margin ? *config.commutant_margin : default_commutant_margin(degree); },
      config.threshold("commutant"));

  nlohmann::json j;
  j["command"] = "commutant";
  j["config"] = to_json(config);
  j["report"] = to_json(report, "commutant");
  write_file(config.out / "report.json", j.dump(2) + "\n");

  bool confident = true;
  for (const auto& e : report.entries) {
    confident = confident && e.confident;
    std::cout << "D=" << e.max_degree << "  dim " << e.estimated_dim << "  gap " << e.gap_ratio
              << (e.confident ? "" : "  (not confident)") << '\n';
  }
  std::cout << "stable dimension: " << (report.stable_dimension ? "yes" : "no")
            << "\nreport: " << (config.out / "report.json").string() << '\n';
  return confident && report.stable_dimension ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prequantum operators on the torus: verification suites and commutant estimates"};
  app.require_subcommand(1);

  Overrides verify_opts;
  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  add_common(verify, verify_opts);
  verify->add_option("--degree-max", verify_opts.degree_max, "largest |m|,|n| of the monomials exercised");
  verify->add_option("--grid", verify_opts.grid, "sampling grid GXxGY (GY rounded up to a multiple of 4|N|)");
  verify->add_option("--window", verify_opts.window, "Zak window K");
  verify->add_option("--margin", verify_opts.margin, "interior margin for residuals");
  verify->add_option("--seed", verify_opts.seed, "seed for random sections");

  Overrides commutant_opts;
  std::string set_spec = "FN";
  auto* commutant = app.add_subcommand("commutant", "estimate the commutant dimension of an operator set");
  commutant->add_option("--set", set_spec, "FN or custom:<file> (trig polys separated by blank lines)");
  add_common(commutant, commutant_opts);
  commutant->add_option("--margin", commutant_opts.commutant_margin, "interior margin (default D/4)");
  commutant->add_option("--threshold", commutant_opts.threshold, "relative singular value threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (verify->parsed()) return run_verify(suite, verify_opts);
    return run_commutant(set_spec, commutant_opts);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitConfig;
}
