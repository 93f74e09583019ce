#include "torusq/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "torusq/commutant.hpp"
#include "torusq/hermite.hpp"

namespace torusq::cli {

namespace {

int parse_int(std::string_view text, const std::string& what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError(what + ": '" + std::string(text) + "' is not an integer");
  return value;
}

template <class T>
T get(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

std::map<std::string, double> RunConfig::default_thresholds() {
  return {
      {"dirac", 1e-8},
      {"heisenberg_xy", 1e-10},
      {"heisenberg_central", 1e-14},
      {"zak_isometry", 1e-6},
      {"zak_roundtrip", 1e-8},
      {"intertwining", 1e-8},
      {"oracle", 1e-6},
      {"identities", 1e-8},
      {"commutant", kDefaultCommutantThreshold},
      {"commutant_gap", 1e3},
      {"projector", 1e-12},
      {"quasi_periodicity", 1e-8},
      {"bad_operator", 0.1},
  };
}

double RunConfig::threshold(const std::string& name) const {
  auto it = thresholds.find(name);
  if (it == thresholds.end()) throw ConfigError("unknown threshold '" + name + "'");
  return it->second;
}

RunConfig resolve(RunConfig c) {
  if (c.n == 0) throw ConfigError("N must be nonzero");
  if (c.max_degree < 4) throw ConfigError("hermite-D must be at least 4");
  const int qmin = HermiteBasis::min_quadrature_order(c.max_degree);
  if (!c.quadrature) c.quadrature = qmin;
  if (*c.quadrature < qmin)
    throw ConfigError("quad = " + std::to_string(*c.quadrature) + " is below 2D+16 = " + std::to_string(qmin));
  if (c.gx < 8 || c.gy < 8) throw ConfigError("grid dimensions must be at least 8");
  if (!c.window) c.window = default_window(c.max_degree);
  if (*c.window < 1) throw ConfigError("window K must be >= 1");
  c.gy = adjusted_gy(std::max(c.gy, 2 * std::abs(c.n) * (*c.window + 1) + 1), ChernLevel(c.n));
  if (!c.margin) c.margin = c.max_degree / 2;
  if (*c.margin < 1 || *c.margin > c.max_degree) throw ConfigError("margin must lie in [1, D]");
  if (c.commutant_margin && (*c.commutant_margin < 0 || *c.commutant_margin >= c.d_list.front()))
    throw ConfigError("commutant margin must lie in [0, min D-list)");
  if (c.degree_max < 0) throw ConfigError("degree-max must be >= 0");
  if (c.d_list.empty()) throw ConfigError("d-list must not be empty");
  for (std::size_t i = 0; i < c.d_list.size(); ++i) {
    if (c.d_list[i] < 4) throw ConfigError("d-list entries must be at least 4");
    if (i > 0 && c.d_list[i] <= c.d_list[i - 1]) throw ConfigError("d-list must be strictly increasing");
  }
  if (c.zak_pairs < 1) throw ConfigError("zak_pairs must be >= 1");
  if (!c.tail_cap) c.tail_cap = c.max_degree / 4;
  if (*c.tail_cap < 0 || *c.tail_cap > c.max_degree) throw ConfigError("tail_cap must lie in [0, D]");
  if (c.oracle_degree < 4) throw ConfigError("oracle_degree must be at least 4");
  if (c.oracle_tail_cap < 0 || c.oracle_tail_cap > c.oracle_degree)
    throw ConfigError("oracle_tail_cap must lie in [0, oracle_degree]");
  const auto defaults = RunConfig::default_thresholds();
  for (const auto& [name, value] : c.thresholds) {
    if (!defaults.contains(name)) throw ConfigError("unknown threshold '" + name + "'");
    if (!(value > 0.0)) throw ConfigError("threshold '" + name + "' must be positive");
  }
  for (const auto& [name, value] : defaults) c.thresholds.try_emplace(name, value);
  return c;
}

void apply_json(RunConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "n" || key == "N") {
      c.n = get<int>(value, key);
    } else if (key == "hermite_D" || key == "D") {
      c.max_degree = get<int>(value, key);
    } else if (key == "quad" || key == "Q") {
      if (value.is_null())
        c.quadrature.reset();
      else
        c.quadrature = get<int>(value, key);
    } else if (key == "grid") {
      if (value.is_string()) {
        std::tie(c.gx, c.gy) = parse_grid(value.get<std::string>());
      } else {
        const auto dims = get<std::vector<int>>(value, key);
        if (dims.size() != 2) throw ConfigError("config key 'grid' needs two entries");
        c.gx = dims[0];
        c.gy = dims[1];
      }
    } else if (key == "window" || key == "K") {
      if (value.is_null())
        c.window.reset();
      else
        c.window = get<int>(value, key);
    } else if (key == "margin") {
      c.margin = get<int>(value, key);
    } else if (key == "commutant_margin") {
      c.commutant_margin = get<int>(value, key);
    } else if (key == "degree_max") {
      c.degree_max = get<int>(value, key);
    } else if (key == "d_list") {
      c.d_list = value.is_string() ? parse_int_list(value.get<std::string>()) : get<std::vector<int>>(value, key);
    } else if (key == "seed") {
      c.seed = get<std::uint64_t>(value, key);
    } else if (key == "zak_pairs") {
      c.zak_pairs = get<int>(value, key);
    } else if (key == "tail_cap") {
      c.tail_cap = get<int>(value, key);
    } else if (key == "oracle_degree") {
      c.oracle_degree = get<int>(value, key);
    } else if (key == "oracle_tail_cap") {
      c.oracle_tail_cap = get<int>(value, key);
    } else if (key == "thresholds") {
      if (!value.is_object()) throw ConfigError("config key 'thresholds' must be an object");
      for (const auto& [name, t] : value.items()) c.thresholds[name] = get<double>(t, "thresholds." + name);
    } else if (key == "out") {
      c.out = get<std::string>(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  apply_json(base, j);
  return base;
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["n"] = c.n;
  j["hermite_D"] = c.max_degree;
  j["quad"] = c.quadrature ? nlohmann::json(*c.quadrature) : nlohmann::json(nullptr);
  j["grid"] = {c.gx, c.gy};
  j["window"] = c.window ? nlohmann::json(*c.window) : nlohmann::json(nullptr);
  j["margin"] = c.margin ? nlohmann::json(*c.margin) : nlohmann::json(nullptr);
  j["commutant_margin"] = c.commutant_margin ? nlohmann::json(*c.commutant_margin) : nlohmann::json("D/4");
  j["degree_max"] = c.degree_max;
  j["d_list"] = c.d_list;
  j["seed"] = c.seed;
  j["zak_pairs"] = c.zak_pairs;
  j["tail_cap"] = c.tail_cap ? nlohmann::json(*c.tail_cap) : nlohmann::json(nullptr);
  j["oracle_degree"] = c.oracle_degree;
  j["oracle_tail_cap"] = c.oracle_tail_cap;
  j["thresholds"] = c.thresholds;
  j["out"] = c.out.generic_string();
  return j;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("grid '" + text + "' must look like GXxGY");
  return {parse_int(std::string_view(text).substr(0, x), "grid"), parse_int(std::string_view(text).substr(x + 1), "grid")};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, "list"));
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

}  // namespace torusq::cli
