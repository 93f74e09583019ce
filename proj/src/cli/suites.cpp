#include "torusq/cli/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "torusq/commutant.hpp"
#include "torusq/grid_oracle.hpp"
#include "torusq/interior.hpp"
#include "torusq/io.hpp"
#include "torusq/prequant.hpp"

namespace torusq::cli {

namespace {

std::vector<FourierMode> modes_up_to(int degree) {
  std::vector<FourierMode> out;
  for (int m = -degree; m <= degree; ++m)
    for (int n = -degree; n <= degree; ++n) out.push_back({m, n});
  return out;
}

template <class Write>
std::string render(Write&& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

void add_matrix_artifact(SuiteResult& result, const std::string& stem, const OperatorMatrix& op,
                         const TrigPoly* observable = nullptr) {
  result.artifacts.push_back({stem + ".csv", render([&](std::ostream& os) { write_csv(os, op); })});
  result.artifacts.push_back({stem + ".json", matrix_sidecar(op, observable).dump(2) + "\n"});
}

int commutant_margin_for(const RunConfig& c, int degree) {
  return c.commutant_margin ? *c.commutant_margin : default_commutant_margin(degree);
}

Eigen::MatrixXcd interior_commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, Eigen::Index block,
                                     int margin) {
  return interior_product(a, b, block, margin) - interior_product(b, a, block, margin);
}

SuiteResult dirac_suite(const RunConfig& c) {
  SuiteResult result{"dirac"};
  const ChernLevel level(c.n);
  const BasisPtr basis = make_basis(c.max_degree, c.quadrature);
  const int margin = *c.margin;
  const double tol = c.threshold("dirac");
  PrequantAssembler q(level, basis);

  const OperatorMatrix one = q.assemble(TrigPoly::constant(1.0));
  result.residuals.push_back(
      {"Q(1) = I", (one.matrix - Eigen::MatrixXcd::Identity(one.matrix.rows(), one.matrix.cols())).cwiseAbs().maxCoeff(),
       0.0});

  const auto modes = modes_up_to(c.degree_max);
  double worst = 0.0;
  std::string worst_pair;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const OperatorMatrix a = q.monomial(modes[i]);
    const OperatorMatrix adj = q.monomial({-modes[i].m, -modes[i].n});
    result.residuals.push_back({"adjoint " + mode_label(modes[i]), interior_compare(a.adjoint(), adj, margin), tol});
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      const OperatorMatrix b = q.monomial(modes[j]);
      const TrigPoly bracket =
          poisson_bracket(TrigPoly::monomial(modes[i].m, modes[i].n), TrigPoly::monomial(modes[j].m, modes[j].n), level);
      const Eigen::MatrixXcd lhs = interior_block(q.assemble(bracket).matrix, basis->size(), margin);
      const Eigen::MatrixXcd rhs =
          Complex(0.0, kTwoPi) * interior_commutator(a.matrix, b.matrix, basis->size(), margin);
      const double value = (lhs - rhs).cwiseAbs().maxCoeff();
      const std::string label = "bracket " + mode_label(modes[i]) + " " + mode_label(modes[j]);
      result.residuals.push_back({label, value, tol});
      if (value > worst) {
        worst = value;
        worst_pair = label;
      }
    }
  }
  result.details = {{"pairs", modes.size() * (modes.size() - 1) / 2}, {"worst_bracket", worst_pair},
                    {"worst_bracket_residual", worst}};
  return result;
}

SuiteResult heisenberg_suite(const RunConfig& c) {
  SuiteResult result{"heisenberg"};
  const ChernLevel level(c.n);
  const BasisPtr basis = make_basis(c.max_degree, c.quadrature);
  const int margin = *c.margin;
  const HeisenbergOps h = heisenberg_ops(level, basis);
  result.residuals.push_back(
      {"[X,Y] - Z", interior_compare(commutator(h.x, h.y), h.z, margin), c.threshold("heisenberg_xy")});
  const OperatorMatrix zero = Complex(0.0) * h.z;
  result.residuals.push_back(
      {"[X,Z]", interior_compare(commutator(h.x, h.z), zero, margin), c.threshold("heisenberg_central")});
  result.residuals.push_back(
      {"[Y,Z]", interior_compare(commutator(h.y, h.z), zero, margin), c.threshold("heisenberg_central")});
  add_matrix_artifact(result, "heisenberg_X", h.x);
  add_matrix_artifact(result, "heisenberg_Y", h.y);
  add_matrix_artifact(result, "heisenberg_Z", h.z);
  return result;
}

SuiteResult zak_suite(const RunConfig& c) {
  SuiteResult result{"zak"};
  const ChernLevel level(c.n);
  const BasisPtr basis = make_basis(c.max_degree, c.quadrature);
  const GridParams grid = c.grid();
  std::mt19937_64 rng(c.seed);

  double isometry = 0.0, roundtrip = 0.0, quasi = 0.0;
  const auto round_trip = [&](const ZakSection& s, const GridSection& g) {
    roundtrip = std::max(roundtrip, (analyze(g, basis, *c.window).coefficients() - s.coefficients()).cwiseAbs().maxCoeff());
    quasi = std::max(quasi, quasiperiodicity_residual(g));
  };
  std::optional<ZakSection> first;
  for (int p = 0; p < c.zak_pairs; ++p) {
    const ZakSection a = random_tail_light(level, basis, *c.tail_cap, rng);
    const ZakSection b = random_tail_light(level, basis, *c.tail_cap, rng);
    const GridSection ga = synthesize(a, grid), gb = synthesize(b, grid);
    isometry = std::max(isometry, std::abs(grid_inner_product(ga, gb) - inner_product(a, b)));
    isometry = std::max(isometry, std::abs(grid_inner_product(ga, ga) - inner_product(a, a)));
    round_trip(a, ga);
    round_trip(b, gb);
    if (!first) first = a;
  }
  result.residuals.push_back({"isometry", isometry, c.threshold("zak_isometry")});
  result.residuals.push_back({"round trip", roundtrip, c.threshold("zak_roundtrip")});
  result.residuals.push_back({"synthesized quasi-periodicity", quasi, c.threshold("quasi_periodicity")});

  // X̂, Ŷ on coefficients against the same operators applied to samples.
  const ZakSection& s = *first;
  const GridSection phi = synthesize(s, grid);
  const HeisenbergOps h = heisenberg_ops(level, basis);
  result.residuals.push_back(
      {"intertwining X", max_abs_diff(synthesize(apply(h.x, s), grid), oracle::apply_heisenberg_x(phi)),
       c.threshold("intertwining")});
  result.residuals.push_back(
      {"intertwining Y", max_abs_diff(synthesize(apply(h.y, s), grid), oracle::apply_heisenberg_y(phi)),
       c.threshold("intertwining")});

  // Matrix path vs pointwise prequantum formula, on a resolving truncation.
  const BasisPtr fine = make_basis(c.oracle_degree);
  const ZakSection probe = random_tail_light(level, fine, c.oracle_tail_cap, rng);
  const GridSection probe_grid = synthesize(probe, grid);
  PrequantAssembler q(level, fine);
  for (const FourierMode mode : modes_up_to(c.degree_max)) {
    const GridSection matrix_path = synthesize(apply(q.monomial(mode), probe), grid);
    const GridSection direct = oracle::apply_prequantum(TrigPoly::monomial(mode.m, mode.n), probe_grid);
    result.residuals.push_back({"oracle " + mode_label(mode), max_abs_diff(matrix_path, direct), c.threshold("oracle")});
  }

  result.artifacts.push_back({"zak_section.csv", render([&](std::ostream& os) { write_csv(os, s); })});
  result.artifacts.push_back({"zak_section_grid.csv", render([&](std::ostream& os) { write_csv(os, phi); })});
  result.details = {{"pairs", c.zak_pairs},
                    {"tail_cap", *c.tail_cap},
                    {"oracle_degree", c.oracle_degree},
                    {"oracle_tail_cap", c.oracle_tail_cap}};
  return result;
}

SuiteResult identities_suite(const RunConfig& c) {
  SuiteResult result{"prequant-identities"};
  const ChernLevel level(1);
  const BasisPtr basis = make_basis(c.max_degree, c.quadrature);
  const Eigen::Index size = basis->size();
  const int margin = *c.margin;
  const double tol = c.threshold("identities");
  PrequantAssembler q(level, basis);

  const Eigen::MatrixXcd a = q.monomial({1, 0}).matrix;
  const Eigen::MatrixXcd b = q.monomial({0, 1}).matrix;
  const Eigen::MatrixXcd x = primitive_matrix(basis, primitive::Position{}).matrix;
  const Eigen::MatrixXcd d = primitive_matrix(basis, primitive::Derivative{}).matrix;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(size, size);
  const Eigen::MatrixXcd x2 = x * x, d2 = d * d;

  const auto compare = [&](const std::string& label, const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs) {
    result.residuals.push_back({label, (lhs - interior_block(rhs, size, margin)).cwiseAbs().maxCoeff(), tol});
  };
  compare("A*A = I + 4pi^2 x^2", interior_product(a.adjoint(), a, size, margin), id + 4.0 * kPi * kPi * x2);
  compare("B*B = I - d^2", interior_product(b.adjoint(), b, size, margin), id - d2);
  compare("[d^2, x^2] = 4x d + 2", interior_commutator(d2, x2, size, margin), 4.0 * x * d + 2.0 * id);

  Eigen::VectorXcd samples(basis->quadrature_order());
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    const double v = basis->nodes()(i);
    samples(i) = Complex(0.0, 2.0) * (std::sin(kTwoPi * v) - kTwoPi * v * std::cos(kTwoPi * v));
  }
  compare("A - A* = 2i(sin 2pi x - 2pi x cos 2pi x)", interior_block(Eigen::MatrixXcd(a - a.adjoint()), size, margin),
          basis->multiplier(samples));

  const TrigPoly fa = TrigPoly::monomial(1, 0);
  add_matrix_artifact(result, "A", q.monomial({1, 0}), &fa);
  result.details = {{"N", 1}};
  return result;
}

SuiteResult go_theorem_suite(const RunConfig& c) {
  SuiteResult result{"go-theorem"};
  const CommutantReport report =
      convergence_study(complete_set_FN(), ChernLevel(c.n), c.d_list,
                        [&](int degree) { return commutant_margin_for(c, degree); }, c.threshold("commutant"));
  for (const auto& e : report.entries) {
    const std::string tag = " D=" + std::to_string(e.max_degree);
    result.residuals.push_back({"commutant dimension excess" + tag, std::abs(e.estimated_dim - 1.0), 0.0});
    result.residuals.push_back({"commutant gap ratio" + tag, e.gap_ratio, c.threshold("commutant_gap"), Bound::Lower});
  }
  result.details = to_json(report, "go-theorem");
  return result;
}

SuiteResult reducibility_suite(const RunConfig& c) {
  SuiteResult result{"reducibility"};
  const ChernLevel level(c.n);
  const int degree = c.d_list.front();
  const BasisPtr basis = make_basis(degree);
  const ReducibilityReport report =
      reducibility_check(level, basis, commutant_margin_for(c, degree), c.threshold("commutant"));
  const auto ops = complete_set_FN().build(level, basis);
  for (std::size_t i = 0; i < report.per_operator_residuals.size(); ++i)
    result.residuals.push_back(
        {"[" + ops[i].label + ", P_N]", report.per_operator_residuals[i], c.threshold("projector")});
  result.residuals.push_back({"commutant dimension", static_cast<double>(report.commutant.estimated_dim),
                              static_cast<double>(level.components()), Bound::Lower});
  result.details = to_json(report.commutant, "reducibility", c.n, "F_N");
  result.details["projector_residual"] = report.projector_residual;
  return result;
}

SuiteResult bad_operator_suite(const RunConfig& c) {
  SuiteResult result{"bad-operator"};
  const ChernLevel level(c.n);
  const BasisPtr basis = make_basis(c.max_degree, c.quadrature);
  const GridParams grid = c.grid();
  const ZakSection h0 = ZakSection::unit(level, basis, 0, 0);

  const GridSection qx = apply_bad_operator(h0, BadOperator::QX, grid);
  result.residuals.push_back(
      {"Q(x) h0 quasi-periodicity", quasiperiodicity_residual(qx), c.threshold("bad_operator"), Bound::Lower});
  result.residuals.push_back({"Q(y) h0 quasi-periodicity", bad_operator_residual(h0, BadOperator::QY, grid),
                              c.threshold("bad_operator"), Bound::Lower});

  PrequantAssembler q(level, basis);
  for (const FourierMode mode : modes_up_to(c.degree_max))
    result.residuals.push_back({"Q" + mode_label(mode) + " h0 quasi-periodicity",
                                quasiperiodicity_residual(synthesize(apply(q.monomial(mode), h0), grid)),
                                c.threshold("quasi_periodicity")});
  result.artifacts.push_back({"bad_Qx_h0_grid.csv", render([&](std::ostream& os) { write_csv(os, qx); })});
  return result;
}

SuiteResult all_suites(const RunConfig& c) {
  SuiteResult result{"all"};
  for (const auto& name : suite_names()) {
    if (name == "all") continue;
    SuiteResult sub = run_suite(name, c);
    for (auto& r : sub.residuals) {
      r.check = name + ": " + r.check;
      result.residuals.push_back(std::move(r));
    }
    for (auto& a : sub.artifacts) result.artifacts.push_back({name + "/" + a.name, std::move(a.contents)});
    result.details[name] = {{"pass", sub.pass()}, {"details", std::move(sub.details)}};
  }
  return result;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.pass(); });
}

double SuiteResult::max_residual() const {
  double worst = 0.0;
  for (const auto& r : residuals)
    if (r.bound == Bound::Upper) worst = std::max(worst, r.value);
  return worst;
}

std::string mode_label(FourierMode mode) {
  return "e(" + std::to_string(mode.m) + "," + std::to_string(mode.n) + ")";
}

ZakSection random_tail_light(ChernLevel level, const BasisPtr& basis, int cap, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ZakSection s = ZakSection::zero(level, basis);
  Eigen::VectorXcd c = s.coefficients();
  for (int r = 0; r < level.components(); ++r)
    for (int d = 0; d <= std::min(cap, basis->max_degree()); ++d) {
      const double re = normal(rng);
      const double im = normal(rng);
      c(r * basis->size() + d) = Complex(re, im);
    }
  c.normalize();
  return {level, basis, std::move(c)};
}

SuiteResult run_suite(const std::string& name, const RunConfig& config) {
  static const std::map<std::string, std::function<SuiteResult(const RunConfig&)>> table{
      {"dirac", dirac_suite},           {"heisenberg", heisenberg_suite},
      {"zak", zak_suite},               {"prequant-identities", identities_suite},
      {"go-theorem", go_theorem_suite}, {"reducibility", reducibility_suite},
      {"bad-operator", bad_operator_suite}, {"all", all_suites},
  };
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown suite '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result = it->second(config);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace torusq::cli
