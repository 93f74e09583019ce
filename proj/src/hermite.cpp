#include "torusq/hermite.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "torusq/interior.hpp"

namespace torusq {

namespace {

// Fills out(0..D) with h_d(v). The recurrence runs on h_d·e^{v²/2} with a
// running log scale, so large |v| where h_0 underflows still gives the
// representable high-degree values.
void hermite_column(int max_degree, double v, double* out) {
  constexpr double kRescale = 1e-150;
  const double log_rescale = std::log(kRescale);
  double log_scale = -0.5 * v * v;
  double prev = std::pow(kPi, -0.25);
  out[0] = prev * std::exp(log_scale);
  if (max_degree == 0) return;
  double cur = std::sqrt(2.0) * v * prev;
  out[1] = cur * std::exp(log_scale);
  for (int d = 2; d <= max_degree; ++d) {
    const double next = std::sqrt(2.0 / d) * v * cur - std::sqrt((d - 1.0) / d) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1.0 / kRescale) {
      prev *= kRescale;
      cur *= kRescale;
      log_scale -= log_rescale;
    }
    out[d] = cur * std::exp(log_scale);
  }
}

}  // namespace

Eigen::VectorXd hermite_functions(int max_degree, double v) {
  if (max_degree < 0) throw std::invalid_argument("hermite_functions: negative degree");
  Eigen::VectorXd h(max_degree + 1);
  hermite_column(max_degree, v, h.data());
  return h;
}

Eigen::MatrixXd hermite_table(int max_degree, const Eigen::Ref<const Eigen::VectorXd>& points) {
  if (max_degree < 0) throw std::invalid_argument("hermite_table: negative degree");
  Eigen::MatrixXd table(max_degree + 1, points.size());
  for (Eigen::Index i = 0; i < points.size(); ++i) hermite_column(max_degree, points(i), table.col(i).data());
  return table;
}

QuadratureRule gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be positive");
  // Jacobi matrix of the Hermite recurrence for weight e^{-v^2}.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  for (int k = 1; k < order; ++k) sub(k - 1) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  Eigen::VectorXd nodes = eig.eigenvalues();

  // Newton polish on h_Q, using h_Q'(v) = sqrt(2Q) h_{Q-1}(v) at a zero.
  Eigen::VectorXd h(order + 1);
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    for (int it = 0; it < 3; ++it) {
      hermite_column(order, nodes(i), h.data());
      if (h(order - 1) == 0.0) break;
      nodes(i) -= h(order) / (std::sqrt(2.0 * order) * h(order - 1));
    }
  }
  for (int i = 0; i < order / 2; ++i) {
    const double v = 0.5 * (nodes(order - 1 - i) - nodes(i));
    nodes(i) = -v;
    nodes(order - 1 - i) = v;
  }
  if (order % 2 == 1) nodes(order / 2) = 0.0;

  // Christoffel weights times e^{v^2}: 1 / sum_{d<Q} h_d(v)^2.
  Eigen::VectorXd weights(order);
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    hermite_column(order - 1, nodes(i), h.data());
    weights(i) = 1.0 / h.head(order).squaredNorm();
  }
  return {std::move(nodes), std::move(weights)};
}

HermiteBasis::HermiteBasis(int max_degree, int quadrature_order) : max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("HermiteBasis: D must be >= 0");
  if (quadrature_order < min_quadrature_order(max_degree))
    throw std::invalid_argument("HermiteBasis: quadrature order " + std::to_string(quadrature_order) +
                                " below the floor 2D+16 = " + std::to_string(min_quadrature_order(max_degree)));
  rule_ = gauss_hermite(quadrature_order);
  table_ = hermite_table(max_degree, rule_.nodes);
}

Eigen::MatrixXcd HermiteBasis::multiplier(const Eigen::Ref<const Eigen::VectorXcd>& samples) const {
  if (samples.size() != rule_.nodes.size()) throw std::invalid_argument("multiplier: sample count != Q");
  const Eigen::MatrixXcd weighted =
      table_.cast<Complex>() * (rule_.weights.cast<Complex>().cwiseProduct(samples)).asDiagonal();
  return weighted * table_.transpose().cast<Complex>();
}

BasisPtr make_basis(int max_degree, std::optional<int> quadrature_order) {
  return std::make_shared<const HermiteBasis>(
      max_degree, quadrature_order.value_or(HermiteBasis::min_quadrature_order(max_degree)));
}

namespace {

struct PrimitiveBuilder {
  const HermiteBasis& basis;

  LineOperator operator()(const primitive::Position&) const {
    const Eigen::Index n = basis.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index d = 0; d + 1 < n; ++d) m(d, d + 1) = m(d + 1, d) = std::sqrt((d + 1) / 2.0);
    return {std::move(m), "position", nullptr, true};
  }

  LineOperator operator()(const primitive::Derivative&) const {
    const Eigen::Index n = basis.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index d = 0; d + 1 < n; ++d) {
      m(d, d + 1) = std::sqrt((d + 1) / 2.0);
      m(d + 1, d) = -std::sqrt((d + 1) / 2.0);
    }
    return {std::move(m), "derivative", nullptr, false};
  }

  LineOperator operator()(const primitive::Shift& s) const {
    const std::string label = "shift(" + std::to_string(s.t) + ")";
    if (s.t == 0.0) return {Eigen::MatrixXcd::Identity(basis.size(), basis.size()), label, nullptr, true};
    const Eigen::VectorXd shifted = basis.nodes().array() - s.t;
    const Eigen::MatrixXd moved = hermite_table(basis.max_degree(), shifted);
    const Eigen::MatrixXd m = basis.table() * basis.weights().asDiagonal() * moved.transpose();
    return {m.cast<Complex>(), label, nullptr, false};
  }

  LineOperator operator()(const primitive::PlaneWave& p) const {
    const std::string label = "planewave(" + std::to_string(p.lambda) + ")";
    if (p.lambda == 0.0) return {Eigen::MatrixXcd::Identity(basis.size(), basis.size()), label, nullptr, true};
    Eigen::VectorXcd samples(basis.quadrature_order());
    for (Eigen::Index i = 0; i < samples.size(); ++i) samples(i) = std::polar(1.0, p.lambda * basis.nodes()(i));
    return {basis.multiplier(samples), label, nullptr, false};
  }

  LineOperator operator()(const primitive::Multiplier& g) const {
    Eigen::VectorXcd samples(basis.quadrature_order());
    for (Eigen::Index i = 0; i < samples.size(); ++i) samples(i) = g.fn(basis.nodes()(i));
    return {basis.multiplier(samples), "multiplier(" + g.name + ")", nullptr, false};
  }
};

}  // namespace

LineOperator primitive_matrix(const BasisPtr& basis, const Primitive& kind) {
  if (!basis) throw std::invalid_argument("primitive_matrix: null basis");
  LineOperator op = std::visit(PrimitiveBuilder{*basis}, kind);
  op.basis = basis;
  return op;
}

double interior_compare(const LineOperator& a, const LineOperator& b, int margin) {
  if (!same_basis(a.basis, b.basis) || a.matrix.rows() != b.matrix.rows())
    throw std::invalid_argument("interior_compare: operators live on different bases");
  const auto size = a.matrix.rows();
  if (margin <= 0 || margin >= size) throw std::invalid_argument("interior_compare: need 0 < margin < D+1");
  return interior_residual(a.matrix, b.matrix, size, margin);
}

}  // namespace torusq
