#pragma once

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "torusq/trigpoly.hpp"

namespace torusq {

/// h_0(v) .. h_D(v), orthonormal Hermite functions, by the normalized three-term recurrence.
Eigen::VectorXd hermite_functions(int max_degree, double v);

/// (D+1) x points.size() table of h_d(points_i).
Eigen::MatrixXd hermite_table(int max_degree, const Eigen::Ref<const Eigen::VectorXd>& points);

struct QuadratureRule {
  Eigen::VectorXd nodes;
  /// Weights for the Lebesgue measure: ∫ g(v) dv ≈ Σ weights_i g(v_i).
  /// Exact for g = polynomial of degree ≤ 2Q-1 times e^{-v²}.
  Eigen::VectorXd weights;
};

/// Q-point Gauss–Hermite rule (Golub–Welsch, Newton-polished, symmetrized).
QuadratureRule gauss_hermite(int order);

/**
 * Hermite-function basis h_0..h_D on the real line together with the
 * quadrature used to compute its operator matrices.
 */
class HermiteBasis {
 public:
  HermiteBasis(int max_degree, int quadrature_order);

  static int min_quadrature_order(int max_degree) { return 2 * max_degree + 16; }

  int max_degree() const { return max_degree_; }
  Eigen::Index size() const { return max_degree_ + 1; }
  int quadrature_order() const { return static_cast<int>(rule_.nodes.size()); }
  const Eigen::VectorXd& nodes() const { return rule_.nodes; }
  const Eigen::VectorXd& weights() const { return rule_.weights; }
  /// h_d(node_i), shape (D+1) x Q.
  const Eigen::MatrixXd& table() const { return table_; }

  /// Matrix of <h_a, g h_b> for g sampled at the nodes.
  Eigen::MatrixXcd multiplier(const Eigen::Ref<const Eigen::VectorXcd>& samples) const;

  bool operator==(const HermiteBasis& other) const {
    return max_degree_ == other.max_degree_ && quadrature_order() == other.quadrature_order();
  }

 private:
  int max_degree_;
  QuadratureRule rule_;
  Eigen::MatrixXd table_;
};

using BasisPtr = std::shared_ptr<const HermiteBasis>;

/// Throws std::invalid_argument if D < 0 or Q is below 2D+16.
BasisPtr make_basis(int max_degree, std::optional<int> quadrature_order = std::nullopt);

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) { return a == b || (a && b && *a == *b); }

namespace primitive {
struct Position {};
struct Derivative {};
/// (S_t ψ)(v) = ψ(v - t)
struct Shift {
  double t = 0.0;
};
/// multiplication by e^{iλv}
struct PlaneWave {
  double lambda = 0.0;
};
struct Multiplier {
  std::function<Complex(double)> fn;
  std::string name = "g";
};
}  // namespace primitive

using Primitive = std::variant<primitive::Position, primitive::Derivative, primitive::Shift,
                               primitive::PlaneWave, primitive::Multiplier>;

struct LineOperator {
  Eigen::MatrixXcd matrix;
  std::string label;
  BasisPtr basis;
  bool self_adjoint = false;
};

/**
 * Matrix of a primitive line operator in the Hermite basis.
 *
 * Position and Derivative come from the exact recurrences and are exactly
 * tridiagonal. Shift and PlaneWave are computed by quadrature, except that a
 * zero argument yields the exact identity.
 */
LineOperator primitive_matrix(const BasisPtr& basis, const Primitive& kind);

/// Max entry difference over Hermite degrees 0..D-margin. Requires 0 < margin < D+1.
double interior_compare(const LineOperator& a, const LineOperator& b, int margin);

}  // namespace torusq
