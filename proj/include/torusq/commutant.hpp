#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

#include "torusq/hermite.hpp"
#include "torusq/operator_matrix.hpp"
#include "torusq/trigpoly.hpp"

namespace torusq {

inline constexpr double kDefaultCommutantThreshold = 1e-6;
inline constexpr double kConfidentGap = 10.0;

/// Commutant estimate of one operator set at one truncation.
struct CommutantEntry {
  int max_degree = 0;
  int margin = 0;
  /// Size M' of the interior compression the constraints act on.
  Eigen::Index compressed_size = 0;
  /// Smallest singular values of T ↦ ([T, A_i])_i, largest first.
  std::vector<double> singular_values;
  double sigma_max = 0.0;
  int estimated_dim = 0;
  /// σ_{dim+1}/σ_{dim} in ascending order; +inf when nothing lies above the kernel.
  double gap_ratio = 0.0;
  double threshold = kDefaultCommutantThreshold;
  bool confident = false;
  /// Orthonormal (Frobenius) basis of the numerical commutant, if requested.
  std::vector<Eigen::MatrixXcd> basis;
};

/**
 * Estimates dim{T : [T, A_i] = 0 ∀i} on the interior compression (degrees
 * ≤ D − margin in every component block) of the given operators.
 *
 * The singular values of the stacked constraint map are obtained from the
 * Hermitian eigenproblem of its Gram matrix; the small ones are then
 * re-evaluated as ‖([T, A_i])_i‖_F on the unit eigenvectors, which restores
 * accuracy below √ε. When every operator is block diagonal the problem splits
 * exactly into one Sylvester system per block pair.
 *
 * Expects an adjoint-closed set. Throws on an empty set, mismatched spaces,
 * or a margin outside [0, D].
 */
CommutantEntry commutant_dimension(const std::vector<OperatorMatrix>& ops, int margin,
                                   double threshold = kDefaultCommutantThreshold, bool want_basis = false);

/// Lower-level entry point on already compressed square matrices of equal size.
CommutantEntry commutant_of_matrices(const std::vector<Eigen::MatrixXcd>& ops, Eigen::Index block_size,
                                     double threshold = kDefaultCommutantThreshold, bool want_basis = false);

/// ‖([t, A_i])_i‖_F for compressed operators.
double commutation_residual(const std::vector<Eigen::MatrixXcd>& ops, const Eigen::MatrixXcd& t);

/// Distance (Frobenius) from x to the span of an orthonormal family.
double distance_to_span(const std::vector<Eigen::MatrixXcd>& basis, const Eigen::MatrixXcd& x);

/// A named recipe producing an adjoint-closed operator set at a given truncation.
struct OperatorSet {
  std::string label;
  std::function<std::vector<OperatorMatrix>(ChernLevel, const BasisPtr&)> build;
};

/// {Q_N(e^{2πiNx}), its adjoint, Q_N(e^{2πiNy}), its adjoint}.
OperatorSet complete_set_FN();
/// {I}.
OperatorSet identity_set();
/// {Q_N(f), Q_N(f)^*} for every supplied observable.
OperatorSet observable_set(std::string label, std::vector<TrigPoly> observables);

struct CommutantReport {
  int level = 1;
  std::string set_label;
  double threshold = kDefaultCommutantThreshold;
  std::vector<CommutantEntry> entries;
  bool stable_dimension = false;
  bool gap_nondecreasing = false;
};

/// Default commutant margin rule: D/4.
inline int default_commutant_margin(int max_degree) { return max_degree / 4; }

CommutantReport convergence_study(const OperatorSet& set, ChernLevel level, const std::vector<int>& degrees,
                                  const std::function<int(int)>& margin_rule = default_commutant_margin,
                                  double threshold = kDefaultCommutantThreshold);

struct ReducibilityReport {
  int level = 1;
  int max_degree = 0;
  /// max_f ‖[Q_N(f), Π]‖_max over f ∈ F_N, on the full truncated matrices.
  double projector_residual = 0.0;
  std::vector<double> per_operator_residuals;
  CommutantEntry commutant;
};

ReducibilityReport reducibility_check(ChernLevel level, const BasisPtr& basis, int margin,
                                      double threshold = kDefaultCommutantThreshold);

}  // namespace torusq
