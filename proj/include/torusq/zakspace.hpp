#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <vector>

#include "torusq/hermite.hpp"
#include "torusq/operator_matrix.hpp"
#include "torusq/trigpoly.hpp"

namespace torusq {

/// Window argument meaning "pick from the truncation": see default_window.
inline constexpr int kAutoWindow = 0;

/**
 * Smallest safe Zak window for degree-D coefficients: h_D is negligible
 * beyond √(2D+1) + 6, so terms ψ(x+k) with |k| above that are dropped.
 * Never below 12.
 */
inline int default_window(int max_degree) {
  return std::max(12, static_cast<int>(std::ceil(std::sqrt(2.0 * max_degree + 1.0))) + 6);
}

struct GridParams {
  int gx = 128;
  int gy = 128;
  int window = kAutoWindow;
};

/// Smallest multiple of 4|N| that is ≥ gy.
inline int adjusted_gy(int gy, ChernLevel level) {
  const int step = 4 * level.components();
  return ((std::max(gy, 1) + step - 1) / step) * step;
}

inline GridParams adjusted(GridParams p, ChernLevel level) {
  p.gy = adjusted_gy(p.gy, level);
  return p;
}

/**
 * Element of H_N in Zak coordinates: |N| Hermite coefficient vectors ψ_r,
 * stacked as one vector (component r occupies [r(D+1), (r+1)(D+1))).
 * The section is φ(x,y) = Σ_r Σ_k ψ_r(x+k) e^{-2πi(r+kN)y}.
 */
class ZakSection {
 public:
  ZakSection(ChernLevel level, BasisPtr basis, Eigen::VectorXcd coefficients);

  static ZakSection zero(ChernLevel level, BasisPtr basis);
  /// Unit vector in component r, degree d.
  static ZakSection unit(ChernLevel level, BasisPtr basis, int component, int degree);

  ChernLevel level() const { return level_; }
  const BasisPtr& basis() const { return basis_; }
  const Eigen::VectorXcd& coefficients() const { return coefficients_; }
  int components() const { return level_.components(); }

  auto component(int r) const { return coefficients_.segment(r * basis_->size(), basis_->size()); }

  double norm() const { return coefficients_.norm(); }

 private:
  ChernLevel level_;
  BasisPtr basis_;
  Eigen::VectorXcd coefficients_;
};

/**
 * Samples of a section on the closed grid x_i = i/gx (i = 0..gx),
 * y_j = j/gy (j = 0..gy). The extra row and column carry the boundary
 * values needed to measure quasi-periodicity; integrals use i < gx, j < gy.
 */
class GridSection {
 public:
  /// Zero section. Throws unless gx ≥ 1 and gy is a positive multiple of 4|N|.
  GridSection(ChernLevel level, int gx, int gy);
  GridSection(ChernLevel level, Eigen::MatrixXcd values);

  ChernLevel level() const { return level_; }
  int gx() const { return static_cast<int>(values_.rows()) - 1; }
  int gy() const { return static_cast<int>(values_.cols()) - 1; }
  double x(Eigen::Index i) const { return static_cast<double>(i) / gx(); }
  double y(Eigen::Index j) const { return static_cast<double>(j) / gy(); }

  const Eigen::MatrixXcd& values() const { return values_; }
  Eigen::MatrixXcd& values() { return values_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

 private:
  void validate() const;

  ChernLevel level_;
  Eigen::MatrixXcd values_;
};

/// φ(x,y) = Σ_r Σ_{|k|≤window} ψ_r(x+k) e^{-2πi(r+kN)y} on the grid.
GridSection synthesize(const ZakSection& s, int gx, int gy, int window = kAutoWindow);
inline GridSection synthesize(const ZakSection& s, const GridParams& p) {
  return synthesize(s, p.gx, p.gy, p.window);
}

/**
 * Inverse of synthesize: ψ_r(x+k) = ∫₀¹ φ(x,y) e^{2πi(r+kN)y} dy (trapezoidal
 * in y), then Hermite projection of the regrouped samples on the uniform
 * v-grid. Throws std::invalid_argument if gy cannot resolve the window's
 * frequencies, and std::runtime_error if the Hermite tail (top min(8, D/2)
 * degrees) carries more than 1% of the energy.
 */
ZakSection analyze(const GridSection& g, const BasisPtr& basis, int window = kAutoWindow);

/// max_y |φ(1,y) − e^{2πiNy}φ(0,y)| + max_x |φ(x,1) − φ(x,0)|.
double quasiperiodicity_residual(const GridSection& g);

/// Σ_r <ψ_r^a, ψ_r^b>, conjugate-linear in a.
Complex inner_product(const ZakSection& a, const ZakSection& b);

/// Rectangle-rule ∫∫_{[0,1)²} conj(a) b dx dy.
Complex grid_inner_product(const GridSection& a, const GridSection& b);

/// Max |a − b| over every stored grid point.
double max_abs_diff(const GridSection& a, const GridSection& b);

/// Orthogonal projector onto P_N (period 1/N in y): keeps component r = 0.
OperatorMatrix projector_PN(ChernLevel level, const BasisPtr& basis);

ZakSection apply(const OperatorMatrix& op, const ZakSection& s);

/// ∂φ/∂y by FFT along y.
GridSection grid_d_dy(const GridSection& g);

/**
 * ∂φ/∂x by FFT of the x-periodic function e^{-2πiNxy}φ(x,y), then undoing
 * the twist. Valid for quasi-periodic data.
 */
GridSection grid_d_dx(const GridSection& g);

}  // namespace torusq
