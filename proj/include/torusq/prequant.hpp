#pragma once

#include <map>

#include "torusq/hermite.hpp"
#include "torusq/operator_matrix.hpp"
#include "torusq/trigpoly.hpp"
#include "torusq/zakspace.hpp"

namespace torusq {

/**
 * Builds prequantum operators Q_N(f) for one (level, basis) pair, caching the
 * Hermite primitives (position, derivative, integer shifts, plane waves).
 *
 * For f = e^{2πi(mx+ny)}, component r of a Zak section is sent to component
 * r' = (r − n) mod |N| with integer offset t = (r − n − r')/N:
 *
 *   ψ̃_{r'}(v) = e^{2πimv} [ (1 − 2πim(v − t + r/N)) ψ_r(v − t) − (n/N) ψ_r'(v − t) ].
 *
 * Not thread-safe (mutable caches); use one instance per thread.
 */
class PrequantAssembler {
 public:
  PrequantAssembler(ChernLevel level, BasisPtr basis);

  ChernLevel level() const { return level_; }
  const BasisPtr& basis() const { return basis_; }

  OperatorMatrix monomial(FourierMode mode);
  /// Σ coeff(m,n) · monomial(m,n), summed in mode order.
  OperatorMatrix assemble(const TrigPoly& f);

 private:
  const Eigen::MatrixXcd& shift(int t);
  const Eigen::MatrixXcd& plane_wave(int m);

  ChernLevel level_;
  BasisPtr basis_;
  Eigen::MatrixXcd position_;
  Eigen::MatrixXcd derivative_;
  std::map<int, Eigen::MatrixXcd> shifts_;
  std::map<int, Eigen::MatrixXcd> plane_waves_;
  std::map<FourierMode, OperatorMatrix> monomials_;
};

OperatorMatrix monomial_block(ChernLevel level, const BasisPtr& basis, FourierMode mode);
OperatorMatrix assemble(ChernLevel level, const BasisPtr& basis, const TrigPoly& f);

/// X̂ = (1/2πi)(∂_y − 2πiNx), Ŷ = −(1/2πi)∂_x, Ẑ = −N/(2πi), pulled back to Zak coordinates.
struct HeisenbergOps {
  OperatorMatrix x;
  OperatorMatrix y;
  OperatorMatrix z;
};

HeisenbergOps heisenberg_ops(ChernLevel level, const BasisPtr& basis);

/// The would-be quantizations of the coordinate functions x and y.
enum class BadOperator { QX, QY };

/**
 * Applies Q(x) = (1/2πiN)∂_y or Q(y) = −(1/2πiN)(∂_x − 2πiNy) to the
 * synthesized grid of `sample` using spectral differentiation.
 */
GridSection apply_bad_operator(const ZakSection& sample, BadOperator which, const GridParams& grid = {});

/// Quasi-periodicity residual of apply_bad_operator; order one means the result left Γ(L_N).
double bad_operator_residual(const ZakSection& sample, BadOperator which, const GridParams& grid = {});

}  // namespace torusq
