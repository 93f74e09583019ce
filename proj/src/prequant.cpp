#include "torusq/prequant.hpp"

#include <stdexcept>

namespace torusq {

namespace {

int wrap(int value, int period) {
  const int r = value % period;
  return r < 0 ? r + period : r;
}

}  // namespace

PrequantAssembler::PrequantAssembler(ChernLevel level, BasisPtr basis) : level_(level), basis_(std::move(basis)) {
  if (!basis_) throw std::invalid_argument("PrequantAssembler: null basis");
  position_ = primitive_matrix(basis_, primitive::Position{}).matrix;
  derivative_ = primitive_matrix(basis_, primitive::Derivative{}).matrix;
}

const Eigen::MatrixXcd& PrequantAssembler::shift(int t) {
  auto it = shifts_.find(t);
  if (it == shifts_.end())
    it = shifts_.emplace(t, primitive_matrix(basis_, primitive::Shift{static_cast<double>(t)}).matrix).first;
  return it->second;
}

const Eigen::MatrixXcd& PrequantAssembler::plane_wave(int m) {
  auto it = plane_waves_.find(m);
  if (it == plane_waves_.end())
    it = plane_waves_.emplace(m, primitive_matrix(basis_, primitive::PlaneWave{kTwoPi * m}).matrix).first;
  return it->second;
}

OperatorMatrix PrequantAssembler::monomial(FourierMode mode) {
  if (auto it = monomials_.find(mode); it != monomials_.end()) return it->second;
  const int comps = level_.components();
  const int level = level_.value();
  const Eigen::Index size = basis_->size();
  OperatorMatrix out{level_, basis_, Eigen::MatrixXcd::Zero(comps * size, comps * size),
                     "Q(e(" + std::to_string(mode.m) + "," + std::to_string(mode.n) + "))"};

  for (int r = 0; r < comps; ++r) {
    const int target = wrap(r - mode.n, comps);
    const int t = (r - mode.n - target) / level;
    const Eigen::MatrixXcd& s = shift(t);

    // (1 − 2πim(v − t + r/N)) ψ(v − t) − (n/N) ψ'(v − t); the phase e^{−2πimt} is 1.
    Eigen::MatrixXcd inner = s;
    if (mode.n != 0) inner -= (static_cast<double>(mode.n) / level) * (s * derivative_);
    if (mode.m != 0) {
      const Complex c(0.0, kTwoPi * mode.m);
      inner -= c * (position_ * s + (static_cast<double>(r) / level - t) * s);
      out.block(target, r) = plane_wave(mode.m) * inner;
    } else {
      out.block(target, r) = inner;
    }
  }
  monomials_.emplace(mode, out);
  return out;
}

OperatorMatrix PrequantAssembler::assemble(const TrigPoly& f) {
  const Eigen::Index m = level_.components() * basis_->size();
  OperatorMatrix out{level_, basis_, Eigen::MatrixXcd::Zero(m, m), "Q(" + describe(f) + ")"};
  for (const auto& [mode, c] : f.coefficients()) out.matrix += c * monomial(mode).matrix;
  return out;
}

OperatorMatrix monomial_block(ChernLevel level, const BasisPtr& basis, FourierMode mode) {
  return PrequantAssembler(level, basis).monomial(mode);
}

OperatorMatrix assemble(ChernLevel level, const BasisPtr& basis, const TrigPoly& f) {
  return PrequantAssembler(level, basis).assemble(f);
}

HeisenbergOps heisenberg_ops(ChernLevel level, const BasisPtr& basis) {
  const int comps = level.components();
  const Eigen::Index size = basis->size();
  const Eigen::Index m = comps * size;
  const Eigen::MatrixXcd position = primitive_matrix(basis, primitive::Position{}).matrix;
  const Eigen::MatrixXcd derivative = primitive_matrix(basis, primitive::Derivative{}).matrix;
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(size, size);

  HeisenbergOps ops{{level, basis, Eigen::MatrixXcd::Zero(m, m), "X"},
                    {level, basis, Eigen::MatrixXcd::Zero(m, m), "Y"},
                    {level, basis, Complex(0.0, level.value() / kTwoPi) * Eigen::MatrixXcd::Identity(m, m), "Z"}};
  // X̂ψ_r(v) = −(Nv + r)ψ_r(v),  Ŷ = (i/2π) d/dv.
  for (int r = 0; r < comps; ++r) {
    ops.x.block(r, r) = -(static_cast<double>(level.value()) * position + static_cast<double>(r) * identity);
    ops.y.block(r, r) = Complex(0.0, 1.0 / kTwoPi) * derivative;
  }
  return ops;
}

GridSection apply_bad_operator(const ZakSection& sample, BadOperator which, const GridParams& grid) {
  const GridSection phi = synthesize(sample, grid);
  const double level = sample.level().value();
  const Complex inv(0.0, -1.0 / (kTwoPi * level));  // 1/(2πiN)
  if (which == BadOperator::QX) {
    GridSection out = grid_d_dy(phi);
    out.values() *= inv;
    return out;
  }
  GridSection out = grid_d_dx(phi);
  for (int i = 0; i <= out.gx(); ++i)
    for (int j = 0; j <= out.gy(); ++j)
      out.values()(i, j) = -inv * (out.values()(i, j) - Complex(0.0, kTwoPi * level * phi.y(j)) * phi(i, j));
  return out;
}

double bad_operator_residual(const ZakSection& sample, BadOperator which, const GridParams& grid) {
  return quasiperiodicity_residual(apply_bad_operator(sample, which, grid));
}

}  // namespace torusq
