#include "torusq/zakspace.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>
#include <string>

#include "torusq/interior.hpp"

namespace torusq {

// ---------------------------------------------------------------------------
// OperatorMatrix

bool OperatorMatrix::is_block_diagonal() const {
  for (int rp = 0; rp < blocks(); ++rp)
    for (int r = 0; r < blocks(); ++r)
      if (rp != r && !block(rp, r).isZero(0.0)) return false;
  return true;
}

void require_compatible(const OperatorMatrix& a, const OperatorMatrix& b, const char* where) {
  if (a.level != b.level) throw std::invalid_argument(std::string(where) + ": Chern level mismatch");
  if (!same_basis(a.basis, b.basis)) throw std::invalid_argument(std::string(where) + ": basis mismatch");
}

OperatorMatrix identity_operator(ChernLevel level, const BasisPtr& basis) {
  const Eigen::Index m = level.components() * basis->size();
  return {level, basis, Eigen::MatrixXcd::Identity(m, m), "I"};
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b, "operator*");
  return {a.level, a.basis, a.matrix * b.matrix, a.label + "*" + b.label};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b, "operator+");
  return {a.level, a.basis, a.matrix + b.matrix, a.label + "+" + b.label};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b, "operator-");
  return {a.level, a.basis, a.matrix - b.matrix, a.label + "-" + b.label};
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) { return {a.level, a.basis, s * a.matrix, a.label}; }

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b, "commutator");
  return {a.level, a.basis, commutator(a.matrix, b.matrix), "[" + a.label + "," + b.label + "]"};
}

double interior_compare(const OperatorMatrix& a, const OperatorMatrix& b, int margin) {
  require_compatible(a, b, "interior_compare");
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols())
    throw std::invalid_argument("interior_compare: shape mismatch");
  if (margin <= 0 || margin >= a.block_size()) throw std::invalid_argument("interior_compare: need 0 < margin < D+1");
  return interior_residual(a.matrix, b.matrix, a.block_size(), margin);
}

// ---------------------------------------------------------------------------
// Sections

namespace {

long long wrap(long long value, long long period) {
  const long long r = value % period;
  return r < 0 ? r + period : r;
}

// twiddle[p] = e^{-2πi p / n}
std::vector<Complex> twiddles(int n) {
  std::vector<Complex> tw(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) tw[static_cast<std::size_t>(p)] = std::polar(1.0, -kTwoPi * p / n);
  return tw;
}

}  // namespace

ZakSection::ZakSection(ChernLevel level, BasisPtr basis, Eigen::VectorXcd coefficients)
    : level_(level), basis_(std::move(basis)), coefficients_(std::move(coefficients)) {
  if (!basis_) throw std::invalid_argument("ZakSection: null basis");
  if (coefficients_.size() != level_.components() * basis_->size())
    throw std::invalid_argument("ZakSection: expected |N|(D+1) coefficients");
}

ZakSection ZakSection::zero(ChernLevel level, BasisPtr basis) {
  const Eigen::Index m = level.components() * basis->size();
  return {level, std::move(basis), Eigen::VectorXcd::Zero(m)};
}

ZakSection ZakSection::unit(ChernLevel level, BasisPtr basis, int component, int degree) {
  if (component < 0 || component >= level.components() || degree < 0 || degree > basis->max_degree())
    throw std::invalid_argument("ZakSection::unit: index out of range");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(level.components() * basis->size());
  c(component * basis->size() + degree) = 1.0;
  return {level, std::move(basis), std::move(c)};
}

GridSection::GridSection(ChernLevel level, int gx, int gy) : level_(level) {
  if (gx < 1 || gy < 1) throw std::invalid_argument("GridSection: resolution must be positive");
  values_ = Eigen::MatrixXcd::Zero(gx + 1, gy + 1);
  validate();
}

GridSection::GridSection(ChernLevel level, Eigen::MatrixXcd values) : level_(level), values_(std::move(values)) {
  if (values_.rows() < 2 || values_.cols() < 2) throw std::invalid_argument("GridSection: need (gx+1)x(gy+1) samples");
  validate();
}

void GridSection::validate() const {
  if (gy() % (4 * level_.components()) != 0)
    throw std::invalid_argument("GridSection: gy = " + std::to_string(gy()) + " must be a multiple of 4|N| = " +
                                std::to_string(4 * level_.components()));
}

GridSection synthesize(const ZakSection& s, int gx, int gy, int window) {
  if (window < 0) throw std::invalid_argument("synthesize: window K must be >= 1");
  if (window == kAutoWindow) window = default_window(s.basis()->max_degree());
  GridSection g(s.level(), gx, gy);
  const int comps = s.components();
  const int level = s.level().value();
  const int taps = 2 * window + 1;
  const auto tw = twiddles(gy);
  const BasisPtr& basis = s.basis();

  // coeffs(d, r) = ψ_r Hermite coefficient of degree d
  const Eigen::Map<const Eigen::MatrixXcd> coeffs(s.coefficients().data(), basis->size(), comps);

  Eigen::VectorXd points(taps);
  for (int i = 0; i <= gx; ++i) {
    const double x = g.x(i);
    for (int k = -window; k <= window; ++k) points(k + window) = x + k;
    // psi(r, k) = ψ_r(x + k)
    const Eigen::MatrixXcd psi = coeffs.transpose() * hermite_table(basis->max_degree(), points).cast<Complex>();
    for (int j = 0; j <= gy; ++j) {
      Complex sum = 0.0;
      for (int r = 0; r < comps; ++r)
        for (int k = -window; k <= window; ++k)
          sum += psi(r, k + window) * tw[static_cast<std::size_t>(wrap((r + 1LL * k * level) * j, gy))];
      g.values()(i, j) = sum;
    }
  }
  return g;
}

ZakSection analyze(const GridSection& g, const BasisPtr& basis, int window) {
  if (window < 0) throw std::invalid_argument("analyze: window K must be >= 1");
  if (window == kAutoWindow) window = default_window(basis->max_degree());
  const int comps = g.level().components();
  const int level = g.level().value();
  const int gx = g.gx(), gy = g.gy();
  if (gy <= 2 * comps * (window + 1))
    throw std::invalid_argument("analyze: gy = " + std::to_string(gy) + " does not resolve frequencies up to |N|(K+1) = " +
                                std::to_string(comps * (window + 1)));
  const auto tw = twiddles(gy);
  const int taps = 2 * window + 1;
  const Eigen::Index samples = static_cast<Eigen::Index>(gx) * taps;

  // Sample points v = x_i + k, ordered k-major.
  Eigen::VectorXd points(samples);
  for (int k = -window; k <= window; ++k)
    for (int i = 0; i < gx; ++i) points((k + window) * gx + i) = g.x(i) + k;
  const Eigen::MatrixXd table = hermite_table(basis->max_degree(), points);

  Eigen::VectorXcd coefficients(comps * basis->size());
  Eigen::VectorXcd psi(samples);
  for (int r = 0; r < comps; ++r) {
    for (int k = -window; k <= window; ++k) {
      const long long freq = r + 1LL * k * level;
      for (int i = 0; i < gx; ++i) {
        Complex sum = 0.0;
        for (int j = 0; j < gy; ++j) sum += g(i, j) * std::conj(tw[static_cast<std::size_t>(wrap(freq * j, gy))]);
        psi((k + window) * gx + i) = sum / static_cast<double>(gy);
      }
    }
    coefficients.segment(r * basis->size(), basis->size()) = (table.cast<Complex>() * psi) / static_cast<double>(gx);
  }

  const int tail_width = std::min(8, basis->max_degree() / 2);
  if (tail_width > 0) {
    double tail = 0.0;
    for (int r = 0; r < comps; ++r)
      tail += coefficients.segment(r * basis->size() + basis->size() - tail_width, tail_width).squaredNorm();
    const double total = coefficients.squaredNorm();
    if (total > 0.0 && tail > 0.01 * total)
      throw std::runtime_error("analyze: Hermite tail carries " + std::to_string(100.0 * tail / total) +
                               "% of the energy; raise D or smooth the input");
  }
  return {g.level(), basis, std::move(coefficients)};
}

double quasiperiodicity_residual(const GridSection& g) {
  const int gx = g.gx(), gy = g.gy();
  const auto tw = twiddles(gy);
  double x_defect = 0.0;
  for (int j = 0; j <= gy; ++j) {
    const Complex phase = std::conj(tw[static_cast<std::size_t>(wrap(1LL * g.level().value() * j, gy))]);
    x_defect = std::max(x_defect, std::abs(g(gx, j) - phase * g(0, j)));
  }
  double y_defect = 0.0;
  for (int i = 0; i <= gx; ++i) y_defect = std::max(y_defect, std::abs(g(i, gy) - g(i, 0)));
  return x_defect + y_defect;
}

Complex inner_product(const ZakSection& a, const ZakSection& b) {
  if (a.level() != b.level()) throw std::invalid_argument("inner_product: Chern level mismatch");
  if (!same_basis(a.basis(), b.basis())) throw std::invalid_argument("inner_product: basis mismatch");
  return a.coefficients().dot(b.coefficients());
}

Complex grid_inner_product(const GridSection& a, const GridSection& b) {
  if (a.level() != b.level() || a.gx() != b.gx() || a.gy() != b.gy())
    throw std::invalid_argument("grid_inner_product: grids differ");
  const auto lhs = a.values().topLeftCorner(a.gx(), a.gy());
  const auto rhs = b.values().topLeftCorner(b.gx(), b.gy());
  return (lhs.conjugate().cwiseProduct(rhs)).sum() / (static_cast<double>(a.gx()) * a.gy());
}

double max_abs_diff(const GridSection& a, const GridSection& b) {
  if (a.values().rows() != b.values().rows() || a.values().cols() != b.values().cols())
    throw std::invalid_argument("max_abs_diff: grids differ");
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

OperatorMatrix projector_PN(ChernLevel level, const BasisPtr& basis) {
  OperatorMatrix p{level, basis, Eigen::MatrixXcd::Zero(level.components() * basis->size(), level.components() * basis->size()),
                   "P_N"};
  p.block(0, 0).setIdentity();
  return p;
}

ZakSection apply(const OperatorMatrix& op, const ZakSection& s) {
  if (op.level != s.level() || !same_basis(op.basis, s.basis()))
    throw std::invalid_argument("apply: operator and section live on different spaces");
  return {s.level(), s.basis(), op.matrix * s.coefficients()};
}

// ---------------------------------------------------------------------------
// Grid derivatives

namespace {

// Multiplies the DFT of periodic samples by 2πi·(signed frequency).
std::vector<Complex> spectral_derivative(const std::vector<Complex>& samples) {
  const int n = static_cast<int>(samples.size());
  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, samples);
  for (int p = 0; p < n; ++p) {
    int freq = p <= n / 2 ? p : p - n;
    if (2 * p == n) freq = 0;
    spectrum[static_cast<std::size_t>(p)] *= Complex(0.0, kTwoPi * freq);
  }
  std::vector<Complex> out;
  fft.inv(out, spectrum);
  return out;
}

}  // namespace

GridSection grid_d_dy(const GridSection& g) {
  GridSection out(g.level(), g.gx(), g.gy());
  std::vector<Complex> line(static_cast<std::size_t>(g.gy()));
  for (int i = 0; i <= g.gx(); ++i) {
    for (int j = 0; j < g.gy(); ++j) line[static_cast<std::size_t>(j)] = g(i, j);
    const auto deriv = spectral_derivative(line);
    for (int j = 0; j < g.gy(); ++j) out.values()(i, j) = deriv[static_cast<std::size_t>(j)];
    out.values()(i, g.gy()) = deriv[0];
  }
  return out;
}

GridSection grid_d_dx(const GridSection& g) {
  GridSection out(g.level(), g.gx(), g.gy());
  const double level = g.level().value();
  std::vector<Complex> line(static_cast<std::size_t>(g.gx()));
  for (int j = 0; j <= g.gy(); ++j) {
    const double y = g.y(j);
    for (int i = 0; i < g.gx(); ++i)
      line[static_cast<std::size_t>(i)] = std::polar(1.0, -kTwoPi * level * g.x(i) * y) * g(i, j);
    const auto deriv = spectral_derivative(line);
    for (int i = 0; i < g.gx(); ++i) {
      const auto u = static_cast<std::size_t>(i);
      out.values()(i, j) =
          std::polar(1.0, kTwoPi * level * g.x(i) * y) * (deriv[u] + Complex(0.0, kTwoPi * level * y) * line[u]);
    }
    out.values()(g.gx(), j) = std::polar(1.0, kTwoPi * level * y) * out.values()(0, j);
  }
  return out;
}

}  // namespace torusq
