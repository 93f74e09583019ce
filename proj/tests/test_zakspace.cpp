#include <doctest.h>

#include <random>

#include "torusq/grid_oracle.hpp"
#include "torusq/zakspace.hpp"

using namespace torusq;

namespace {

ZakSection random_section(ChernLevel level, const BasisPtr& basis, int cap, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(level.components() * basis->size());
  for (int r = 0; r < level.components(); ++r)
    for (int d = 0; d <= cap; ++d) {
      const double re = normal(rng);
      const double im = normal(rng);
      c(r * basis->size() + d) = Complex(re, im);
    }
  c.normalize();
  return {level, basis, c};
}

// Direct evaluation of Σ_r Σ_k ψ_r(x+k) e^{-2πi(r+kN)y}, or of its y-derivative.
Complex brute_force(const ZakSection& s, double x, double y, int window, bool d_dy = false) {
  const int n = s.level().value();
  Complex sum = 0.0;
  for (int r = 0; r < s.components(); ++r)
    for (int k = -window; k <= window; ++k) {
      const Eigen::VectorXd h = hermite_functions(s.basis()->max_degree(), x + k);
      Complex psi = 0.0;
      for (int d = 0; d <= s.basis()->max_degree(); ++d) psi += s.component(r)(d) * h(d);
      const Complex factor = d_dy ? Complex(0.0, -kTwoPi * (r + k * n)) : Complex(1.0);
      sum += factor * psi * std::exp(Complex(0.0, -kTwoPi * (r + k * n) * y));
    }
  return sum;
}

}  // namespace

TEST_CASE("adjusted grid sizes") {
  CHECK(adjusted_gy(128, ChernLevel(1)) == 128);
  CHECK(adjusted_gy(128, ChernLevel(3)) == 132);
  CHECK(adjusted_gy(128, ChernLevel(-2)) == 128);
}

TEST_CASE("synthesize agrees with direct summation") {
  const BasisPtr basis = make_basis(12);
  for (int n : {1, 2, -3}) {
    const ChernLevel level(n);
    const ZakSection s = random_section(level, basis, 6, 17);
    const GridSection g = synthesize(s, 16, adjusted_gy(24, level), 8);
    for (int i : {0, 5, 16})
      for (int j : {0, 7, g.gy()}) CHECK(std::abs(g(i, j) - brute_force(s, g.x(i), g.y(j), 8)) < 1e-12);
  }
}

TEST_CASE("synthesized sections are quasi-periodic") {
  const BasisPtr basis = make_basis(24);
  for (int n : {1, 2, 3, -1}) {
    const ChernLevel level(n);
    const GridSection g = synthesize(ZakSection::unit(level, basis, 0, 0), 64, adjusted_gy(64, level));
    CHECK(quasiperiodicity_residual(g) < 1e-12);
  }
}

TEST_CASE("isometry and round trip on tail-light sections") {
  const BasisPtr basis = make_basis(48);
  for (int n : {1, 2, 3}) {
    const ChernLevel level(n);
    const ZakSection a = random_section(level, basis, 12, 1 + n);
    const ZakSection b = random_section(level, basis, 12, 100 + n);
    const GridParams grid = adjusted(GridParams{}, level);
    const GridSection ga = synthesize(a, grid), gb = synthesize(b, grid);
    CHECK(std::abs(grid_inner_product(ga, gb) - inner_product(a, b)) < 1e-12);
    CHECK(std::abs(grid_inner_product(ga, ga) - 1.0) < 1e-12);
    const ZakSection back = analyze(ga, basis);
    CHECK((back.coefficients() - a.coefficients()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("the short default window leaks") {
  // h_0(6) ~ 1e-8, so a window of 6 cannot meet a 1e-8 round trip.
  const BasisPtr basis = make_basis(24);
  const ChernLevel level(1);
  const ZakSection s = ZakSection::unit(level, basis, 0, 0);
  const GridSection g6 = synthesize(s, 128, 128, 6);
  const GridSection g12 = synthesize(s, 128, 128, 12);
  CHECK(max_abs_diff(g6, g12) > 1e-9);
  CHECK((analyze(g12, basis, 12).coefficients() - s.coefficients()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("grid derivatives against coefficient-side derivatives") {
  const BasisPtr basis = make_basis(32);
  const Eigen::MatrixXcd der = primitive_matrix(basis, primitive::Derivative{}).matrix;
  for (int n : {1, 2}) {
    const ChernLevel level(n);
    const ZakSection s = random_section(level, basis, 8, 9);
    const GridSection g = synthesize(s, 96, adjusted_gy(96, level));

    // ∂_x φ = W(ψ') componentwise.
    Eigen::VectorXcd dc(s.coefficients().size());
    for (int r = 0; r < n; ++r) dc.segment(r * basis->size(), basis->size()) = der * s.component(r);
    const GridSection dx_exact = synthesize(ZakSection(level, basis, dc), 96, g.gy());
    CHECK(max_abs_diff(grid_d_dx(g), dx_exact) < 1e-10);

    // ∂_y φ = Σ −2πi(r+kN) ψ_r(x+k) e^{...}, checked pointwise.
    const GridSection dy = grid_d_dy(g);
    for (int i : {3, 50, 96})
      for (int j : {0, 11, g.gy()})
        CHECK(std::abs(dy(i, j) - brute_force(s, g.x(i), g.y(j), default_window(32), true)) < 1e-10);
  }
}

TEST_CASE("Heisenberg oracle on h_0 in closed form") {
  // For N=1, X̂φ has Zak coefficients −v·h_0 = −h_1/√2.
  const BasisPtr basis = make_basis(16);
  const ChernLevel level(1);
  const GridSection phi = synthesize(ZakSection::unit(level, basis, 0, 0), 64, 64);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(17);
  c(1) = -std::sqrt(0.5);
  CHECK(max_abs_diff(oracle::apply_heisenberg_x(phi), synthesize(ZakSection(level, basis, c), 64, 64)) < 1e-11);
}

TEST_CASE("projector onto P_N") {
  const BasisPtr basis = make_basis(6);
  const OperatorMatrix p = projector_PN(ChernLevel(3), basis);
  CHECK((p * p).matrix == p.matrix);
  CHECK(p.matrix.adjoint() == p.matrix);
  CHECK(p.matrix.trace() == Complex(7.0));
  CHECK(p.is_block_diagonal());
  CHECK(projector_PN(ChernLevel(1), basis).matrix == identity_operator(ChernLevel(1), basis).matrix);
}

TEST_CASE("invalid grids and windows") {
  const BasisPtr basis = make_basis(8);
  const ZakSection s = ZakSection::unit(ChernLevel(3), basis, 1, 0);
  CHECK_THROWS_WITH_AS(synthesize(s, 32, 128), doctest::Contains("multiple of 4|N|"), std::invalid_argument);
  CHECK_THROWS_AS(synthesize(s, 32, 132, -1), std::invalid_argument);
  CHECK_THROWS_AS(analyze(synthesize(s, 32, 24, 2), basis, 12), std::invalid_argument);
  CHECK(default_window(24) == 13);
  CHECK(default_window(48) == 16);
  CHECK(default_window(4) == 12);
  CHECK_THROWS_AS(ZakSection::unit(ChernLevel(1), basis, 1, 0), std::invalid_argument);
}

TEST_CASE("analysis refuses sections with a heavy Hermite tail") {
  const BasisPtr basis = make_basis(16);
  const GridSection g = synthesize(ZakSection::unit(ChernLevel(1), basis, 0, 16), 128, 128);
  CHECK_THROWS_AS(analyze(g, basis), std::runtime_error);
}

TEST_CASE("mismatched spaces are rejected") {
  const BasisPtr a = make_basis(8), b = make_basis(10);
  const ZakSection s = ZakSection::zero(ChernLevel(1), a);
  CHECK_THROWS_AS(apply(identity_operator(ChernLevel(1), b), s), std::invalid_argument);
  CHECK_THROWS_AS(inner_product(s, ZakSection::zero(ChernLevel(2), a)), std::invalid_argument);
  CHECK_THROWS_AS(ZakSection(ChernLevel(2), a, Eigen::VectorXcd::Zero(9)), std::invalid_argument);
}
