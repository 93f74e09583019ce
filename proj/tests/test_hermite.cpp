#include <doctest.h>

#include <cmath>

#include "torusq/hermite.hpp"

using namespace torusq;

TEST_CASE("low-order Hermite functions in closed form") {
  for (double v : {-2.5, -0.3, 0.0, 1.1, 4.0}) {
    const Eigen::VectorXd h = hermite_functions(3, v);
    const double h0 = std::pow(kPi, -0.25) * std::exp(-0.5 * v * v);
    CHECK(h(0) == doctest::Approx(h0).epsilon(1e-14));
    CHECK(h(1) == doctest::Approx(std::sqrt(2.0) * v * h0).epsilon(1e-13));
    CHECK(h(2) == doctest::Approx((2.0 * v * v - 1.0) / std::sqrt(2.0) * h0).epsilon(1e-13));
  }
}

TEST_CASE("Gauss-Hermite rule integrates Gaussian moments") {
  const QuadratureRule rule = gauss_hermite(40);
  double m0 = 0.0, m2 = 0.0, m4 = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double v = rule.nodes(i), g = std::exp(-v * v) * rule.weights(i);
    m0 += g;
    m2 += g * v * v;
    m4 += g * v * v * v * v;
  }
  CHECK(m0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-13));
  CHECK(m4 == doctest::Approx(3.0 * std::sqrt(kPi) / 4.0).epsilon(1e-13));
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
    CHECK(rule.nodes(i) == doctest::Approx(-rule.nodes(rule.nodes.size() - 1 - i)).epsilon(1e-15));
}

TEST_CASE("basis is orthonormal under its quadrature") {
  const BasisPtr basis = make_basis(48);
  const Eigen::MatrixXd gram = basis->table() * basis->weights().asDiagonal() * basis->table().transpose();
  CHECK((gram - Eigen::MatrixXd::Identity(49, 49)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("position and derivative entries") {
  const BasisPtr basis = make_basis(8);
  const Eigen::MatrixXcd x = primitive_matrix(basis, primitive::Position{}).matrix;
  const Eigen::MatrixXcd d = primitive_matrix(basis, primitive::Derivative{}).matrix;
  CHECK(x(0, 1).real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(x(1, 0).real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(x(3, 4).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(d(1, 0).real() == doctest::Approx(-std::sqrt(0.5)));
  CHECK(d(0, 1).real() == doctest::Approx(std::sqrt(0.5)));
  CHECK((d + d.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((x * x)(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("derivative matrix agrees with finite differences of h_d") {
  const int D = 10;
  const BasisPtr basis = make_basis(D);
  const Eigen::MatrixXd d = primitive_matrix(basis, primitive::Derivative{}).matrix.real();
  const double h = 1e-4;
  for (double v : {-1.7, 0.2, 2.9}) {
    const Eigen::VectorXd fd = (hermite_functions(D + 1, v + h) - hermite_functions(D + 1, v - h)) / (2 * h);
    const Eigen::VectorXd hv = hermite_functions(D, v);
    // h_b' = Σ_a D(a, b) h_a, exact for b < D
    for (int b = 0; b < D; ++b) {
      double sum = 0.0;
      for (int a = 0; a <= D; ++a) sum += d(a, b) * hv(a);
      CHECK(sum == doctest::Approx(fd(b)).epsilon(1e-6));
    }
  }
}

TEST_CASE("shift and plane wave overlaps of h_0") {
  const BasisPtr basis = make_basis(24);
  const Eigen::MatrixXcd s0 = primitive_matrix(basis, primitive::Shift{0.0}).matrix;
  CHECK((s0 - Eigen::MatrixXcd::Identity(25, 25)).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::MatrixXcd p0 = primitive_matrix(basis, primitive::PlaneWave{0.0}).matrix;
  CHECK((p0 - Eigen::MatrixXcd::Identity(25, 25)).cwiseAbs().maxCoeff() == 0.0);

  for (double t : {-1.0, 0.5, 2.0}) {
    const Eigen::MatrixXcd s = primitive_matrix(basis, primitive::Shift{t}).matrix;
    CHECK(std::abs(s(0, 0) - std::exp(-t * t / 4.0)) < 1e-13);
  }
  for (double lambda : {kTwoPi, -1.5}) {
    const Eigen::MatrixXcd p = primitive_matrix(basis, primitive::PlaneWave{lambda}).matrix;
    CHECK(std::abs(p(0, 0) - std::exp(-lambda * lambda / 4.0)) < 1e-13);
  }
}

TEST_CASE("multiplier of v^2 matches position squared away from the edge") {
  const BasisPtr basis = make_basis(20);
  const Eigen::VectorXcd v2 = basis->nodes().array().square().cast<Complex>();
  const LineOperator m{basis->multiplier(v2), "v^2", basis, true};
  const Eigen::MatrixXcd x = primitive_matrix(basis, primitive::Position{}).matrix;
  const LineOperator x2{x * x, "x^2", basis, true};
  CHECK(interior_compare(m, x2, 2) < 1e-12);
}

TEST_CASE("basis construction errors") {
  CHECK_THROWS_AS(make_basis(-1), std::invalid_argument);
  CHECK_THROWS_AS(make_basis(10, 35), std::invalid_argument);
  CHECK_NOTHROW(make_basis(10, 36));
  CHECK(same_basis(make_basis(10), make_basis(10)));
  CHECK_FALSE(same_basis(make_basis(10), make_basis(10, 40)));
  const BasisPtr b = make_basis(6);
  const LineOperator x = primitive_matrix(b, primitive::Position{});
  CHECK_THROWS_AS(interior_compare(x, x, 0), std::invalid_argument);
  CHECK_THROWS_AS(interior_compare(x, x, 7), std::invalid_argument);
}

TEST_CASE("high degrees stay finite where h_0 underflows") {
  // h_0(40) ~ e^{-800} underflows, yet h_800(40) is of order 0.1.
  const Eigen::VectorXd h = hermite_functions(800, 40.0);
  CHECK(h(0) == 0.0);
  CHECK(h.allFinite());
  CHECK(std::abs(h(800)) > 1e-3);
  const QuadratureRule rule = gauss_hermite(816);
  CHECK(rule.weights.allFinite());
  const BasisPtr basis = make_basis(400);
  const Eigen::MatrixXd gram = basis->table() * basis->weights().asDiagonal() * basis->table().transpose();
  CHECK((gram - Eigen::MatrixXd::Identity(401, 401)).cwiseAbs().maxCoeff() < 1e-12);
}
