#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "torusq/commutant.hpp"
#include "torusq/zakspace.hpp"

using namespace torusq;

namespace {

// Shift on C^n: irreducible together with its adjoint.
Eigen::MatrixXcd shift_matrix(Eigen::Index n) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) s(i + 1, i) = 1.0;
  return s;
}

Eigen::MatrixXcd direct_sum(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

TEST_CASE("commutant of an irreducible pair is the scalars") {
  const Eigen::MatrixXcd s = shift_matrix(5);
  const CommutantEntry e = commutant_of_matrices({s, s.adjoint()}, 5, kDefaultCommutantThreshold, true);
  CHECK(e.estimated_dim == 1);
  CHECK(e.confident);
  REQUIRE(e.basis.size() == 1);
  // the kernel vector is proportional to the identity
  const Eigen::MatrixXcd t = e.basis.front() / e.basis.front()(0, 0);
  CHECK((t - Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("two equivalent copies give a four-dimensional commutant") {
  const Eigen::MatrixXcd s = shift_matrix(4);
  const Eigen::MatrixXcd ss = direct_sum(s, s);
  const std::vector<Eigen::MatrixXcd> ops{ss, ss.adjoint()};
  // as one dense block, and with the block split
  for (Eigen::Index block : {Eigen::Index(8), Eigen::Index(4)}) {
    const CommutantEntry e = commutant_of_matrices(ops, block, kDefaultCommutantThreshold, true);
    CHECK(e.estimated_dim == 4);
    for (const auto& t : e.basis) CHECK(commutation_residual(ops, t) < 1e-10);
  }
}

TEST_CASE("inequivalent copies give a two-dimensional commutant") {
  const Eigen::MatrixXcd s = shift_matrix(4);
  const Eigen::MatrixXcd sum = direct_sum(s, 2.0 * s);
  const CommutantEntry e = commutant_of_matrices({sum, sum.adjoint()}, 4);
  CHECK(e.estimated_dim == 2);
}

TEST_CASE("diagonal Hermitian matrix with distinct eigenvalues") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
  d.diagonal() << 1.0, 2.0, 3.5, -1.0;
  CHECK(commutant_of_matrices({d}, 4).estimated_dim == 4);
}

TEST_CASE("identity set commutes with everything") {
  const BasisPtr basis = make_basis(3);
  const auto ops = identity_set().build(ChernLevel(1), basis);
  const CommutantEntry e = commutant_dimension(ops, 0);
  CHECK(e.estimated_dim == 16);
  CHECK(std::isinf(e.gap_ratio));
}

TEST_CASE("F_1 is irreducible at a small truncation") {
  const CommutantReport report = convergence_study(complete_set_FN(), ChernLevel(1), {16, 20});
  for (const auto& e : report.entries) {
    CHECK(e.estimated_dim == 1);
    CHECK(e.gap_ratio > 1e3);
    CHECK(e.singular_values.size() == 8);
    CHECK(std::is_sorted(e.singular_values.rbegin(), e.singular_values.rend()));
  }
  CHECK(report.stable_dimension);
}

TEST_CASE("F_N is reducible for N = 2") {
  const ReducibilityReport report = reducibility_check(ChernLevel(2), make_basis(16), 4);
  CHECK(report.projector_residual == 0.0);
  CHECK(report.per_operator_residuals.size() == 4);
  CHECK(report.commutant.estimated_dim >= 2);
}

TEST_CASE("distance to span") {
  std::vector<Eigen::MatrixXcd> basis{Eigen::MatrixXcd::Identity(2, 2) / std::sqrt(2.0)};
  CHECK(distance_to_span(basis, Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);
  Eigen::MatrixXcd off = Eigen::MatrixXcd::Zero(2, 2);
  off(0, 1) = 3.0;
  CHECK(distance_to_span(basis, off) == doctest::Approx(3.0));
}

TEST_CASE("commutant argument checks") {
  CHECK_THROWS_AS(commutant_of_matrices({}, 1), std::invalid_argument);
  CHECK_THROWS_AS(commutant_of_matrices({Eigen::MatrixXcd::Identity(3, 3), Eigen::MatrixXcd::Identity(2, 2)}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(commutant_of_matrices({Eigen::MatrixXcd::Identity(4, 4)}, 3), std::invalid_argument);
  CHECK_THROWS_AS(commutant_of_matrices({shift_matrix(80)}, 80), std::length_error);
  const BasisPtr basis = make_basis(4);
  const auto ops = complete_set_FN().build(ChernLevel(1), basis);
  CHECK_THROWS_AS(commutant_dimension(ops, 5), std::invalid_argument);
  CHECK_THROWS_AS(commutant_dimension({}, 0), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(complete_set_FN(), ChernLevel(1), {8, 8}), std::invalid_argument);
}
