#include "torusq/commutant.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "torusq/interior.hpp"
#include "torusq/prequant.hpp"
#include "torusq/zakspace.hpp"

namespace torusq {

namespace {

constexpr Eigen::Index kMaxUnknowns = 6000;
constexpr std::size_t kReportedValues = 8;

// G += coeff * (p ⊗ r), for column-major vec(T).
void kron_add(Eigen::MatrixXcd& g, const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& r, Complex coeff) {
  const Eigen::Index b = r.rows();
  for (Eigen::Index c = 0; c < p.cols(); ++c)
    for (Eigen::Index a = 0; a < p.rows(); ++a)
      if (p(a, c) != Complex(0.0)) g.block(a * b, c * b, b, b) += (coeff * p(a, c)) * r;
}

struct Candidate {
  double sigma;
  // Kernel candidates keep their vector and position so a basis can be built.
  Eigen::VectorXcd vec;
  Eigen::Index row_block = 0;
  Eigen::Index col_block = 0;
};

// Sylvester constraints T·right_i − left_i·T for one block pair.
void solve_block_pair(const std::vector<Eigen::MatrixXcd>& left, const std::vector<Eigen::MatrixXcd>& right,
                      Eigen::Index row_block, Eigen::Index col_block, std::vector<Candidate>& out,
                      double& lambda_max) {
  const Eigen::Index b = left.front().rows();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(b, b);
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(b * b, b * b);
  for (std::size_t i = 0; i < left.size(); ++i) {
    const Eigen::MatrixXcd x = right[i].transpose();
    const Eigen::MatrixXcd& y = left[i];
    kron_add(gram, x.adjoint() * x, eye, 1.0);
    kron_add(gram, x.adjoint(), y, -1.0);
    kron_add(gram, x, y.adjoint(), -1.0);
    kron_add(gram, eye, y.adjoint() * y, 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  if (eig.info() != Eigen::Success) throw std::runtime_error("commutant: eigensolver failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double local_max = std::max(lambda(lambda.size() - 1), 0.0);
  lambda_max = std::max(lambda_max, local_max);

  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const bool refine = k < static_cast<Eigen::Index>(kReportedValues) || lambda(k) <= 1e-4 * local_max;
    if (!refine) {
      out.push_back({std::sqrt(std::max(lambda(k), 0.0)), {}, row_block, col_block});
      continue;
    }
    Eigen::VectorXcd v = eig.eigenvectors().col(k);
    const Eigen::Map<const Eigen::MatrixXcd> t(v.data(), b, b);
    double sq = 0.0;
    for (std::size_t i = 0; i < left.size(); ++i) sq += (t * right[i] - left[i] * t).squaredNorm();
    out.push_back({std::sqrt(sq), std::move(v), row_block, col_block});
  }
}

bool block_diagonal(const Eigen::MatrixXcd& a, Eigen::Index b) {
  const Eigen::Index blocks = a.rows() / b;
  for (Eigen::Index p = 0; p < blocks; ++p)
    for (Eigen::Index q = 0; q < blocks; ++q)
      if (p != q && !a.block(p * b, q * b, b, b).isZero(0.0)) return false;
  return true;
}

}  // namespace

CommutantEntry commutant_of_matrices(const std::vector<Eigen::MatrixXcd>& ops, Eigen::Index block_size,
                                     double threshold, bool want_basis) {
  if (ops.empty()) throw std::invalid_argument("commutant: empty operator set");
  const Eigen::Index n = ops.front().rows();
  for (const auto& a : ops)
    if (a.rows() != n || a.cols() != n) throw std::invalid_argument("commutant: operators must be square and equal-sized");
  if (block_size <= 0 || n % block_size != 0) throw std::invalid_argument("commutant: bad block size");
  if (!std::all_of(ops.begin(), ops.end(), [&](const auto& a) { return block_diagonal(a, block_size); }))
    block_size = n;
  if (block_size * block_size > kMaxUnknowns)
    throw std::length_error("commutant: constraint system with " + std::to_string(block_size * block_size) +
                            " unknowns per block exceeds the dense limit " + std::to_string(kMaxUnknowns));

  const Eigen::Index blocks = n / block_size;
  std::vector<Candidate> candidates;
  double lambda_max = 0.0;
  for (Eigen::Index p = 0; p < blocks; ++p) {
    for (Eigen::Index q = 0; q < blocks; ++q) {
      std::vector<Eigen::MatrixXcd> left, right;
      for (const auto& a : ops) {
        left.emplace_back(a.block(p * block_size, p * block_size, block_size, block_size));
        right.emplace_back(a.block(q * block_size, q * block_size, block_size, block_size));
      }
      solve_block_pair(left, right, p, q, candidates, lambda_max);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.sigma < b.sigma; });

  CommutantEntry entry;
  entry.compressed_size = n;
  entry.threshold = threshold;
  entry.sigma_max = std::sqrt(lambda_max);
  const double cut = threshold * entry.sigma_max;
  int dim = 0;
  while (dim < static_cast<int>(candidates.size()) && candidates[static_cast<std::size_t>(dim)].sigma <= cut) ++dim;
  entry.estimated_dim = dim;

  if (dim == static_cast<int>(candidates.size())) {
    entry.gap_ratio = std::numeric_limits<double>::infinity();
  } else if (dim == 0) {
    entry.gap_ratio = 0.0;
  } else {
    const double below = candidates[static_cast<std::size_t>(dim - 1)].sigma;
    const double above = candidates[static_cast<std::size_t>(dim)].sigma;
    entry.gap_ratio = below > 0.0 ? above / below : std::numeric_limits<double>::infinity();
  }
  entry.confident = dim >= 1 && entry.gap_ratio > kConfidentGap;

  const std::size_t shown = std::min(kReportedValues, candidates.size());
  for (std::size_t k = shown; k-- > 0;) entry.singular_values.push_back(candidates[k].sigma);

  if (want_basis) {
    for (int k = 0; k < dim; ++k) {
      const Candidate& c = candidates[static_cast<std::size_t>(k)];
      Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
      t.block(c.row_block * block_size, c.col_block * block_size, block_size, block_size) =
          Eigen::Map<const Eigen::MatrixXcd>(c.vec.data(), block_size, block_size);
      entry.basis.push_back(std::move(t));
    }
  }
  return entry;
}

CommutantEntry commutant_dimension(const std::vector<OperatorMatrix>& ops, int margin, double threshold,
                                   bool want_basis) {
  if (ops.empty()) throw std::invalid_argument("commutant: empty operator set");
  for (const auto& a : ops) {
    require_compatible(ops.front(), a, "commutant");
    if (a.matrix.rows() != a.matrix.cols()) throw std::invalid_argument("commutant: non-square operator");
  }
  const Eigen::Index size = ops.front().block_size();
  if (margin < 0 || margin >= size) throw std::invalid_argument("commutant: margin must lie in [0, D]");

  std::vector<Eigen::MatrixXcd> compressed;
  compressed.reserve(ops.size());
  for (const auto& a : ops) compressed.push_back(interior_block(a.matrix, size, margin));

  CommutantEntry entry = commutant_of_matrices(compressed, size - margin, threshold, want_basis);
  entry.max_degree = ops.front().basis->max_degree();
  entry.margin = margin;
  return entry;
}

double commutation_residual(const std::vector<Eigen::MatrixXcd>& ops, const Eigen::MatrixXcd& t) {
  double sq = 0.0;
  for (const auto& a : ops) sq += (t * a - a * t).squaredNorm();
  return std::sqrt(sq);
}

double distance_to_span(const std::vector<Eigen::MatrixXcd>& basis, const Eigen::MatrixXcd& x) {
  Eigen::MatrixXcd rest = x;
  for (const auto& b : basis) rest -= (b.conjugate().cwiseProduct(x)).sum() * b;
  return rest.norm();
}

OperatorSet complete_set_FN() {
  return {"FN", [](ChernLevel level, const BasisPtr& basis) {
            PrequantAssembler q(level, basis);
            const OperatorMatrix a = q.monomial({level.value(), 0});
            const OperatorMatrix b = q.monomial({0, level.value()});
            return std::vector<OperatorMatrix>{a, a.adjoint(), b, b.adjoint()};
          }};
}

OperatorSet identity_set() {
  return {"identity",
          [](ChernLevel level, const BasisPtr& basis) { return std::vector<OperatorMatrix>{identity_operator(level, basis)}; }};
}

OperatorSet observable_set(std::string label, std::vector<TrigPoly> observables) {
  return {std::move(label), [observables = std::move(observables)](ChernLevel level, const BasisPtr& basis) {
            PrequantAssembler q(level, basis);
            std::vector<OperatorMatrix> ops;
            for (const auto& f : observables) {
              ops.push_back(q.assemble(f));
              ops.push_back(ops.back().adjoint());
            }
            return ops;
          }};
}

CommutantReport convergence_study(const OperatorSet& set, ChernLevel level, const std::vector<int>& degrees,
                                  const std::function<int(int)>& margin_rule, double threshold) {
  if (!std::is_sorted(degrees.begin(), degrees.end()) ||
      std::adjacent_find(degrees.begin(), degrees.end()) != degrees.end())
    throw std::invalid_argument("convergence_study: degree list must be strictly increasing");
  CommutantReport report;
  report.level = level.value();
  report.set_label = set.label;
  report.threshold = threshold;
  for (int d : degrees) {
    const BasisPtr basis = make_basis(d);
    report.entries.push_back(commutant_dimension(set.build(level, basis), margin_rule(d), threshold));
  }
  report.stable_dimension = true;
  report.gap_nondecreasing = true;
  for (std::size_t k = 1; k < report.entries.size(); ++k) {
    if (report.entries[k].estimated_dim != report.entries.front().estimated_dim) report.stable_dimension = false;
    if (report.entries[k].gap_ratio < report.entries[k - 1].gap_ratio) report.gap_nondecreasing = false;
  }
  return report;
}

ReducibilityReport reducibility_check(ChernLevel level, const BasisPtr& basis, int margin, double threshold) {
  const auto ops = complete_set_FN().build(level, basis);
  const OperatorMatrix projector = projector_PN(level, basis);
  ReducibilityReport report;
  report.level = level.value();
  report.max_degree = basis->max_degree();
  for (const auto& op : ops) {
    const double r = commutator(op.matrix, projector.matrix).cwiseAbs().maxCoeff();
    report.per_operator_residuals.push_back(r);
    report.projector_residual = std::max(report.projector_residual, r);
  }
  report.commutant = commutant_dimension(ops, margin, threshold);
  return report;
}

}  // namespace torusq
