#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace torusq {

/**
 * Indices of a block-structured matrix that survive an interior compression:
 * within each of `blocks` consecutive blocks of size `block_size`, keep the
 * leading `block_size - margin` rows (Hermite degrees 0..D-margin).
 */
inline std::vector<Eigen::Index> interior_indices(Eigen::Index blocks, Eigen::Index block_size,
                                                  Eigen::Index margin) {
  if (margin < 0 || margin >= block_size)
    throw std::invalid_argument("interior margin must lie in [0, D]");
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(blocks * (block_size - margin)));
  for (Eigen::Index r = 0; r < blocks; ++r)
    for (Eigen::Index d = 0; d < block_size - margin; ++d) idx.push_back(r * block_size + d);
  return idx;
}

/// Max |a_ij - b_ij| over the interior rows and columns.
template <class DerivedA, class DerivedB>
double interior_residual(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                         Eigen::Index block_size, Eigen::Index margin) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("interior_residual: shape mismatch");
  if (block_size <= 0 || a.rows() % block_size != 0)
    throw std::invalid_argument("interior_residual: size is not a multiple of the block size");
  const auto idx = interior_indices(a.rows() / block_size, block_size, margin);
  double worst = 0.0;
  for (auto j : idx)
    for (auto i : idx) worst = std::max(worst, static_cast<double>(std::abs(a(i, j) - b(i, j))));
  return worst;
}

/// Max |entry| of x over the interior rows and columns.
template <class Derived>
double interior_norm(const Eigen::MatrixBase<Derived>& x, Eigen::Index block_size, Eigen::Index margin) {
  const auto idx = interior_indices(x.rows() / block_size, block_size, margin);
  double worst = 0.0;
  for (auto j : idx)
    for (auto i : idx) worst = std::max(worst, static_cast<double>(std::abs(x(i, j))));
  return worst;
}

/**
 * Interior block of the product a*b, summing over every intermediate index.
 * Cheaper than forming a*b when only the interior is compared.
 */
template <class DerivedA, class DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> interior_product(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b, Eigen::Index block_size,
    Eigen::Index margin) {
  const auto idx = interior_indices(a.rows() / block_size, block_size, margin);
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> rows(k, a.cols());
  Eigen::Matrix<typename DerivedB::Scalar, Eigen::Dynamic, Eigen::Dynamic> cols(b.rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    rows.row(i) = a.row(idx[i]);
    cols.col(i) = b.col(idx[i]);
  }
  return rows * cols;
}

/// Interior block of x as a dense matrix.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> interior_block(
    const Eigen::MatrixBase<Derived>& x, Eigen::Index block_size, Eigen::Index margin) {
  const auto idx = interior_indices(x.rows() / block_size, block_size, margin);
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i) out(i, j) = x(idx[i], idx[j]);
  return out;
}

template <class DerivedA, class DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b - b * a).eval();
}

}  // namespace torusq
