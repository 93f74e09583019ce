#pragma once

#include <Eigen/Core>

#include <string>

#include "torusq/hermite.hpp"
#include "torusq/trigpoly.hpp"

namespace torusq {

/**
 * Truncated operator on H_N in Zak–Hermite coordinates: an |N|(D+1) square
 * matrix made of |N|×|N| blocks of size D+1, block (r', r) mapping Zak
 * component r to component r'.
 */
struct OperatorMatrix {
  ChernLevel level;
  BasisPtr basis;
  Eigen::MatrixXcd matrix;
  std::string label;

  Eigen::Index block_size() const { return basis->size(); }
  int blocks() const { return level.components(); }

  auto block(int row_component, int col_component) {
    return matrix.block(row_component * block_size(), col_component * block_size(), block_size(), block_size());
  }
  auto block(int row_component, int col_component) const {
    return matrix.block(row_component * block_size(), col_component * block_size(), block_size(), block_size());
  }

  OperatorMatrix adjoint() const { return {level, basis, matrix.adjoint(), label + "^*"}; }

  /// True if every off-diagonal block is identically zero.
  bool is_block_diagonal() const;
};

OperatorMatrix identity_operator(ChernLevel level, const BasisPtr& basis);

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex s, const OperatorMatrix& a);
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/**
 * Max entry difference restricted to Hermite degrees 0..D-margin in every
 * component block. Requires matching level/basis and 0 < margin < D+1.
 */
double interior_compare(const OperatorMatrix& a, const OperatorMatrix& b, int margin);

/// Throws std::invalid_argument unless a and b share level and basis.
void require_compatible(const OperatorMatrix& a, const OperatorMatrix& b, const char* where);

}  // namespace torusq
