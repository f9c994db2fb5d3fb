#pragma once

// Dense reference oracles for desk-scale problems.

#include <Eigen/Dense>
#include <vector>

#include "shiftk/core/sparse_matrix.hpp"

namespace shiftk {

inline constexpr std::size_t kDenseLimit = 2048;

Eigen::MatrixXcd dense_assemble(const SparseMatrix& a);

struct DenseEig {
  std::vector<double> values;  // ascending
  Eigen::MatrixXcd vectors;    // orthonormal columns
};

/// Eigenpairs of a Hermitian matrix (only the lower triangle is read).
/// Throws DimensionError above kDenseLimit.
DenseEig dense_eig(const Eigen::MatrixXcd& h);

}  // namespace shiftk
