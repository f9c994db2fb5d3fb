#pragma once

// Matrix Market exchange format.
//
// Supported banners: `%%MatrixMarket matrix coordinate {real|complex}
// {general|symmetric|hermitian}` for square sparse matrices (1-based indices,
// only the lower triangle stored for symmetric/hermitian) and
// `%%MatrixMarket matrix array {real|complex} general` with N columns = 1 for
// dense vectors. Pattern, integer and skew-symmetric qualifiers are rejected.

#include <filesystem>
#include <span>
#include <variant>

#include "shiftk/core/sparse_matrix.hpp"

namespace shiftk {

struct MatrixMarketOptions {
  /// Reject files whose field qualifier is complex.
  bool real_only = false;
};

using MatrixMarketObject = std::variant<SparseMatrix, DenseVector>;

MatrixMarketObject mm_read(const std::filesystem::path& path, MatrixMarketOptions opts = {});
SparseMatrix mm_read_matrix(const std::filesystem::path& path, MatrixMarketOptions opts = {});
DenseVector mm_read_vector(const std::filesystem::path& path, MatrixMarketOptions opts = {});

/// Writes 17 significant digits; symmetric/hermitian matrices store the lower triangle.
void mm_write(const SparseMatrix& a, const std::filesystem::path& path);
void mm_write(std::span<const cplx> v, const std::filesystem::path& path,
              ValueKind kind = ValueKind::complex);

}  // namespace shiftk
