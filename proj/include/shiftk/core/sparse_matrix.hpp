#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "shiftk/core/types.hpp"

namespace shiftk {

enum class Symmetry { general, symmetric, hermitian };
enum class ValueKind { real, complex };

std::string_view to_string(Symmetry s) noexcept;
std::string_view to_string(ValueKind k) noexcept;

struct Triplet {
  std::int64_t row;
  std::int64_t col;
  cplx value;
};

/// Square compressed-row matrix. Symmetric and Hermitian matrices are stored
/// fully expanded; the tag records the structure the caller promised (and
/// Matrix Market output writes only the lower triangle for them).
///
/// Invariants established by the constructors: row offsets nondecreasing,
/// columns inside [0, M) and strictly increasing within a row, Hermitian
/// diagonals purely real, real-kind values with zero imaginary parts.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t dim, std::vector<std::int64_t> row_offsets,
               std::vector<std::int32_t> cols, std::vector<cplx> values,
               Symmetry symmetry = Symmetry::general, ValueKind kind = ValueKind::complex);

  /// Assemble from full-storage triplets; duplicate (row, col) entries are summed.
  static SparseMatrix from_triplets(std::size_t dim, std::vector<Triplet> entries,
                                    Symmetry symmetry = Symmetry::general,
                                    ValueKind kind = ValueKind::complex);
  static SparseMatrix identity(std::size_t dim);
  static SparseMatrix diagonal(std::span<const cplx> diag, ValueKind kind = ValueKind::complex);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  Symmetry symmetry() const noexcept { return symmetry_; }
  ValueKind value_kind() const noexcept { return kind_; }
  std::span<const std::int64_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::int32_t> column_indices() const noexcept { return cols_; }
  std::span<const cplx> values() const noexcept { return values_; }

  /// Entry (i, j), zero when not stored. O(log nnz_row).
  cplx at(std::size_t i, std::size_t j) const;

  /// Conjugate transpose, tagged with the same symmetry.
  SparseMatrix adjoint() const;

  /// Explicit transpose comparisons, |A_ij - A_ji| <= tol (resp. conj).
  bool is_symmetric(double tol = 0.0) const;
  bool is_hermitian(double tol = 0.0) const;
  /// H^dagger == H, from the tag when it guarantees it, else by comparison.
  bool is_self_adjoint() const;

 private:
  void validate() const;

  std::size_t dim_ = 0;
  std::vector<std::int64_t> row_offsets_{0};
  std::vector<std::int32_t> cols_;
  std::vector<cplx> values_;
  Symmetry symmetry_ = Symmetry::general;
  ValueKind kind_ = ValueKind::complex;
};

/// y = A x
void spmv(const SparseMatrix& a, std::span<const cplx> x, std::span<cplx> y);
DenseVector spmv(const SparseMatrix& a, std::span<const cplx> x);
/// Real path for cg_r; requires value_kind() == real.
void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y);

/// Process-wide count of spmv calls (instrumentation for cost assertions).
std::uint64_t spmv_count() noexcept;
void reset_spmv_count() noexcept;

}  // namespace shiftk
