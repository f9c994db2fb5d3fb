#include "shiftk/core/sparse_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

#include "shiftk/core/kernels.hpp"

namespace shiftk {
namespace {

std::atomic<std::uint64_t> g_spmv_calls{0};

}  // namespace

std::string_view to_string(Symmetry s) noexcept {
  switch (s) {
    case Symmetry::general:
      return "general";
    case Symmetry::symmetric:
      return "symmetric";
    case Symmetry::hermitian:
      return "hermitian";
  }
  return "general";
}

std::string_view to_string(ValueKind k) noexcept { return k == ValueKind::real ? "real" : "complex"; }

SparseMatrix::SparseMatrix(std::size_t dim, std::vector<std::int64_t> row_offsets,
                           std::vector<std::int32_t> cols, std::vector<cplx> values,
                           Symmetry symmetry, ValueKind kind)
    : dim_(dim),
      row_offsets_(std::move(row_offsets)),
      cols_(std::move(cols)),
      values_(std::move(values)),
      symmetry_(symmetry),
      kind_(kind) {
  validate();
}

void SparseMatrix::validate() const {
  if (dim_ == 0) throw DimensionError("sparse matrix: dimension must be positive");
  if (dim_ > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw DimensionError("sparse matrix: dimension exceeds 32-bit column indices");
  if (row_offsets_.size() != dim_ + 1) throw DimensionError("sparse matrix: row_offsets must have M+1 entries");
  if (cols_.size() != values_.size()) throw DimensionError("sparse matrix: column/value length mismatch");
  if (row_offsets_.front() != 0 || row_offsets_.back() != static_cast<std::int64_t>(values_.size()))
    throw InputError("sparse matrix: row_offsets must span [0, nnz]");
  for (std::size_t i = 0; i < dim_; ++i) {
    const auto begin = row_offsets_[i], end = row_offsets_[i + 1];
    if (end < begin) throw InputError("sparse matrix: row_offsets must be nondecreasing");
    for (auto k = begin; k < end; ++k) {
      const auto c = cols_[k];
      if (c < 0 || static_cast<std::size_t>(c) >= dim_)
        throw InputError("sparse matrix: column index out of range in row " + std::to_string(i));
      if (k > begin && cols_[k - 1] >= c)
        throw InputError("sparse matrix: duplicate or unsorted column in row " + std::to_string(i));
      if (kind_ == ValueKind::real && values_[k].imag() != 0.0)
        throw InputError("sparse matrix: complex value in a real-kind matrix");
      if (symmetry_ == Symmetry::hermitian && static_cast<std::size_t>(c) == i && values_[k].imag() != 0.0)
        throw InputError("sparse matrix: Hermitian diagonal with nonzero imaginary part");
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t dim, std::vector<Triplet> entries,
                                         Symmetry symmetry, ValueKind kind) {
  for (const auto& t : entries) {
    if (t.row < 0 || t.col < 0 || static_cast<std::size_t>(t.row) >= dim ||
        static_cast<std::size_t>(t.col) >= dim)
      throw InputError("sparse matrix: triplet index out of range");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::int64_t> offsets(dim + 1, 0);
  std::vector<std::int32_t> cols;
  std::vector<cplx> values;
  cols.reserve(entries.size());
  values.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& t = entries[k];
    if (!cols.empty() && k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
      values.back() += t.value;
      continue;
    }
    cols.push_back(static_cast<std::int32_t>(t.col));
    values.push_back(t.value);
    ++offsets[t.row + 1];
  }
  for (std::size_t i = 0; i < dim; ++i) offsets[i + 1] += offsets[i];
  return SparseMatrix(dim, std::move(offsets), std::move(cols), std::move(values), symmetry, kind);
}

SparseMatrix SparseMatrix::identity(std::size_t dim) {
  std::vector<cplx> d(dim, cplx{1.0, 0.0});
  return diagonal(d, ValueKind::real);
}

bool SparseMatrix::is_self_adjoint() const {
  if (symmetry_ == Symmetry::hermitian) return true;
  if (symmetry_ == Symmetry::symmetric && kind_ == ValueKind::real) return true;
  return is_hermitian();
}

SparseMatrix SparseMatrix::diagonal(std::span<const cplx> diag, ValueKind kind) {
  const std::size_t n = diag.size();
  std::vector<std::int64_t> offsets(n + 1);
  std::vector<std::int32_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) {
    offsets[i + 1] = static_cast<std::int64_t>(i + 1);
    cols[i] = static_cast<std::int32_t>(i);
  }
  bool real_diag = std::all_of(diag.begin(), diag.end(), [](cplx v) { return v.imag() == 0.0; });
  const Symmetry sym = real_diag && kind == ValueKind::complex ? Symmetry::hermitian : Symmetry::symmetric;
  return SparseMatrix(n, std::move(offsets), std::move(cols), std::vector<cplx>(diag.begin(), diag.end()),
                      sym, kind);
}

cplx SparseMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw DimensionError("sparse matrix: index out of range");
  const auto first = cols_.begin() + row_offsets_[i];
  const auto last = cols_.begin() + row_offsets_[i + 1];
  const auto it = std::lower_bound(first, last, static_cast<std::int32_t>(j));
  if (it == last || *it != static_cast<std::int32_t>(j)) return {};
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

SparseMatrix SparseMatrix::adjoint() const {
  std::vector<std::int64_t> offsets(dim_ + 1, 0);
  for (auto c : cols_) ++offsets[c + 1];
  for (std::size_t i = 0; i < dim_; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::int64_t> fill(offsets.begin(), offsets.end() - 1);
  std::vector<std::int32_t> cols(cols_.size());
  std::vector<cplx> values(values_.size());
  // Rows are visited in order, so columns of the transpose come out sorted.
  for (std::size_t i = 0; i < dim_; ++i) {
    for (auto k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const auto dst = fill[cols_[k]]++;
      cols[dst] = static_cast<std::int32_t>(i);
      values[dst] = std::conj(values_[k]);
    }
  }
  return SparseMatrix(dim_, std::move(offsets), std::move(cols), std::move(values), symmetry_, kind_);
}

bool SparseMatrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (auto k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      if (std::abs(values_[k] - at(cols_[k], i)) > tol) return false;
  return true;
}

bool SparseMatrix::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (auto k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      if (std::abs(values_[k] - std::conj(at(cols_[k], i))) > tol) return false;
  return true;
}

void spmv(const SparseMatrix& a, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != a.dimension() || y.size() != a.dimension())
    throw DimensionError("spmv: vector length does not match matrix dimension");
  g_spmv_calls.fetch_add(1, std::memory_order_relaxed);
  kernels::active().csr_matvec(a.dimension(), a.row_offsets().data(), a.column_indices().data(),
                               a.values().data(), x.data(), y.data());
}

DenseVector spmv(const SparseMatrix& a, std::span<const cplx> x) {
  DenseVector y(a.dimension());
  spmv(a, x, y);
  return y;
}

void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  if (a.value_kind() != ValueKind::real) throw InputError("spmv: real vectors require a real-valued matrix");
  if (x.size() != a.dimension() || y.size() != a.dimension())
    throw DimensionError("spmv: vector length does not match matrix dimension");
  g_spmv_calls.fetch_add(1, std::memory_order_relaxed);
  kernels::active().csr_matvec_real(a.dimension(), a.row_offsets().data(), a.column_indices().data(),
                                    a.values().data(), x.data(), y.data());
}

std::uint64_t spmv_count() noexcept { return g_spmv_calls.load(std::memory_order_relaxed); }

void reset_spmv_count() noexcept { g_spmv_calls.store(0, std::memory_order_relaxed); }

}  // namespace shiftk
