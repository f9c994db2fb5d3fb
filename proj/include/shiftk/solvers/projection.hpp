#pragma once

#include <memory>
#include <span>
#include <vector>

#include "shiftk/core/types.hpp"

namespace shiftk {

/// The map P with y = P x: only P x^sigma is accumulated, so a Green's function
/// element needs one number per shift instead of a full solution vector.
///
/// Copies share the row data, so a projection can be handed to many solvers
/// without duplicating an M-length buffer.
class Projection {
 public:
  enum class Mode { full, single, rows };

  /// P = I, M_left = M.
  static Projection full(std::size_t dim);
  /// P = a^dagger (one row), M_left = 1.
  static Projection single(std::span<const cplx> a);
  /// Explicit M_left x M matrix, row-major.
  static Projection rows(std::size_t m_left, std::size_t dim, std::vector<cplx> row_major);

  Mode mode() const noexcept { return mode_; }
  std::size_t rows() const noexcept { return m_left_; }
  std::size_t cols() const noexcept { return dim_; }

  /// out = P v
  void apply(std::span<const cplx> v, std::span<cplx> out) const;
  void apply(std::span<const double> v, std::span<cplx> out) const;
  DenseVector apply(std::span<const cplx> v) const;

 private:
  Projection(Mode mode, std::size_t m_left, std::size_t dim, std::shared_ptr<const std::vector<cplx>> data);

  Mode mode_ = Mode::full;
  std::size_t m_left_ = 0;
  std::size_t dim_ = 0;
  std::shared_ptr<const std::vector<cplx>> data_;  // rows of P, row-major
};

}  // namespace shiftk
