#include "shiftk/solvers/projection.hpp"

#include <algorithm>
#include <cmath>

#include "shiftk/core/kernels.hpp"

namespace shiftk {

Projection::Projection(Mode mode, std::size_t m_left, std::size_t dim,
                       std::shared_ptr<const std::vector<cplx>> data)
    : mode_(mode), m_left_(m_left), dim_(dim), data_(std::move(data)) {}

Projection Projection::full(std::size_t dim) {
  if (dim == 0) throw DimensionError("projection: dimension must be positive");
  return Projection(Mode::full, dim, dim, nullptr);
}

Projection Projection::single(std::span<const cplx> a) {
  if (a.empty()) throw DimensionError("projection: empty row");
  auto row = std::make_shared<std::vector<cplx>>(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!std::isfinite(a[j].real()) || !std::isfinite(a[j].imag()))
      throw InputError("projection: non-finite entry");
    (*row)[j] = std::conj(a[j]);
  }
  return Projection(Mode::single, 1, a.size(), std::move(row));
}

Projection Projection::rows(std::size_t m_left, std::size_t dim, std::vector<cplx> row_major) {
  if (m_left == 0 || dim == 0) throw DimensionError("projection: M_left and M must be positive");
  if (row_major.size() != m_left * dim) throw DimensionError("projection: matrix size is not M_left x M");
  for (const auto& v : row_major)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InputError("projection: non-finite entry");
  return Projection(Mode::rows, m_left, dim,
                    std::make_shared<const std::vector<cplx>>(std::move(row_major)));
}

void Projection::apply(std::span<const cplx> v, std::span<cplx> out) const {
  if (v.size() != dim_ || out.size() != m_left_) throw DimensionError("projection: operand length mismatch");
  if (mode_ == Mode::full) {
    std::copy(v.begin(), v.end(), out.begin());
    return;
  }
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < m_left_; ++i) out[i] = k.dotu(data_->data() + i * dim_, v.data(), dim_);
}

void Projection::apply(std::span<const double> v, std::span<cplx> out) const {
  if (v.size() != dim_ || out.size() != m_left_) throw DimensionError("projection: operand length mismatch");
  if (mode_ == Mode::full) {
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return cplx{x, 0.0}; });
    return;
  }
  for (std::size_t i = 0; i < m_left_; ++i) {
    const cplx* row = data_->data() + i * dim_;
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      re += row[j].real() * v[j];
      im += row[j].imag() * v[j];
    }
    out[i] = {re, im};
  }
}

DenseVector Projection::apply(std::span<const cplx> v) const {
  DenseVector out(m_left_);
  apply(v, out);
  return out;
}

}  // namespace shiftk
