#include "shiftk/core/kernels.hpp"

namespace shiftk::kernels {
namespace {

// Complex products are spelled out on real and imaginary parts so the result
// does not depend on the library's handling of std::complex operator* (which
// may take a slow NaN-recovery branch).
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

cplx dotu(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

double nrm2sq(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void scal(cplx a, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = mul(a, x[i]);
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += mul(a, x[i]);
}

void axpby(cplx a, const cplx* x, cplx b, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = mul(a, x[i]) + mul(b, y[i]);
}

void three_term(cplx* out, cplx a, const cplx* r, cplx b, const cplx* q, cplx c, const cplx* rp,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mul(a, r[i]) + mul(b, q[i]) + mul(c, rp[i]);
}

void csr_matvec(std::size_t rows, const std::int64_t* row_offsets, const std::int32_t* cols,
                const cplx* values, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double re = 0.0, im = 0.0;
    for (std::int64_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
      const cplx v = values[k];
      const cplx u = x[cols[k]];
      re += v.real() * u.real() - v.imag() * u.imag();
      im += v.real() * u.imag() + v.imag() * u.real();
    }
    y[i] = {re, im};
  }
}

double ddot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void dscal(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void daxpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void dthree_term(double* out, double a, const double* r, double b, const double* q, double c,
                 const double* rp, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * r[i] + b * q[i] + c * rp[i];
}

void csr_matvec_real(std::size_t rows, const std::int64_t* row_offsets, const std::int32_t* cols,
                     const cplx* values, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::int64_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) s += values[k].real() * x[cols[k]];
    y[i] = s;
  }
}

constexpr Table kScalar{
    Isa::scalar, dotc,  dotu,  nrm2sq, scal,        axpy,           axpby, three_term, csr_matvec,
    ddot,        dscal, daxpy, dthree_term, csr_matvec_real,
};

}  // namespace

const Table& scalar_table() noexcept { return kScalar; }

}  // namespace shiftk::kernels
