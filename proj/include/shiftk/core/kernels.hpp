#pragma once

// Inner-loop kernels behind the vector primitives and SpMV.
//
// Every kernel has a scalar reference implementation. On x86-64 an AVX2/FMA
// variant is compiled into a separate translation unit and chosen at runtime
// when the CPU supports it; SHIFTK_ISA=scalar in the environment forces the
// reference path. Both variants use a fixed accumulation order, so repeated
// calls are bit-identical within one variant. Across variants results agree to
// rounding (reductions are split over lanes differently).

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "shiftk/core/types.hpp"

namespace shiftk::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

struct Table {
  Isa isa;

  // complex<double>
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);  // sum conj(x_i) y_i
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);  // sum x_i y_i
  double (*nrm2sq)(const cplx* x, std::size_t n);
  void (*scal)(cplx a, cplx* x, std::size_t n);
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  void (*axpby)(cplx a, const cplx* x, cplx b, cplx* y, std::size_t n);
  // out = a*r + b*q + c*rp; out may alias any input.
  void (*three_term)(cplx* out, cplx a, const cplx* r, cplx b, const cplx* q, cplx c,
                     const cplx* rp, std::size_t n);
  void (*csr_matvec)(std::size_t rows, const std::int64_t* row_offsets,
                     const std::int32_t* cols, const cplx* values, const cplx* x, cplx* y);

  // double (the real-specialized CG path)
  double (*ddot)(const double* x, const double* y, std::size_t n);
  void (*dscal)(double a, double* x, std::size_t n);
  void (*daxpy)(double a, const double* x, double* y, std::size_t n);
  void (*dthree_term)(double* out, double a, const double* r, double b, const double* q,
                      double c, const double* rp, std::size_t n);
  // Uses the real parts of the complex value array.
  void (*csr_matvec_real)(std::size_t rows, const std::int64_t* row_offsets,
                          const std::int32_t* cols, const cplx* values, const double* x,
                          double* y);
};

const Table& scalar_table() noexcept;

/// The AVX2 table, or nullptr when it was not compiled in or the CPU lacks AVX2/FMA.
const Table* avx2_table() noexcept;

/// Table used by the library entry points.
const Table& active() noexcept;

/// Override the runtime choice. Throws InputError when `isa` is unavailable.
void select(Isa isa);

}  // namespace shiftk::kernels
