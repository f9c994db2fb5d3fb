#pragma once

// Length-checked BLAS-1 style primitives over spans. All of them dispatch to
// the active kernel table.

#include <cstdint>
#include <span>

#include "shiftk/core/types.hpp"

namespace shiftk {

/// sum_i conj(x_i) * y_i
cplx dot(std::span<const cplx> x, std::span<const cplx> y);
/// sum_i x_i * y_i, the bilinear form used by COCG.
cplx dot_unconjugated(std::span<const cplx> x, std::span<const cplx> y);
double norm2(std::span<const cplx> x);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

void scale(cplx a, std::span<cplx> x);
void scale(double a, std::span<double> x);
/// y += a * x
void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
/// y = a * x + b * y
void axpby(cplx a, std::span<const cplx> x, cplx b, std::span<cplx> y);
/// out = a * r + b * q + c * rp (out may alias r, q or rp)
void three_term(std::span<cplx> out, cplx a, std::span<const cplx> r, cplx b,
                std::span<const cplx> q, cplx c, std::span<const cplx> rp);
void three_term(std::span<double> out, double a, std::span<const double> r, double b,
                std::span<const double> q, double c, std::span<const double> rp);

/// Unit-norm vector with i.i.d. complex Gaussian entries from a seeded
/// mt19937_64; the same seed yields the same vector on every run.
DenseVector random_unit_vector(std::size_t dim, std::uint64_t seed);

}  // namespace shiftk
