#include "shiftk/core/vector_ops.hpp"

#include <cmath>
#include <random>
#include <string>

#include "shiftk/core/kernels.hpp"

namespace shiftk {
namespace {

void require_same(std::size_t a, std::size_t b, const char* op) {
  if (a != b)
    throw DimensionError(std::string(op) + ": length mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
}

}  // namespace

cplx dot(std::span<const cplx> x, std::span<const cplx> y) {
  require_same(x.size(), y.size(), "dot");
  return kernels::active().dotc(x.data(), y.data(), x.size());
}

cplx dot_unconjugated(std::span<const cplx> x, std::span<const cplx> y) {
  require_same(x.size(), y.size(), "dot_unconjugated");
  return kernels::active().dotu(x.data(), y.data(), x.size());
}

double norm2(std::span<const cplx> x) { return std::sqrt(kernels::active().nrm2sq(x.data(), x.size())); }

double dot(std::span<const double> x, std::span<const double> y) {
  require_same(x.size(), y.size(), "dot");
  return kernels::active().ddot(x.data(), y.data(), x.size());
}

double norm2(std::span<const double> x) { return std::sqrt(kernels::active().ddot(x.data(), x.data(), x.size())); }

void scale(cplx a, std::span<cplx> x) { kernels::active().scal(a, x.data(), x.size()); }

void scale(double a, std::span<double> x) { kernels::active().dscal(a, x.data(), x.size()); }

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  require_same(x.size(), y.size(), "axpy");
  kernels::active().axpy(a, x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  require_same(x.size(), y.size(), "axpy");
  kernels::active().daxpy(a, x.data(), y.data(), x.size());
}

void axpby(cplx a, std::span<const cplx> x, cplx b, std::span<cplx> y) {
  require_same(x.size(), y.size(), "axpby");
  kernels::active().axpby(a, x.data(), b, y.data(), x.size());
}

void three_term(std::span<cplx> out, cplx a, std::span<const cplx> r, cplx b,
                std::span<const cplx> q, cplx c, std::span<const cplx> rp) {
  require_same(out.size(), r.size(), "three_term");
  require_same(out.size(), q.size(), "three_term");
  require_same(out.size(), rp.size(), "three_term");
  kernels::active().three_term(out.data(), a, r.data(), b, q.data(), c, rp.data(), out.size());
}

void three_term(std::span<double> out, double a, std::span<const double> r, double b,
                std::span<const double> q, double c, std::span<const double> rp) {
  require_same(out.size(), r.size(), "three_term");
  require_same(out.size(), q.size(), "three_term");
  require_same(out.size(), rp.size(), "three_term");
  kernels::active().dthree_term(out.data(), a, r.data(), b, q.data(), c, rp.data(), out.size());
}

DenseVector random_unit_vector(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw DimensionError("random_unit_vector: dimension must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  DenseVector v(dim);
  for (auto& x : v) {
    const double re = normal(gen);
    x = {re, normal(gen)};
  }
  scale(cplx{1.0 / norm2(v), 0.0}, v);
  return v;
}

}  // namespace shiftk
