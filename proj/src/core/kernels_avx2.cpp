// AVX2/FMA kernels. Compiled with -mavx2 -mfma; only reached through
// avx2_table() after a runtime CPU check.

#include <immintrin.h>

#include "shiftk/core/kernels.hpp"

namespace shiftk::kernels {
namespace {

// Two complex<double> per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d broadcast(cplx a) { return _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag()); }

// a * b, lane-wise complex product.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d are = _mm256_movedup_pd(a);
  const __m256d aim = _mm256_permute_pd(a, 0xF);
  const __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Partial sums of a complex reduction: lo accumulates re(x)*[yr, yi],
// hi accumulates im(x)*[yi, yr].
struct Accum {
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();

  void add(__m256d x, __m256d y) {
    lo = _mm256_fmadd_pd(_mm256_movedup_pd(x), y, lo);
    hi = _mm256_fmadd_pd(_mm256_permute_pd(x, 0xF), _mm256_permute_pd(y, 0x5), hi);
  }
  // conj(x) * y
  cplx conjugated() const {
    alignas(32) double a[4], b[4];
    _mm256_store_pd(a, lo);
    _mm256_store_pd(b, hi);
    return {(a[0] + a[2]) + (b[0] + b[2]), (a[1] + a[3]) - (b[1] + b[3])};
  }
  // x * y
  cplx plain() const {
    alignas(32) double a[4], b[4];
    _mm256_store_pd(a, lo);
    _mm256_store_pd(b, hi);
    return {(a[0] + a[2]) - (b[0] + b[2]), (a[1] + a[3]) + (b[1] + b[3])};
  }
};

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  Accum acc;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc.add(load2(x + i), load2(y + i));
  cplx s = acc.conjugated();
  for (; i < n; ++i) s += mul(std::conj(x[i]), y[i]);
  return s;
}

cplx dotu(const cplx* x, const cplx* y, std::size_t n) {
  Accum acc;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc.add(load2(x + i), load2(y + i));
  cplx s = acc.plain();
  for (; i < n; ++i) s += mul(x[i], y[i]);
  return s;
}

double nrm2sq(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  double s = (a[0] + a[2]) + (a[1] + a[3]);
  for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void scal(cplx a, cplx* x, std::size_t n) {
  const __m256d va = broadcast(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(x + i, cmul(va, load2(x + i)));
  for (; i < n; ++i) x[i] = mul(a, x[i]);
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d va = broadcast(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(va, load2(x + i))));
  for (; i < n; ++i) y[i] += mul(a, x[i]);
}

void axpby(cplx a, const cplx* x, cplx b, cplx* y, std::size_t n) {
  const __m256d va = broadcast(a);
  const __m256d vb = broadcast(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    store2(y + i, _mm256_add_pd(cmul(va, load2(x + i)), cmul(vb, load2(y + i))));
  for (; i < n; ++i) y[i] = mul(a, x[i]) + mul(b, y[i]);
}

void three_term(cplx* out, cplx a, const cplx* r, cplx b, const cplx* q, cplx c, const cplx* rp,
                std::size_t n) {
  const __m256d va = broadcast(a);
  const __m256d vb = broadcast(b);
  const __m256d vc = broadcast(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d t = _mm256_add_pd(cmul(va, load2(r + i)), cmul(vb, load2(q + i)));
    store2(out + i, _mm256_add_pd(t, cmul(vc, load2(rp + i))));
  }
  for (; i < n; ++i) out[i] = mul(a, r[i]) + mul(b, q[i]) + mul(c, rp[i]);
}

void csr_matvec(std::size_t rows, const std::int64_t* row_offsets, const std::int32_t* cols,
                const cplx* values, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    Accum acc;
    std::int64_t k = row_offsets[i];
    const std::int64_t end = row_offsets[i + 1];
    for (; k + 2 <= end; k += 2) {
      const __m128d x0 = _mm_loadu_pd(reinterpret_cast<const double*>(x + cols[k]));
      const __m128d x1 = _mm_loadu_pd(reinterpret_cast<const double*>(x + cols[k + 1]));
      acc.add(load2(values + k), _mm256_set_m128d(x1, x0));
    }
    cplx s = acc.plain();
    for (; k < end; ++k) s += mul(values[k], x[cols[k]]);
    y[i] = s;
  }
}

double ddot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  double s = (a[0] + a[2]) + (a[1] + a[3]);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void dscal(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void daxpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void dthree_term(double* out, double a, const double* r, double b, const double* q, double c,
                 const double* rp, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(r + i));
    t = _mm256_fmadd_pd(vb, _mm256_loadu_pd(q + i), t);
    t = _mm256_fmadd_pd(vc, _mm256_loadu_pd(rp + i), t);
    _mm256_storeu_pd(out + i, t);
  }
  for (; i < n; ++i) out[i] = a * r[i] + b * q[i] + c * rp[i];
}

void csr_matvec_real(std::size_t rows, const std::int64_t* row_offsets, const std::int32_t* cols,
                     const cplx* values, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    __m256d acc = _mm256_setzero_pd();
    std::int64_t k = row_offsets[i];
    const std::int64_t end = row_offsets[i + 1];
    for (; k + 4 <= end; k += 4) {
      // [v0r, v2r, v1r, v3r]
      const __m256d re = _mm256_unpacklo_pd(load2(values + k), load2(values + k + 2));
      const __m128i idx = _mm_setr_epi32(cols[k], cols[k + 2], cols[k + 1], cols[k + 3]);
      acc = _mm256_fmadd_pd(re, _mm256_i32gather_pd(x, idx, 8), acc);
    }
    alignas(32) double a[4];
    _mm256_store_pd(a, acc);
    double s = (a[0] + a[2]) + (a[1] + a[3]);
    for (; k < end; ++k) s += values[k].real() * x[cols[k]];
    y[i] = s;
  }
}

constexpr Table kAvx2{
    Isa::avx2, dotc,  dotu,  nrm2sq,      scal,           axpy, axpby, three_term, csr_matvec,
    ddot,      dscal, daxpy, dthree_term, csr_matvec_real,
};

}  // namespace

const Table* avx2_kernels_compiled() noexcept { return &kAvx2; }

}  // namespace shiftk::kernels
