// Compiled with -mavx2 -mfma. Nothing here may run before dispatch has checked
// the CPU. Each __m256d holds two complex numbers as (re0, im0, re1, im1).

#include <immintrin.h>

#include "cylwig/simd/kernels.hpp"

namespace cylwig::simd {
namespace {

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum_even(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[0] + t[2];
}
inline double hsum_odd(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[1] + t[3];
}

// acc_direct collects (ar*br, ai*bi), acc_swap collects (ar*bi, ai*br).
cplx dotu_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d d0 = _mm256_setzero_pd(), d1 = _mm256_setzero_pd();
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a0 = _mm256_loadu_pd(dp(a + i)), a1 = _mm256_loadu_pd(dp(a + i + 2));
    __m256d b0 = _mm256_loadu_pd(dp(b + i)), b1 = _mm256_loadu_pd(dp(b + i + 2));
    d0 = _mm256_fmadd_pd(a0, b0, d0);
    d1 = _mm256_fmadd_pd(a1, b1, d1);
    s0 = _mm256_fmadd_pd(a0, swap_pairs(b0), s0);
    s1 = _mm256_fmadd_pd(a1, swap_pairs(b1), s1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d a0 = _mm256_loadu_pd(dp(a + i)), b0 = _mm256_loadu_pd(dp(b + i));
    d0 = _mm256_fmadd_pd(a0, b0, d0);
    s0 = _mm256_fmadd_pd(a0, swap_pairs(b0), s0);
  }
  __m256d d = _mm256_add_pd(d0, d1), s = _mm256_add_pd(s0, s1);
  double re = hsum_even(d) - hsum_odd(d);
  double im = hsum_even(s) + hsum_odd(s);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dotc_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d d0 = _mm256_setzero_pd(), d1 = _mm256_setzero_pd();
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a0 = _mm256_loadu_pd(dp(a + i)), a1 = _mm256_loadu_pd(dp(a + i + 2));
    __m256d b0 = _mm256_loadu_pd(dp(b + i)), b1 = _mm256_loadu_pd(dp(b + i + 2));
    d0 = _mm256_fmadd_pd(a0, b0, d0);
    d1 = _mm256_fmadd_pd(a1, b1, d1);
    s0 = _mm256_fmadd_pd(a0, swap_pairs(b0), s0);
    s1 = _mm256_fmadd_pd(a1, swap_pairs(b1), s1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d a0 = _mm256_loadu_pd(dp(a + i)), b0 = _mm256_loadu_pd(dp(b + i));
    d0 = _mm256_fmadd_pd(a0, b0, d0);
    s0 = _mm256_fmadd_pd(a0, swap_pairs(b0), s0);
  }
  __m256d d = _mm256_add_pd(d0, d1), s = _mm256_add_pd(s0, s1);
  double re = hsum_even(d) + hsum_odd(d);
  double im = hsum_even(s) - hsum_odd(s);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(dp(x + i));
    __m256d t = _mm256_mul_pd(swap_pairs(xv), ai);  // (xi*ai, xr*ai)
    __m256d p = _mm256_fmaddsub_pd(xv, ar, t);      // (xr*ar - xi*ai, xi*ar + xr*ai)
    _mm256_storeu_pd(dp(y + i), _mm256_add_pd(_mm256_loadu_pd(dp(y + i)), p));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy_re_avx2(cplx alpha, const cplx* x, double* y, std::size_t n) {
  const __m256d coef = _mm256_setr_pd(alpha.real(), -alpha.imag(), alpha.real(), -alpha.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(dp(x + i)), coef);
    __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(dp(x + i + 2)), coef);
    // hadd yields (r0, r2, r1, r3); restore order.
    __m256d h = _mm256_permute4x64_pd(_mm256_hadd_pd(p0, p1), 0b11011000);
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), h));
  }
  for (; i < n; ++i) y[i] += alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
}

cplx sum_avx2(const cplx* x, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 = _mm256_add_pd(s0, _mm256_loadu_pd(dp(x + i)));
    s1 = _mm256_add_pd(s1, _mm256_loadu_pd(dp(x + i + 2)));
  }
  for (; i + 2 <= n; i += 2) s0 = _mm256_add_pd(s0, _mm256_loadu_pd(dp(x + i)));
  __m256d s = _mm256_add_pd(s0, s1);
  double re = hsum_even(s), im = hsum_odd(s);
  for (; i < n; ++i) {
    re += x[i].real();
    im += x[i].imag();
  }
  return {re, im};
}

constexpr KernelTable kAvx2{Isa::avx2, "avx2", dotu_avx2, dotc_avx2,
                            axpy_avx2, axpy_re_avx2, sum_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table_unchecked() { return &kAvx2; }
}  // namespace detail

}  // namespace cylwig::simd
