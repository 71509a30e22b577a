#pragma once

// Vector primitives on interleaved complex<double> arrays. Every kernel has a
// portable scalar reference and, on x86-64, an AVX2+FMA variant; the variant is
// picked once at first use from CPUID, or from CYLWIG_SIMD=scalar|avx2|auto.

#include <complex>
#include <cstddef>
#include <span>

namespace cylwig::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // sum_i a[i] * b[i]
  cplx (*dotu)(const cplx* a, const cplx* b, std::size_t n);
  // sum_i conj(a[i]) * b[i]
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // y[i] += Re(alpha * x[i])
  void (*axpy_re)(cplx alpha, const cplx* x, double* y, std::size_t n);
  // sum_i x[i]
  cplx (*sum)(const cplx* x, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the variant was not compiled in or the CPU lacks the features.
const KernelTable* avx2_table();

const KernelTable& active();
// Switches the process-wide table. Returns false (and changes nothing) when the
// requested variant is unavailable.
bool select(Isa isa);
const char* isa_name(Isa isa);

inline cplx dotu(std::span<const cplx> a, std::span<const cplx> b) {
  return active().dotu(a.data(), b.data(), a.size());
}
inline cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  return active().dotc(a.data(), b.data(), a.size());
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void axpy_re(cplx alpha, std::span<const cplx> x, std::span<double> y) {
  active().axpy_re(alpha, x.data(), y.data(), x.size());
}
inline cplx sum(std::span<const cplx> x) { return active().sum(x.data(), x.size()); }

namespace detail {
const KernelTable* avx2_table_unchecked();
}

}  // namespace cylwig::simd
