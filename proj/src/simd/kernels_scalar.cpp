#include "cylwig/simd/kernels.hpp"

namespace cylwig::simd {
namespace {

cplx dotu_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dotc_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpy_re_scalar(cplx alpha, const cplx* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    y[i] += alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
}

cplx sum_scalar(const cplx* x, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real();
    im += x[i].imag();
  }
  return {re, im};
}

constexpr KernelTable kScalar{Isa::scalar, "scalar", dotu_scalar, dotc_scalar,
                              axpy_scalar, axpy_re_scalar, sum_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace cylwig::simd
