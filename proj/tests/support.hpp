#pragma once

#include <cmath>
#include <random>

#include "cylwig/cylinder.hpp"
#include "cylwig/kernels.hpp"
#include "cylwig/numberphase.hpp"

namespace cylwig::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline double uniform(double a = -1.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng()); }
inline cplx cuniform() { return {uniform(), uniform()}; }

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Random density matrix of the given rank (Gram construction, unit trace).
inline CMatrix random_density(int dim, int rank) {
  CMatrix g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int r = 0; r < rank; ++r) g(i, r) = cuniform();
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// Symbol with Fourier modes |m| <= B, momentum support [lo, hi] (zero elsewhere).
inline CylinderFunction random_symbol(const AngleGrid& grid, const MomentumBand& band, double hbar, int B, int lo,
                                      int hi, bool even_only = false) {
  CMatrix c = CMatrix::Zero(2 * B + 1, band.dim());
  for (int m = -B; m <= B; ++m) {
    if (even_only && m % 2 != 0) continue;
    for (int n = lo; n <= hi; ++n) c(m + B, band.index(n)) = cuniform();
  }
  return CylinderFunction::synthesize(grid, band, hbar, c);
}

// Operator with |j - k| <= w, supported on [lo, hi] x [lo, hi].
inline CylinderOperator random_banded_operator(const MomentumBand& band, int w, int lo, int hi,
                                               bool even_only = false) {
  CMatrix a = CMatrix::Zero(band.dim(), band.dim());
  for (int j = lo; j <= hi; ++j)
    for (int k = lo; k <= hi; ++k)
      if (std::abs(j - k) <= w && (!even_only || (j - k) % 2 == 0)) a(band.index(j), band.index(k)) = cuniform();
  return {band, a};
}

// (3 + cos(sigma l / 2)) / 4: nonvanishing, satisfies the three conditions, local on even modes.
inline Kernel kernel_mix() {
  return Kernel(
      "mix", [](double s, int l) { return cplx(0.75 + 0.25 * std::cos(0.5 * s * l)); },
      [](int l, HalfInt mu) {
        return 0.75 * weyl_moment(mu) + 0.125 * (weyl_moment({mu.twice + l}) + weyl_moment({mu.twice - l}));
      });
}

// Gaussian ordering with no closed-form moment: exercises the quadrature fallback.
inline Kernel kernel_gauss(double a = 1e-3) {
  return Kernel("gauss", [a](double s, int l) { return cplx(std::exp(-a * s * s * l * l)); });
}

// e^{i sigma l / 2}: satisfies K(0,l) = K(s,0) = 1 but not conj K(s,l) = K(-s,-l).
inline Kernel kernel_phase() {
  return Kernel("phase", [](double s, int l) { return std::exp(cplx(0.0, 0.5 * s * l)); });
}

inline FockDensity random_fock_density(int n_f, int rank) { return FockDensity(random_density(n_f + 1, rank)); }

}  // namespace cylwig::testing
