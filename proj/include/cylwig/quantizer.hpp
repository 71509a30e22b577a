#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>

#include "cylwig/config.hpp"
#include "cylwig/cylinder.hpp"
#include "cylwig/kernels.hpp"

namespace cylwig {

// <k+l|U(sigma,l)|k> = e^{i sigma (k + l/2)} for k, k+l in the band.
CylinderOperator u_operator(double sigma, int l, const MomentumBand& band);

// (1/2pi) integral of g(sigma) Tr U(sigma, 0), with g = sum_p g_p e^{i p sigma}
// for p in [-P, P] (coeffs has 2P + 1 entries). Evaluated by exact quadrature.
cplx pair_trace_u(const MomentumBand& band, std::span<const cplx> g_coeffs);

struct TraceIdentityReport {
  double trace_nonzero_l = 0.0;   // max |Tr U(sigma, l)|, l != 0, on sigma probes
  double pairing_error = 0.0;     // max |pairing - g(0)| over e^{i p sigma}, |p| <= half-width
  double cross_trace = 0.0;       // max |Tr U^+(s,l) U(s',l')|, l != l'
  double smeared_error = 0.0;     // l = l' pairing error in s' - s on the interior
  bool exact(double tol) const {
    return trace_nonzero_l <= tol && pairing_error <= tol && cross_trace <= tol && smeared_error <= tol;
  }
};

// Band must be symmetric (n_min = -n_max).
TraceIdentityReport trace_identity_report(const MomentumBand& band);

// <j|Omega[K](theta,n)|k> = (1/2pi) e^{-i(j-k) theta} I_K(j-k, (j+k)/2 - n).
// Uses the closed form for the symmetric kernel.
CylinderOperator gsw_quantizer(const Kernel& k, double theta, int n, const MomentumBand& band,
                               const Config& cfg = {});
// Same formula, always through the kernel moments.
CylinderOperator gsw_quantizer_moments(const Kernel& k, double theta, int n, const MomentumBand& band,
                                       const Config& cfg = {});

// Omega[K](Theta_j, n) over a grid and band, each built on first access.
class QuantizerSet {
 public:
  QuantizerSet(Kernel k, AngleGrid grid, MomentumBand band, Config cfg = {});

  const CylinderOperator& at(int j, int n) const;
  const Kernel& kernel() const { return kernel_; }
  const AngleGrid& grid() const { return grid_; }
  const MomentumBand& band() const { return band_; }

 private:
  struct Slot {
    std::once_flag once;
    std::optional<CylinderOperator> op;
  };
  Kernel kernel_;
  AngleGrid grid_;
  MomentumBand band_;
  Config cfg_;
  std::unique_ptr<Slot[]> slots_;
};

// sum_n integral f(Theta, n hbar) Omega[K](Theta, n) dTheta / 2pi.
// Needs M >= 2 dim - 1 so every off-diagonal mode is resolved.
CylinderOperator quantize(const Kernel& k, const CylinderFunction& f, const Config& cfg = {});

// Tr{Omega[K](Theta_j, n) A} on the grid.
CylinderFunction trace_symbol(const Kernel& k, const CylinderOperator& a, const AngleGrid& grid,
                              double hbar, const Config& cfg = {});

// Generalized Weyl symbol. K = 1 uses the trace formula directly; other kernels
// apply (K^T)^{-1} to the K = 1 symbol and must not vanish.
CylinderFunction weyl_symbol(const Kernel& k, const CylinderOperator& a, const AngleGrid& grid,
                             double hbar, const Config& cfg = {});

enum class KHatMode { plain, transpose, inverse, inverse_transpose };

// The convolution operator K^ acting mode by mode in Theta:
//   plain:     (K F)_m(n)   = (1/2pi) sum_n' I_K(-m, n' - n) F_m(n')
//   transpose: (K^T F)_m(n) = (1/2pi) sum_n' I_K(m, n - n') F_m(n')
// with n' over the band. Inverse modes solve the same systems and throw
// NonInvertibleKernelError when a block is singular to tol. Needs odd M.
CylinderFunction k_hat_apply(const Kernel& k, const CylinderFunction& f, KHatMode mode, const Config& cfg = {});

struct QuantizerPropertyReport {
  double trace_error = 0.0;               // max |Tr Omega - 1|
  double hermiticity_error = 0.0;         // max |Omega - Omega^+|
  double angle_projector_error = 0.0;     // sum_n Omega / 2pi vs |Theta><Theta|
  double momentum_projector_error = 0.0;  // (1/2pi) integral Omega dTheta vs |n><n|
  double pairing_error = 0.0;             // smeared trace-orthogonality, interior
  int pairing_l_max = 0;
  int pairing_d_max = 0;
};

QuantizerPropertyReport quantizer_property_report(const Kernel& k, const AngleGrid& grid,
                                                  const MomentumBand& band, const Config& cfg = {});

}  // namespace cylwig
