#pragma once

#include <span>
#include <vector>

#include "cylwig/config.hpp"
#include "cylwig/cylinder.hpp"
#include "cylwig/kernels.hpp"

namespace cylwig {

// Amplitudes c_0..c_{N_F} of a truncated Fock-space vector.
struct FockVector {
  CVector amps;
  // 1 - sum |c_n|^2 for analytic families (0 when exact or unnormalized).
  double tail_mass = 0.0;

  int n_f() const { return static_cast<int>(amps.size()) - 1; }
  double norm2() const { return amps.squaredNorm(); }
};

class FockDensity {
 public:
  // Checks Hermiticity and positivity to tol and |Tr - 1| to tol + trace_slack;
  // the slack admits truncated, unrenormalized states.
  explicit FockDensity(CMatrix rho, double tol = 1e-10, double trace_slack = 0.0);
  static FockDensity from_pure(const FockVector& psi, double tol = 1e-10);

  int n_f() const { return static_cast<int>(rho_.rows()) - 1; }
  const CMatrix& matrix() const { return rho_; }
  double trace_slack() const { return slack_; }
  double tail_mass = 0.0;

 private:
  CMatrix rho_;
  double slack_;
};

struct NumberPhaseWigner {
  AngleGrid grid;  // phi_j
  int n_f = 0;
  RMatrix values;  // W(phi_j, n), n = 0..N_F
  double max_imag = 0.0;

  double at(int j, int n) const { return values(j, n); }
};

// Band must cover [0, N_F]; entries outside are zero.
CVector embed(const FockVector& psi, const MomentumBand& band);
DensityOperator embed(const FockDensity& rho, const MomentumBand& band, const Config& cfg = {});
// Keeps the n >= 0 block (at most n_f + 1 entries when n_f >= 0).
FockVector project(const CVector& psi, const MomentumBand& band, int n_f);
FockDensity project(const CylinderOperator& rho, int n_f, const Config& cfg = {});

// (1/2pi) Re sum_k e^{i(n-k)phi} rho_kn. Throws AdmissibilityError when the
// kernel fails the Fock-space embedding condition. Kernels other than the
// symmetric one go through the cylinder pipeline at Theta = -phi.
NumberPhaseWigner number_phase_wigner(const FockDensity& rho, const AngleGrid& grid,
                                      const Kernel& k = kernel_symmetric(), const Config& cfg = {});

// e^{i n phi} / sqrt(2 pi), n = 0..N_F (not normalizable).
FockVector phase_state(double phi, int n_f);
// Grid quadrature of |phi><phi| over the circle.
CMatrix phase_state_resolution(int n_f, const AngleGrid& grid);

std::vector<double> phase_distribution(const FockDensity& rho, const AngleGrid& grid);
std::vector<double> number_distribution(const FockDensity& rho);
double phase_expectation(std::span<const double> f, const FockDensity& rho, const AngleGrid& grid);
// Same quantity for a pure state via the double sum over Fock amplitudes.
double phase_expectation_pure(std::span<const double> f, const FockVector& psi, const AngleGrid& grid);
// Integral of P(phi) over [a, b], done mode by mode in closed form.
double pov_interval_probability(const FockDensity& rho, double a, double b);

}  // namespace cylwig
