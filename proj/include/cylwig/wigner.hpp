#pragma once

#include <string>
#include <vector>

#include "cylwig/config.hpp"
#include "cylwig/cylinder.hpp"
#include "cylwig/kernels.hpp"

namespace cylwig {

struct WignerGrid {
  AngleGrid grid;
  MomentumBand band;
  RMatrix values;  // W(Theta_j, n): rows grid points, columns band indices
  double hbar = 1.0;
  std::string kernel;
  KernelFlags provenance;  // kernel flags at the time W was computed
  double max_imag = 0.0;   // largest |Im| dropped when storing the real part

  double at(int j, int n) const { return values(j, band.index(n)); }
  CylinderFunction as_function() const;
};

// W(Theta, n) = (1/2pi) Tr{Omega[K](Theta, n) rho}. The symmetric kernel uses
// W = (1/2pi) Re sum_k e^{-i(n-k)Theta} <k|rho|n>.
WignerGrid wigner_function(const Kernel& k, const DensityOperator& rho, const AngleGrid& grid,
                           const Config& cfg = {});
// Always through the quantizer moments.
WignerGrid wigner_function_moments(const Kernel& k, const DensityOperator& rho, const AngleGrid& grid,
                                   const Config& cfg = {});

// sum_n integral f W dTheta.
cplx expectation(const Kernel& k, const CylinderFunction& f, const DensityOperator& rho, const Config& cfg = {});
// Tr{W[K](f) rho}.
cplx expectation_trace(const Kernel& k, const CylinderFunction& f, const DensityOperator& rho,
                       const Config& cfg = {});

struct MarginalPair {
  std::vector<double> angle;     // P(Theta_j) = sum_n W(Theta_j, n)
  std::vector<double> momentum;  // P(n hbar) = integral W(Theta, n) dTheta
};

// Throws InvalidArgument when the kernel conditions behind a marginal are not
// recorded as holding.
MarginalPair marginals(const WignerGrid& w);

// <Theta|rho|Theta> = (1/2pi) sum_{j,k} e^{-i(j-k)Theta} rho_jk on the grid.
std::vector<double> angle_density(const DensityOperator& rho, const AngleGrid& grid);

enum class ReconstructionMode {
  chain,          // solves c_n = b_n - c_{n-d} upward from the band floor
  paper_literal,  // <k|rho|n> = 2 integral W e^{i(n-k)Theta} dTheta, no mirror term
};

// Density matrix from a symmetric-kernel Wigner function, without validation.
CylinderOperator reconstruct_matrix(const WignerGrid& w, ReconstructionMode mode = ReconstructionMode::chain);

// Validated reconstruction; throws InvariantViolation beyond 10 tol.
DensityOperator reconstruct_density(const WignerGrid& w, const Config& cfg = {});

}  // namespace cylwig
