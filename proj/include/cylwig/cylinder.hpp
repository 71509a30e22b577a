#pragma once

#include <functional>

#include "cylwig/grid.hpp"
#include "cylwig/types.hpp"

namespace cylwig {

// Samples f(Theta_j, n hbar): rows are grid points, columns band indices.
class CylinderFunction {
 public:
  CylinderFunction(AngleGrid grid, MomentumBand band, CMatrix values, double hbar);

  static CylinderFunction zeros(const AngleGrid& grid, const MomentumBand& band, double hbar);
  // f(Theta, L) with L = n hbar.
  static CylinderFunction sample(const AngleGrid& grid, const MomentumBand& band, double hbar,
                                 const std::function<cplx(double theta, double L)>& f);
  // sum over m in [-B, B] of coeffs(m + B, idx) e^{i m Theta}.
  static CylinderFunction synthesize(const AngleGrid& grid, const MomentumBand& band, double hbar,
                                     const CMatrix& coeffs);

  const AngleGrid& grid() const { return grid_; }
  const MomentumBand& band() const { return band_; }
  double hbar() const { return hbar_; }
  const CMatrix& values() const { return values_; }
  // Value at grid point j and momentum index n.
  cplx at(int j, int n) const { return values_(j, band_.index(n)); }

  // Coefficients of e^{i m Theta}, m in [-B, B], one column per band index.
  // B defaults to the largest unaliased mode of the grid.
  CMatrix analyze(int B = -1) const;

  double max_imag() const;
  // Max |f - g| over band indices at distance >= guard from both edges.
  double interior_distance(const CylinderFunction& other, int guard) const;
  void require_compatible(const CylinderFunction& other, const char* what) const;

 private:
  AngleGrid grid_;
  MomentumBand band_;
  CMatrix values_;
  double hbar_;
};

CylinderFunction operator+(const CylinderFunction& a, const CylinderFunction& b);
CylinderFunction operator-(const CylinderFunction& a, const CylinderFunction& b);
CylinderFunction operator*(cplx s, const CylinderFunction& a);

// Matrix <j|A|k> with j, k running over the band.
class CylinderOperator {
 public:
  CylinderOperator(MomentumBand band, CMatrix matrix);

  static CylinderOperator zero(const MomentumBand& band);
  static CylinderOperator identity(const MomentumBand& band);
  // |a><b| on momentum indices.
  static CylinderOperator ket_bra(const MomentumBand& band, int a, int b);

  const MomentumBand& band() const { return band_; }
  const CMatrix& matrix() const { return matrix_; }
  int dim() const { return band_.dim(); }
  cplx at(int j, int k) const { return matrix_(band_.index(j), band_.index(k)); }

  CylinderOperator adjoint() const;
  cplx trace() const;
  void require_same_band(const CylinderOperator& o, const char* what) const;
  // Max |entry| difference over entries whose row and column both sit at
  // distance >= guard from the band edges.
  double interior_distance(const CylinderOperator& other, int guard) const;

 private:
  MomentumBand band_;
  CMatrix matrix_;
};

CylinderOperator operator*(const CylinderOperator& a, const CylinderOperator& b);
CylinderOperator operator+(const CylinderOperator& a, const CylinderOperator& b);
CylinderOperator operator-(const CylinderOperator& a, const CylinderOperator& b);
CylinderOperator operator*(cplx s, const CylinderOperator& a);
CylinderOperator commutator(const CylinderOperator& a, const CylinderOperator& b);
// Tr(AB) without forming the product.
cplx trace_product(const CylinderOperator& a, const CylinderOperator& b);

struct DensityCheck {
  double hermiticity = 0.0;     // max |rho - rho^dagger|
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;     // |Tr rho - 1|
  bool ok(double tol) const { return hermiticity <= tol && min_eigenvalue >= -tol && trace_error <= tol; }
};

DensityCheck check_density(const CMatrix& rho);

class DensityOperator {
 public:
  // Throws InvariantViolation when the matrix is not a density matrix to tol.
  explicit DensityOperator(CylinderOperator op, double tol = 1e-10);
  // |psi><psi| for a normalized psi over the band.
  static DensityOperator pure(const MomentumBand& band, const CVector& psi, double tol = 1e-10);

  const CylinderOperator& op() const { return op_; }
  const MomentumBand& band() const { return op_.band(); }
  const CMatrix& matrix() const { return op_.matrix(); }

 private:
  CylinderOperator op_;
};

}  // namespace cylwig
