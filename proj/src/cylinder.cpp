#include "cylwig/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cylwig/error.hpp"
#include "cylwig/simd/kernels.hpp"

namespace cylwig {

CylinderFunction::CylinderFunction(AngleGrid grid, MomentumBand band, CMatrix values, double hbar)
    : grid_(std::move(grid)), band_(band), values_(std::move(values)), hbar_(hbar) {
  if (values_.rows() != grid_.size() || values_.cols() != band_.dim()) {
    std::ostringstream os;
    os << "cylinder function values must be " << grid_.size() << " x " << band_.dim() << ", got "
       << values_.rows() << " x " << values_.cols();
    throw InvalidArgument(os.str());
  }
  if (!(hbar_ > 0.0)) throw InvalidArgument("cylinder function: hbar must be positive");
}

CylinderFunction CylinderFunction::zeros(const AngleGrid& grid, const MomentumBand& band, double hbar) {
  return {grid, band, CMatrix::Zero(grid.size(), band.dim()), hbar};
}

CylinderFunction CylinderFunction::sample(const AngleGrid& grid, const MomentumBand& band, double hbar,
                                          const std::function<cplx(double, double)>& f) {
  CMatrix v(grid.size(), band.dim());
  for (int c = 0; c < band.dim(); ++c) {
    double L = band.momentum(c) * hbar;
    for (int j = 0; j < grid.size(); ++j) v(j, c) = f(grid.point(j), L);
  }
  return {grid, band, std::move(v), hbar};
}

CylinderFunction CylinderFunction::synthesize(const AngleGrid& grid, const MomentumBand& band, double hbar,
                                              const CMatrix& coeffs) {
  if (coeffs.cols() != band.dim() || coeffs.rows() % 2 == 0)
    throw InvalidArgument("synthesize: coefficient matrix must be (2B+1) x dim");
  const int B = static_cast<int>(coeffs.rows() / 2);
  CMatrix v = CMatrix::Zero(grid.size(), band.dim());
  std::vector<cplx> row(static_cast<std::size_t>(grid.size()));
  for (int m = -B; m <= B; ++m) {
    bool any = false;
    for (int c = 0; c < band.dim() && !any; ++c) any = coeffs(m + B, c) != cplx{};
    if (!any) continue;
    grid.twiddle_row(m, row);
    for (int c = 0; c < band.dim(); ++c) {
      cplx a = coeffs(m + B, c);
      if (a != cplx{}) simd::axpy(a, row, {v.col(c).data(), static_cast<std::size_t>(grid.size())});
    }
  }
  return {grid, band, std::move(v), hbar};
}

CMatrix CylinderFunction::analyze(int B) const {
  if (B < 0) B = grid_.max_mode();
  CMatrix out(2 * B + 1, band_.dim());
  std::vector<cplx> row(static_cast<std::size_t>(grid_.size()));
  const double inv = 1.0 / grid_.size();
  for (int m = -B; m <= B; ++m) {
    grid_.twiddle_row(m, row);
    for (int c = 0; c < band_.dim(); ++c) {
      std::span<const cplx> col(values_.col(c).data(), static_cast<std::size_t>(grid_.size()));
      out(m + B, c) = inv * simd::dotc(row, col);
    }
  }
  return out;
}

double CylinderFunction::max_imag() const {
  return values_.size() == 0 ? 0.0 : values_.imag().cwiseAbs().maxCoeff();
}

void CylinderFunction::require_compatible(const CylinderFunction& o, const char* what) const {
  if (!(grid_ == o.grid_) || !(band_ == o.band_))
    throw InvalidArgument(std::string(what) + ": grids or bands differ");
  if (std::abs(hbar_ - o.hbar_) > 1e-15 * std::max(hbar_, o.hbar_))
    throw InvalidArgument(std::string(what) + ": hbar differs");
}

double CylinderFunction::interior_distance(const CylinderFunction& o, int guard) const {
  require_compatible(o, "interior_distance");
  double e = 0.0;
  for (int c = 0; c < band_.dim(); ++c) {
    if (band_.edge_distance(band_.momentum(c)) < guard) continue;
    e = std::max(e, (values_.col(c) - o.values_.col(c)).cwiseAbs().maxCoeff());
  }
  return e;
}

CylinderFunction operator+(const CylinderFunction& a, const CylinderFunction& b) {
  a.require_compatible(b, "function sum");
  return {a.grid(), a.band(), a.values() + b.values(), a.hbar()};
}

CylinderFunction operator-(const CylinderFunction& a, const CylinderFunction& b) {
  a.require_compatible(b, "function difference");
  return {a.grid(), a.band(), a.values() - b.values(), a.hbar()};
}

CylinderFunction operator*(cplx s, const CylinderFunction& a) {
  return {a.grid(), a.band(), s * a.values(), a.hbar()};
}

CylinderOperator::CylinderOperator(MomentumBand band, CMatrix matrix) : band_(band), matrix_(std::move(matrix)) {
  if (matrix_.rows() != band_.dim() || matrix_.cols() != band_.dim())
    throw InvalidArgument("operator matrix must be " + std::to_string(band_.dim()) + " x " +
                          std::to_string(band_.dim()));
}

CylinderOperator CylinderOperator::zero(const MomentumBand& band) {
  return {band, CMatrix::Zero(band.dim(), band.dim())};
}

CylinderOperator CylinderOperator::identity(const MomentumBand& band) {
  return {band, CMatrix::Identity(band.dim(), band.dim())};
}

CylinderOperator CylinderOperator::ket_bra(const MomentumBand& band, int a, int b) {
  if (!band.contains(a) || !band.contains(b)) throw InvalidArgument("ket_bra: index outside band");
  CMatrix m = CMatrix::Zero(band.dim(), band.dim());
  m(band.index(a), band.index(b)) = 1.0;
  return {band, std::move(m)};
}

CylinderOperator CylinderOperator::adjoint() const { return {band_, matrix_.adjoint()}; }

cplx CylinderOperator::trace() const { return matrix_.trace(); }

void CylinderOperator::require_same_band(const CylinderOperator& o, const char* what) const {
  if (!(band_ == o.band_)) throw InvalidArgument(std::string(what) + ": operator bands differ");
}

double CylinderOperator::interior_distance(const CylinderOperator& o, int guard) const {
  require_same_band(o, "interior_distance");
  double e = 0.0;
  for (int c = 0; c < dim(); ++c) {
    if (band_.edge_distance(band_.momentum(c)) < guard) continue;
    for (int r = 0; r < dim(); ++r) {
      if (band_.edge_distance(band_.momentum(r)) < guard) continue;
      e = std::max(e, std::abs(matrix_(r, c) - o.matrix_(r, c)));
    }
  }
  return e;
}

CylinderOperator operator*(const CylinderOperator& a, const CylinderOperator& b) {
  a.require_same_band(b, "operator product");
  return {a.band(), a.matrix() * b.matrix()};
}

CylinderOperator operator+(const CylinderOperator& a, const CylinderOperator& b) {
  a.require_same_band(b, "operator sum");
  return {a.band(), a.matrix() + b.matrix()};
}

CylinderOperator operator-(const CylinderOperator& a, const CylinderOperator& b) {
  a.require_same_band(b, "operator difference");
  return {a.band(), a.matrix() - b.matrix()};
}

CylinderOperator operator*(cplx s, const CylinderOperator& a) { return {a.band(), s * a.matrix()}; }

CylinderOperator commutator(const CylinderOperator& a, const CylinderOperator& b) { return a * b - b * a; }

cplx trace_product(const CylinderOperator& a, const CylinderOperator& b) {
  a.require_same_band(b, "trace_product");
  // Tr(AB) = sum_k (row k of A) . (column k of B); A^T columns are A's rows.
  const CMatrix at = a.matrix().transpose();
  const auto d = static_cast<std::size_t>(a.dim());
  cplx s{};
  for (int k = 0; k < a.dim(); ++k)
    s += simd::dotu({at.col(k).data(), d}, {b.matrix().col(k).data(), d});
  return s;
}

DensityCheck check_density(const CMatrix& rho) {
  DensityCheck c;
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw InvalidArgument("density matrix must be square and nonempty");
  c.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  CMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  c.trace_error = std::abs(rho.trace() - cplx{1.0, 0.0});
  return c;
}

DensityOperator::DensityOperator(CylinderOperator op, double tol) : op_(std::move(op)) {
  DensityCheck c = check_density(op_.matrix());
  if (!c.ok(tol)) {
    std::ostringstream os;
    os << "not a density matrix: |rho - rho^+| = " << c.hermiticity << ", min eigenvalue = " << c.min_eigenvalue
       << ", |Tr - 1| = " << c.trace_error << " (tol " << tol << ")";
    throw InvariantViolation(os.str());
  }
}

DensityOperator DensityOperator::pure(const MomentumBand& band, const CVector& psi, double tol) {
  if (psi.size() != band.dim()) throw InvalidArgument("pure state length must equal band dimension");
  return DensityOperator({band, psi * psi.adjoint()}, tol);
}

}  // namespace cylwig
