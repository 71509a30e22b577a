#include "cylwig/numberphase.hpp"

#include <cmath>
#include <sstream>

#include "cylwig/error.hpp"
#include "cylwig/simd/kernels.hpp"
#include "cylwig/wigner.hpp"

namespace cylwig {

FockDensity::FockDensity(CMatrix rho, double tol, double trace_slack) : rho_(std::move(rho)), slack_(trace_slack) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) throw InvalidArgument("Fock density must be square and nonempty");
  if (trace_slack < 0.0) throw InvalidArgument("Fock density: trace slack must be nonnegative");
  const DensityCheck c = check_density(rho_);
  if (c.hermiticity > tol || c.min_eigenvalue < -tol || c.trace_error > tol + trace_slack) {
    std::ostringstream os;
    os << "not a Fock density matrix: |rho - rho^+| = " << c.hermiticity << ", min eigenvalue = " << c.min_eigenvalue
       << ", |Tr - 1| = " << c.trace_error << " (tol " << tol << ", trace slack " << trace_slack << ")";
    throw InvariantViolation(os.str());
  }
}

FockDensity FockDensity::from_pure(const FockVector& psi, double tol) {
  FockDensity d(psi.amps * psi.amps.adjoint(), tol, psi.tail_mass);
  d.tail_mass = psi.tail_mass;
  return d;
}

namespace {

void require_cover(const MomentumBand& band, int n_f) {
  if (band.n_min > 0 || band.n_max < n_f)
    throw InvalidArgument("embed: band [" + std::to_string(band.n_min) + ", " + std::to_string(band.n_max) +
                          "] does not cover Fock indices [0, " + std::to_string(n_f) + "]");
}

}  // namespace

CVector embed(const FockVector& psi, const MomentumBand& band) {
  require_cover(band, psi.n_f());
  CVector v = CVector::Zero(band.dim());
  for (int n = 0; n <= psi.n_f(); ++n) v(band.index(n)) = psi.amps(n);
  return v;
}

DensityOperator embed(const FockDensity& rho, const MomentumBand& band, const Config& cfg) {
  require_cover(band, rho.n_f());
  CMatrix m = CMatrix::Zero(band.dim(), band.dim());
  const int o = band.index(0);
  m.block(o, o, rho.n_f() + 1, rho.n_f() + 1) = rho.matrix();
  return DensityOperator({band, std::move(m)}, cfg.tol + rho.trace_slack());
}

FockVector project(const CVector& psi, const MomentumBand& band, int n_f) {
  if (psi.size() != band.dim()) throw InvalidArgument("project: vector length must equal band dimension");
  if (n_f < 0 || band.n_max < 0) throw InvalidArgument("project: nothing to keep");
  FockVector out;
  out.amps = CVector::Zero(n_f + 1);
  for (int n = std::max(0, band.n_min); n <= std::min(n_f, band.n_max); ++n) out.amps(n) = psi(band.index(n));
  return out;
}

FockDensity project(const CylinderOperator& rho, int n_f, const Config& cfg) {
  const MomentumBand& band = rho.band();
  require_cover(band, n_f);
  const int o = band.index(0);
  CMatrix m = rho.matrix().block(o, o, n_f + 1, n_f + 1);
  const double tr = m.trace().real();
  return FockDensity(std::move(m), cfg.tol, std::abs(1.0 - tr));
}

NumberPhaseWigner number_phase_wigner(const FockDensity& rho, const AngleGrid& grid, const Kernel& k,
                                      const Config& cfg) {
  const int nf = rho.n_f();
  if (k.id() != KernelId::symmetric) {
    const AdmissibilityReport a = check_admissibility(k, nf, nf + 1, cfg);
    if (!a.admissible) {
      std::ostringstream os;
      os << "kernel '" << k.name() << "' is not admissible for the Fock-space embedding: |I_K(" << a.j - a.k << ", "
         << 0.5 * (a.j + a.k - 2 * a.n) << ")| = " << a.worst << " at j=" << a.j << ", k=" << a.k << ", n=" << a.n;
      throw AdmissibilityError(os.str());
    }
    const MomentumBand band(0, nf);
    const WignerGrid w = wigner_function(k, embed(rho, band, cfg), grid, cfg);
    NumberPhaseWigner out{grid, nf, RMatrix(grid.size(), nf + 1), w.max_imag};
    for (int j = 0; j < grid.size(); ++j) out.values.row(j) = w.values.row(grid.reflected(j));
    return out;
  }

  const auto M = static_cast<std::size_t>(grid.size());
  NumberPhaseWigner out{grid, nf, RMatrix::Zero(grid.size(), nf + 1), 0.0};
  std::vector<cplx> row(M);
  std::vector<double> acc(M);
  for (int n = 0; n <= nf; ++n) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int kk = 0; kk <= nf; ++kk) {
      const cplx r = rho.matrix()(kk, n);
      if (r == cplx{}) continue;
      grid.twiddle_row(n - kk, row);
      simd::axpy_re(r / kTwoPi, row, acc);
    }
    for (std::size_t j = 0; j < M; ++j) out.values(static_cast<int>(j), n) = acc[j];
  }
  return out;
}

FockVector phase_state(double phi, int n_f) {
  if (n_f < 0) throw InvalidArgument("phase_state: N_F must be nonnegative");
  FockVector v;
  v.amps.resize(n_f + 1);
  const double s = 1.0 / std::sqrt(kTwoPi);
  for (int n = 0; n <= n_f; ++n) v.amps(n) = std::polar(s, n * phi);
  return v;
}

CMatrix phase_state_resolution(int n_f, const AngleGrid& grid) {
  CMatrix m = CMatrix::Zero(n_f + 1, n_f + 1);
  for (int j = 0; j < grid.size(); ++j) {
    const CVector a = phase_state(grid.point(j), n_f).amps;
    m += grid.weight() * a * a.adjoint();
  }
  return m;
}

std::vector<double> phase_distribution(const FockDensity& rho, const AngleGrid& grid) {
  const int nf = rho.n_f();
  const auto M = static_cast<std::size_t>(grid.size());
  // (1/2pi) sum_{k,n} e^{i(n-k)phi} rho_kn
  std::vector<double> p(M, 0.0);
  std::vector<cplx> row(M);
  for (int n = 0; n <= nf; ++n)
    for (int kk = 0; kk <= nf; ++kk) {
      const cplx r = rho.matrix()(kk, n);
      if (r == cplx{}) continue;
      grid.twiddle_row(n - kk, row);
      simd::axpy_re(r / kTwoPi, row, p);
    }
  return p;
}

std::vector<double> number_distribution(const FockDensity& rho) {
  std::vector<double> p(static_cast<std::size_t>(rho.n_f() + 1));
  for (int n = 0; n <= rho.n_f(); ++n) p[n] = rho.matrix()(n, n).real();
  return p;
}

double phase_expectation(std::span<const double> f, const FockDensity& rho, const AngleGrid& grid) {
  if (static_cast<int>(f.size()) != grid.size()) throw InvalidArgument("phase_expectation: f must have one value per grid point");
  const std::vector<double> p = phase_distribution(rho, grid);
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) s += f[j] * p[j];
  return s * grid.weight();
}

double phase_expectation_pure(std::span<const double> f, const FockVector& psi, const AngleGrid& grid) {
  if (static_cast<int>(f.size()) != grid.size()) throw InvalidArgument("phase_expectation: f must have one value per grid point");
  // sum_{n,k} c_n^* c_k integral f(phi) <n|phi><phi|k> dphi
  const int nf = psi.n_f();
  cplx s{};
  for (int n = 0; n <= nf; ++n)
    for (int kk = 0; kk <= nf; ++kk) {
      cplx fi{};
      for (int j = 0; j < grid.size(); ++j) fi += f[j] * grid.twiddle(n - kk, j);
      s += std::conj(psi.amps(n)) * psi.amps(kk) * fi * grid.weight() / kTwoPi;
    }
  return s.real();
}

double pov_interval_probability(const FockDensity& rho, double a, double b) {
  if (!(a >= -kPi && a < b && b <= kPi))
    throw InvalidArgument("pov_interval_probability: need -pi <= a < b <= pi");
  const int nf = rho.n_f();
  double s = 0.0;
  for (int n = 0; n <= nf; ++n)
    for (int kk = 0; kk <= nf; ++kk) {
      const cplx r = rho.matrix()(kk, n);
      const int d = n - kk;
      const cplx integral = d == 0 ? cplx{b - a} : (std::polar(1.0, d * b) - std::polar(1.0, d * a)) / (kI * double(d));
      s += (r * integral).real();
    }
  return s / kTwoPi;
}

}  // namespace cylwig
