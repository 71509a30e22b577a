#include "cylwig/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "cylwig/error.hpp"
#include "cylwig/simd/kernels.hpp"

namespace cylwig {

CylinderOperator u_operator(double sigma, int l, const MomentumBand& band) {
  if (std::abs(l) > band.dim() - 1)
    throw InvalidArgument("u_operator: |l| = " + std::to_string(std::abs(l)) + " exceeds dim - 1 = " +
                          std::to_string(band.dim() - 1));
  CMatrix m = CMatrix::Zero(band.dim(), band.dim());
  for (int k = band.n_min; k <= band.n_max; ++k) {
    if (!band.contains(k + l)) continue;
    m(band.index(k + l), band.index(k)) = std::polar(1.0, sigma * (k + 0.5 * l));
  }
  return {band, std::move(m)};
}

cplx pair_trace_u(const MomentumBand& band, std::span<const cplx> g) {
  if (g.empty() || g.size() % 2 == 0) throw InvalidArgument("pair_trace_u: need 2P + 1 coefficients");
  const int P = static_cast<int>(g.size() / 2);
  const int K = std::max(std::abs(band.n_min), std::abs(band.n_max));
  const AngleGrid s(2 * (P + K) + 1);
  std::vector<cplx> tr(static_cast<std::size_t>(s.size()), cplx{}), gv(tr.size(), cplx{});
  std::vector<cplx> row(tr.size());
  for (int k = band.n_min; k <= band.n_max; ++k) {
    s.twiddle_row(k, row);
    simd::axpy(1.0, row, tr);
  }
  for (int p = -P; p <= P; ++p) {
    s.twiddle_row(p, row);
    simd::axpy(g[static_cast<std::size_t>(p + P)], row, gv);
  }
  return simd::dotu(gv, tr) / static_cast<double>(s.size());
}

TraceIdentityReport trace_identity_report(const MomentumBand& band) {
  if (!band.contains(0)) throw InvalidArgument("trace_identity_report: band must contain 0");
  TraceIdentityReport r;
  const int h = std::min(-band.n_min, band.n_max);
  const int D = band.dim();
  const double probes[] = {-kPi, -2.0, -0.5, 0.0, 0.7, 1.9, 3.0};

  for (int l = -(D - 1); l <= D - 1; ++l) {
    if (l == 0) continue;
    for (double s : probes) r.trace_nonzero_l = std::max(r.trace_nonzero_l, std::abs(u_operator(s, l, band).trace()));
  }

  for (int p = -h; p <= h; ++p) {
    std::vector<cplx> g(static_cast<std::size_t>(2 * std::abs(p) + 1), cplx{});
    g[static_cast<std::size_t>(p + std::abs(p))] = 1.0;
    r.pairing_error = std::max(r.pairing_error, std::abs(pair_trace_u(band, g) - 1.0));
  }

  const int lmax = std::min(D - 1, 3);
  for (int l = -lmax; l <= lmax; ++l)
    for (int lp = -lmax; lp <= lmax; ++lp) {
      if (l == lp) continue;
      for (double s : probes)
        r.cross_trace = std::max(
            r.cross_trace, std::abs(trace_product(u_operator(s, l, band).adjoint(), u_operator(0.4 - s, lp, band))));
    }

  // l = l': (1/2pi) integral e^{i p d} e^{-i d l/2} Tr{U^+(s,l) U(s+d,l)} dd = 1
  // for every |p| <= h - |l|, where the Dirichlet sum is complete.
  const double s0 = 0.3;
  const int K = std::max(std::abs(band.n_min), std::abs(band.n_max));
  const AngleGrid dg(2 * (h + K) + 1);
  for (int l = -h; l <= h; ++l) {
    std::vector<cplx> tr(static_cast<std::size_t>(dg.size()));
    const CylinderOperator ua = u_operator(s0, l, band).adjoint();
    for (int j = 0; j < dg.size(); ++j) {
      double d = dg.point(j);
      tr[j] = trace_product(ua, u_operator(s0 + d, l, band)) * std::polar(1.0, -0.5 * d * l);
    }
    for (int p = -(h - std::abs(l)); p <= h - std::abs(l); ++p) {
      cplx v = fourier_coefficient(tr, dg, -p);
      r.smeared_error = std::max(r.smeared_error, std::abs(v - 1.0));
    }
  }
  return r;
}

CylinderOperator gsw_quantizer_moments(const Kernel& k, double theta, int n, const MomentumBand& band,
                                       const Config& cfg) {
  if (!band.contains(n)) throw InvalidArgument("gsw_quantizer: n = " + std::to_string(n) + " outside band");
  const int D = band.dim();
  CMatrix m(D, D);
  for (int c = 0; c < D; ++c) {
    const int kk = band.momentum(c);
    for (int r = 0; r < D; ++r) {
      const int j = band.momentum(r);
      const int l = j - kk;
      m(r, c) = std::polar(1.0 / kTwoPi, -l * theta) * k.moment(l, HalfInt::center(j, kk, n), cfg);
    }
  }
  return {band, std::move(m)};
}

CylinderOperator gsw_quantizer(const Kernel& k, double theta, int n, const MomentumBand& band, const Config& cfg) {
  if (k.id() != KernelId::symmetric) return gsw_quantizer_moments(k, theta, n, band, cfg);
  if (!band.contains(n)) throw InvalidArgument("gsw_quantizer: n = " + std::to_string(n) + " outside band");
  // 1/2 e^{-i(j-k)theta} (delta_{jn} + delta_{kn})
  const int D = band.dim();
  const int c = band.index(n);
  CMatrix m = CMatrix::Zero(D, D);
  for (int i = 0; i < D; ++i) {
    const int l = band.momentum(i) - n;
    m(i, c) += std::polar(0.5, -l * theta);
    m(c, i) += std::polar(0.5, l * theta);
  }
  return {band, std::move(m)};
}

QuantizerSet::QuantizerSet(Kernel k, AngleGrid grid, MomentumBand band, Config cfg)
    : kernel_(std::move(k)),
      grid_(std::move(grid)),
      band_(band),
      cfg_(cfg),
      slots_(new Slot[static_cast<std::size_t>(grid_.size()) * band_.dim()]) {}

const CylinderOperator& QuantizerSet::at(int j, int n) const {
  if (j < 0 || j >= grid_.size() || !band_.contains(n)) throw InvalidArgument("QuantizerSet::at: index out of range");
  Slot& s = slots_[static_cast<std::size_t>(j) * band_.dim() + band_.index(n)];
  std::call_once(s.once, [&] { s.op.emplace(gsw_quantizer(kernel_, grid_.point(j), n, band_, cfg_)); });
  return *s.op;
}

namespace {

void require_resolving_grid(const AngleGrid& g, const MomentumBand& b, const char* what) {
  if (g.size() < 2 * b.dim() - 1)
    throw InvalidArgument(std::string(what) + ": grid of " + std::to_string(g.size()) +
                          " points aliases the off-diagonal modes of a band of dimension " + std::to_string(b.dim()) +
                          " (need M >= " + std::to_string(2 * b.dim() - 1) + ")");
}

}  // namespace

CylinderOperator quantize(const Kernel& k, const CylinderFunction& f, const Config& cfg) {
  const MomentumBand& band = f.band();
  require_resolving_grid(f.grid(), band, "quantize");
  const int D = band.dim();
  const int B = D - 1;
  const CMatrix fh = f.analyze(B);
  const MomentTable mt(k, B, 2 * B, cfg);
  CMatrix a = CMatrix::Zero(D, D);
  for (int c = 0; c < D; ++c) {
    const int kk = band.momentum(c);
    for (int r = 0; r < D; ++r) {
      const int j = band.momentum(r);
      const int l = j - kk;
      cplx s{};
      for (int q = 0; q < D; ++q) {
        const cplx v = fh(l + B, q);
        if (v != cplx{}) s += v * mt(l, j + kk - 2 * band.momentum(q));
      }
      a(r, c) = s / kTwoPi;
    }
  }
  return {band, std::move(a)};
}

namespace {

// Fourier rows m = -(dim-1)..dim-1 of the trace-formula symbol of a.
CMatrix trace_symbol_rows(const Kernel& k, const CylinderOperator& a, const Config& cfg) {
  const MomentumBand& band = a.band();
  const int D = band.dim();
  const int B = D - 1;
  const MomentTable mt(k, B, 2 * B, cfg);
  // Coefficient of e^{i m Theta}: (1/2pi) sum over k - j = m of I_K(-m, (j+k)/2 - n) A_{kj}.
  CMatrix coeffs = CMatrix::Zero(2 * B + 1, D);
  for (int m = -B; m <= B; ++m) {
    for (int q = 0; q < D; ++q) {
      const int n = band.momentum(q);
      cplx s{};
      for (int j = band.n_min; j <= band.n_max; ++j) {
        const int kk = j + m;
        if (!band.contains(kk)) continue;
        const cplx v = a.at(kk, j);
        if (v != cplx{}) s += mt(-m, j + kk - 2 * n) * v;
      }
      coeffs(m + B, q) = s / kTwoPi;
    }
  }
  return coeffs;
}

}  // namespace

CylinderFunction trace_symbol(const Kernel& k, const CylinderOperator& a, const AngleGrid& grid, double hbar,
                              const Config& cfg) {
  return CylinderFunction::synthesize(grid, a.band(), hbar, trace_symbol_rows(k, a, cfg));
}

namespace {

// K^ on Fourier rows m = -B..B of a symbol (one Toeplitz block per mode).
CMatrix k_hat_rows(const Kernel& k, const CMatrix& fh, int D, bool inverse, bool transpose, const Config& cfg) {
  const int B = static_cast<int>(fh.rows() / 2);
  const MomentTable mt(k, B, 2 * (D - 1), cfg);
  CMatrix out(2 * B + 1, D);
  CMatrix t(D, D);
  for (int m = -B; m <= B; ++m) {
    for (int c = 0; c < D; ++c)
      for (int r = 0; r < D; ++r) {
        // row n = r, column n' = c
        const int d = c - r;
        t(r, c) = (transpose ? mt(m, -2 * d) : mt(-m, 2 * d)) / kTwoPi;
      }
    const CVector x = fh.row(m + B).transpose();
    if (!inverse) {
      out.row(m + B) = (t * x).transpose();
      continue;
    }
    Eigen::PartialPivLU<CMatrix> lu(t);
    const double rc = lu.rcond();
    if (!(rc >= cfg.tol)) {
      std::ostringstream os;
      os << "k_hat_apply: kernel '" << k.name() << "' gives a singular block at mode m = " << m
         << " (reciprocal condition " << rc << ", tolerance " << cfg.tol << ")";
      throw NonInvertibleKernelError(os.str());
    }
    out.row(m + B) = lu.solve(x).transpose();
  }
  return out;
}

}  // namespace

CylinderFunction weyl_symbol(const Kernel& k, const CylinderOperator& a, const AngleGrid& grid, double hbar,
                             const Config& cfg) {
  if (k.id() == KernelId::weyl) return trace_symbol(k, a, grid, hbar, cfg);
  if (k.flag(KernelCondition::nonvanishing) == Verdict::fails)
    throw NonInvertibleKernelError("weyl_symbol: kernel '" + k.name() +
                                   "' vanishes, so the symbol map cannot be inverted; for the symmetric kernel "
                                   "use the wigner module's reconstruct_density instead");
  // Only modes |m| <= dim - 1 are populated, so higher K^ blocks are never formed.
  const CMatrix w1 = trace_symbol_rows(kernel_weyl(), a, cfg);
  return CylinderFunction::synthesize(grid, a.band(), hbar, k_hat_rows(k, w1, a.dim(), true, true, cfg));
}

CylinderFunction k_hat_apply(const Kernel& k, const CylinderFunction& f, KHatMode mode, const Config& cfg) {
  const AngleGrid& grid = f.grid();
  if (grid.size() % 2 == 0) throw InvalidArgument("k_hat_apply: needs an odd grid so every mode is unambiguous");
  const bool inverse = mode == KHatMode::inverse || mode == KHatMode::inverse_transpose;
  const bool transpose = mode == KHatMode::transpose || mode == KHatMode::inverse_transpose;
  if (inverse && k.flag(KernelCondition::nonvanishing) == Verdict::fails)
    throw NonInvertibleKernelError("k_hat_apply: kernel '" + k.name() + "' vanishes; K^ has no inverse");
  if (k.id() == KernelId::weyl) return f;
  const CMatrix out = k_hat_rows(k, f.analyze(grid.max_mode()), f.band().dim(), inverse, transpose, cfg);
  return CylinderFunction::synthesize(grid, f.band(), f.hbar(), out);
}

QuantizerPropertyReport quantizer_property_report(const Kernel& k, const AngleGrid& grid, const MomentumBand& band,
                                                  const Config& cfg) {
  require_resolving_grid(grid, band, "quantizer_property_report");
  QuantizerPropertyReport r;
  const int D = band.dim();
  const QuantizerSet qs(k, grid, band, cfg);
  CMatrix proj_n = CMatrix::Zero(D, D);
  std::vector<CMatrix> mom(static_cast<std::size_t>(D), CMatrix::Zero(D, D));
  for (int j = 0; j < grid.size(); ++j) {
    CMatrix sum = CMatrix::Zero(D, D);
    for (int q = 0; q < D; ++q) {
      const CMatrix& om = qs.at(j, band.momentum(q)).matrix();
      r.trace_error = std::max(r.trace_error, std::abs(om.trace() - 1.0));
      r.hermiticity_error = std::max(r.hermiticity_error, (om - om.adjoint()).cwiseAbs().maxCoeff());
      sum += om;
      mom[q] += grid.weight() / kTwoPi * om;
    }
    sum /= kTwoPi;
    const double theta = grid.point(j);
    for (int c = 0; c < D; ++c)
      for (int rr = 0; rr < D; ++rr) {
        const int l = band.momentum(rr) - band.momentum(c);
        r.angle_projector_error =
            std::max(r.angle_projector_error, std::abs(sum(rr, c) - std::polar(1.0 / kTwoPi, -l * theta)));
      }
  }
  for (int q = 0; q < D; ++q) {
    CMatrix target = CMatrix::Zero(D, D);
    target(q, q) = 1.0;
    r.momentum_projector_error = std::max(r.momentum_projector_error, (mom[q] - target).cwiseAbs().maxCoeff());
  }

  // Tr{Omega(Theta, n) Omega(0, n - d)}: its e^{i l Theta} coefficient must be
  // (1/2pi) integral K(s, l) K(-s, -l) e^{i s d} ds. Checked at the band centre.
  const int n0 = band.n_min + (D - 1) / 2;
  r.pairing_l_max = (D - 1) / 4;
  r.pairing_d_max = (D - 1) / 4;
  const GaussRule& gr = gauss_legendre(cfg.quad_nodes);
  for (int d = -r.pairing_d_max; d <= r.pairing_d_max; ++d) {
    const CylinderOperator o2 = gsw_quantizer(k, 0.0, n0 - d, band, cfg);
    std::vector<cplx> tr(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) tr[j] = trace_product(qs.at(j, n0), o2);
    for (int l = -r.pairing_l_max; l <= r.pairing_l_max; ++l) {
      const cplx lhs = fourier_coefficient(tr, grid, l);
      cplx rhs{};
      for (std::size_t i = 0; i < gr.x.size(); ++i) {
        const double s = kPi * gr.x[i];
        rhs += gr.w[i] * k.eval(s, l) * k.eval(-s, -l) * std::polar(1.0, s * d);
      }
      rhs *= kPi / kTwoPi;
      r.pairing_error = std::max(r.pairing_error, std::abs(lhs - rhs));
    }
  }
  return r;
}

}  // namespace cylwig
