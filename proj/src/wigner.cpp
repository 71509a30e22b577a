#include "cylwig/wigner.hpp"

#include <cmath>
#include <sstream>

#include "cylwig/error.hpp"
#include "cylwig/quantizer.hpp"
#include "cylwig/simd/kernels.hpp"

namespace cylwig {

CylinderFunction WignerGrid::as_function() const {
  return {grid, band, values.cast<cplx>(), hbar};
}

namespace {

WignerGrid make_grid(const Kernel& k, const AngleGrid& grid, const MomentumBand& band, double hbar,
                     const CMatrix& cvals) {
  WignerGrid w{grid, band, cvals.real(), hbar, k.name(), k.flags(), 0.0};
  w.max_imag = cvals.size() == 0 ? 0.0 : cvals.imag().cwiseAbs().maxCoeff();
  return w;
}

}  // namespace

WignerGrid wigner_function_moments(const Kernel& k, const DensityOperator& rho, const AngleGrid& grid,
                                   const Config& cfg) {
  const CylinderFunction t = trace_symbol(k, rho.op(), grid, cfg.hbar, cfg);
  return make_grid(k, grid, rho.band(), cfg.hbar, t.values() / kTwoPi);
}

WignerGrid wigner_function(const Kernel& k, const DensityOperator& rho, const AngleGrid& grid, const Config& cfg) {
  if (k.id() != KernelId::symmetric) return wigner_function_moments(k, rho, grid, cfg);
  const MomentumBand& band = rho.band();
  const int D = band.dim();
  const auto M = static_cast<std::size_t>(grid.size());
  CMatrix vals = CMatrix::Zero(grid.size(), D);
  std::vector<cplx> row(M);
  std::vector<double> acc(M);
  for (int q = 0; q < D; ++q) {
    const int n = band.momentum(q);
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int kk = band.n_min; kk <= band.n_max; ++kk) {
      const cplx r = rho.op().at(kk, n);
      if (r == cplx{}) continue;
      grid.twiddle_row(kk - n, row);  // e^{-i(n-k)Theta}
      simd::axpy_re(r / kTwoPi, row, acc);
    }
    for (std::size_t j = 0; j < M; ++j) vals(static_cast<int>(j), q) = acc[j];
  }
  return make_grid(k, grid, band, cfg.hbar, vals);
}

cplx expectation(const Kernel& k, const CylinderFunction& f, const DensityOperator& rho, const Config& cfg) {
  if (!(f.band() == rho.band())) throw InvalidArgument("expectation: symbol and state bands differ");
  // Keep the imaginary part for kernels whose Wigner function is complex.
  const CMatrix wv = k.id() == KernelId::symmetric
                         ? CMatrix(wigner_function(k, rho, f.grid(), cfg).values.cast<cplx>())
                         : CMatrix(trace_symbol(k, rho.op(), f.grid(), cfg.hbar, cfg).values() / kTwoPi);
  cplx s{};
  const auto M = static_cast<std::size_t>(f.grid().size());
  for (int q = 0; q < f.band().dim(); ++q)
    s += simd::dotu({f.values().col(q).data(), M}, {wv.col(q).data(), M});
  return s * f.grid().weight();
}

cplx expectation_trace(const Kernel& k, const CylinderFunction& f, const DensityOperator& rho, const Config& cfg) {
  return trace_product(quantize(k, f, cfg), rho.op());
}

MarginalPair marginals(const WignerGrid& w) {
  auto need = [&](Verdict v, const char* what) {
    if (v != Verdict::holds) {
      std::ostringstream os;
      os << "marginals: the " << what << " marginal needs " << (what[0] == 'a' ? "cond_theta" : "cond_L")
         << " to hold for kernel '" << w.kernel << "' (recorded: " << to_string(v) << ")";
      throw InvalidArgument(os.str());
    }
  };
  need(w.provenance.cond_theta, "angle");
  need(w.provenance.cond_L, "momentum");
  MarginalPair m;
  m.angle.assign(static_cast<std::size_t>(w.grid.size()), 0.0);
  for (int j = 0; j < w.grid.size(); ++j) m.angle[j] = w.values.row(j).sum();
  m.momentum.assign(static_cast<std::size_t>(w.band.dim()), 0.0);
  for (int q = 0; q < w.band.dim(); ++q) m.momentum[q] = w.values.col(q).sum() * w.grid.weight();
  return m;
}

std::vector<double> angle_density(const DensityOperator& rho, const AngleGrid& grid) {
  const MomentumBand& band = rho.band();
  std::vector<double> p(static_cast<std::size_t>(grid.size()), 0.0);
  std::vector<cplx> row(p.size());
  for (int j = band.n_min; j <= band.n_max; ++j)
    for (int kk = band.n_min; kk <= band.n_max; ++kk) {
      const cplx r = rho.op().at(j, kk);
      if (r == cplx{}) continue;
      grid.twiddle_row(j - kk, row);
      simd::axpy_re(r / kTwoPi, row, p);
    }
  return p;
}

CylinderOperator reconstruct_matrix(const WignerGrid& w, ReconstructionMode mode) {
  if (w.kernel != "symmetric")
    throw InvalidArgument("reconstruct: only Wigner functions of the symmetric kernel can be inverted, got '" +
                          w.kernel + "'");
  const MomentumBand& band = w.band;
  const int D = band.dim();
  if (w.grid.size() < 2 * D - 1)
    throw InvalidArgument("reconstruct: grid of " + std::to_string(w.grid.size()) +
                          " points cannot resolve offsets up to " + std::to_string(D - 1));
  const auto M = static_cast<std::size_t>(w.grid.size());
  std::vector<cplx> row(M), col(M);
  // moment(d, q) = 2 integral W(Theta, n_q) e^{i d Theta} dTheta
  auto moment = [&](int d, int q) {
    for (std::size_t j = 0; j < M; ++j) col[j] = w.values(static_cast<int>(j), q);
    w.grid.twiddle_row(d, row);
    return 2.0 * w.grid.weight() * simd::dotu(row, col);
  };

  CMatrix rho = CMatrix::Zero(D, D);
  for (int q = 0; q < D; ++q) rho(q, q) = moment(0, q) / 2.0;
  for (int d = 1; d < D; ++d) {
    if (mode == ReconstructionMode::paper_literal) {
      // <n-d|rho|n> read straight off the moment of row n.
      for (int q = d; q < D; ++q) rho(q - d, q) = moment(d, q);
    } else {
      // b_n = c_{n-d} + c_n with c_m = <m|rho|m+d>.
      std::vector<cplx> c(static_cast<std::size_t>(D), cplx{});
      for (int q = 0; q + d < D; ++q) {
        const cplx prev = q >= d ? c[q - d] : cplx{};
        c[q] = moment(d, q) - prev;
        rho(q, q + d) = c[q];
      }
    }
    for (int q = 0; q + d < D; ++q) rho(q + d, q) = std::conj(rho(q, q + d));
  }
  return {band, std::move(rho)};
}

DensityOperator reconstruct_density(const WignerGrid& w, const Config& cfg) {
  CylinderOperator r = reconstruct_matrix(w, ReconstructionMode::chain);
  return DensityOperator(std::move(r), 10.0 * cfg.tol);
}

}  // namespace cylwig
