#include "cylwig/star.hpp"

#include <string>
#include <vector>

#include "cylwig/error.hpp"
#include "cylwig/quantizer.hpp"

namespace cylwig {

namespace {

void require_invertible(const Kernel& k, const char* what) {
  if (k.id() != KernelId::weyl && k.flag(KernelCondition::nonvanishing) == Verdict::fails)
    throw NonInvertibleKernelError(std::string(what) + ": kernel '" + k.name() +
                                   "' vanishes, so its symbols do not form a star algebra");
}

// (1/2pi)^2 sum_{n, j} w f(Theta_j, n) e^{-i(b-c) Theta_j} I_1(b - c, (b+c)/2 - n)
CMatrix quantize_by_quadrature(const CylinderFunction& f, const MomentTable& mt) {
  const AngleGrid& grid = f.grid();
  const MomentumBand& band = f.band();
  const int D = band.dim();
  CMatrix out = CMatrix::Zero(D, D);
  for (int c = 0; c < D; ++c)
    for (int b = 0; b < D; ++b) {
      const int l = band.momentum(b) - band.momentum(c);
      const int sum2 = band.momentum(b) + band.momentum(c);
      cplx acc{};
      for (int q = 0; q < D; ++q) {
        const cplx m = mt(l, sum2 - 2 * band.momentum(q));
        if (m == cplx{}) continue;
        cplx s{};
        for (int j = 0; j < grid.size(); ++j) s += f.values()(j, q) * grid.twiddle(-l, j);
        acc += m * s;
      }
      out(b, c) = acc * grid.weight() / (kTwoPi * kTwoPi);
    }
  return out;
}

}  // namespace

CylinderFunction star_product(const Kernel& k, const CylinderFunction& f, const CylinderFunction& g,
                              const Config& cfg) {
  f.require_compatible(g, "star_product");
  require_invertible(k, "star_product");
  const CylinderOperator prod = quantize(k, f, cfg) * quantize(k, g, cfg);
  return weyl_symbol(k, prod, f.grid(), f.hbar(), cfg);
}

CylinderFunction star_product_trace(const CylinderFunction& f, const CylinderFunction& g, const Config& cfg) {
  f.require_compatible(g, "star_product_trace");
  const AngleGrid& grid = f.grid();
  const MomentumBand& band = f.band();
  if (grid.size() < 2 * band.dim() - 1)
    throw InvalidArgument("star_product_trace: grid too coarse for the band (need M >= 2 dim - 1)");
  const int D = band.dim();
  const MomentTable mt(kernel_weyl(), D - 1, 2 * (D - 1), cfg);
  const CMatrix F = quantize_by_quadrature(f, mt);
  const CMatrix G = quantize_by_quadrature(g, mt);

  CMatrix out(grid.size(), D);
  for (int q = 0; q < D; ++q) {
    const int n = band.momentum(q);
    for (int j = 0; j < grid.size(); ++j) {
      // sum_{a,b,c} Omega_ab(Theta_j, n) F_bc G_ca
      cplx s{};
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
          const int l = band.momentum(a) - band.momentum(b);
          const cplx om = mt(l, band.momentum(a) + band.momentum(b) - 2 * n);
          if (om == cplx{}) continue;
          cplx inner{};
          for (int c = 0; c < D; ++c) inner += F(b, c) * G(c, a);
          s += grid.twiddle(-l, j) * om * inner;
        }
      out(j, q) = s / kTwoPi;
    }
  }
  return {grid, band, std::move(out), f.hbar()};
}

CylinderFunction star_product(StarBackend backend, const Kernel& k, const CylinderFunction& f,
                              const CylinderFunction& g, const Config& cfg) {
  if (backend == StarBackend::operator_route) return star_product(k, f, g, cfg);
  if (k.id() != KernelId::weyl) throw InvalidArgument("triple_trace backend is only defined for the weyl kernel");
  return star_product_trace(f, g, cfg);
}

CylinderFunction moyal_bracket(const Kernel& k, const CylinderFunction& f, const CylinderFunction& g,
                               const Config& cfg) {
  f.require_compatible(g, "moyal_bracket");
  require_invertible(k, "moyal_bracket");
  const CylinderOperator c = commutator(quantize(k, f, cfg), quantize(k, g, cfg));
  const CylinderFunction s = weyl_symbol(k, c, f.grid(), f.hbar(), cfg);
  return (1.0 / (kI * f.hbar())) * s;
}

CylinderFunction derivative_theta(const CylinderFunction& f) {
  const AngleGrid& grid = f.grid();
  if (grid.size() % 2 == 0) throw InvalidArgument("derivative_theta: spectral differentiation needs an odd grid");
  const int B = grid.max_mode();
  CMatrix c = f.analyze(B);
  for (int m = -B; m <= B; ++m) c.row(m + B) *= cplx{0.0, static_cast<double>(m)};
  return CylinderFunction::synthesize(grid, f.band(), f.hbar(), c);
}

CylinderFunction derivative_L(const CylinderFunction& f) {
  const int D = f.band().dim();
  if (D < 5) throw InvalidArgument("derivative_L: band needs at least 5 momentum values, got " + std::to_string(D));
  const CMatrix& v = f.values();
  const double h2 = 2.0 * f.hbar();
  CMatrix d(v.rows(), D);
  d.col(0) = (-3.0 * v.col(0) + 4.0 * v.col(1) - v.col(2)) / h2;
  for (int q = 1; q < D - 1; ++q) d.col(q) = (v.col(q + 1) - v.col(q - 1)) / h2;
  d.col(D - 1) = (3.0 * v.col(D - 1) - 4.0 * v.col(D - 2) + v.col(D - 3)) / h2;
  return {f.grid(), f.band(), std::move(d), f.hbar()};
}

CylinderFunction poisson_bracket(const CylinderFunction& f, const CylinderFunction& g) {
  f.require_compatible(g, "poisson_bracket");
  const CylinderFunction ft = derivative_theta(f), gt = derivative_theta(g);
  const CylinderFunction fl = derivative_L(f), gl = derivative_L(g);
  CMatrix out = ft.values().cwiseProduct(gl.values()) - fl.values().cwiseProduct(gt.values());
  return {f.grid(), f.band(), std::move(out), f.hbar()};
}

double stargen_residual(const Kernel& k, const CylinderFunction& f_sym, const CylinderFunction& rho_w, double lambda,
                        int guard, const Config& cfg) {
  f_sym.require_compatible(rho_w, "stargen_residual");
  if (guard < 0) throw InvalidArgument("stargen_residual: guard must be nonnegative");
  if (k.id() == KernelId::weyl) {
    const CylinderFunction r = star_product(k, f_sym, rho_w, cfg) - cplx{lambda} * rho_w;
    return r.interior_distance(CylinderFunction::zeros(r.grid(), r.band(), r.hbar()), guard);
  }
  require_invertible(k, "stargen_residual");
  const CylinderFunction a = k_hat_apply(k, f_sym, KHatMode::transpose, cfg);
  const CylinderFunction b = k_hat_apply(k, rho_w, KHatMode::inverse, cfg);
  const CylinderFunction r = star_product(kernel_weyl(), a, b, cfg) - cplx{lambda} * b;
  return r.interior_distance(CylinderFunction::zeros(r.grid(), r.band(), r.hbar()), guard);
}

}  // namespace cylwig
