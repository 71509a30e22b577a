#include <doctest.h>

#include "cylwig/error.hpp"
#include "cylwig/quantizer.hpp"
#include "cylwig/star.hpp"
#include "cylwig/wigner.hpp"
#include "support.hpp"

using namespace cylwig;
using namespace cylwig::testing;

namespace {

struct Setup {
  MomentumBand band;
  AngleGrid grid;
  double hbar;
  Config cfg;
  explicit Setup(int N, double h = 1.0)
      : band(MomentumBand::symmetric(N)), grid(grid_size_for(band.dim(), 4)), hbar(h), cfg{h, 1e-10, 257} {}
  CylinderFunction f(std::function<cplx(double, double)> fn) const {
    return CylinderFunction::sample(grid, band, hbar, fn);
  }
};

cplx e(int m, double t) { return std::polar(1.0, m * t); }

double centre_error(const CylinderFunction& a, const CylinderFunction& b) {
  double err = 0.0;
  for (int j = 0; j < a.grid().size(); ++j) err = std::max(err, std::abs(a.at(j, 0) - b.at(j, 0)));
  return err;
}

}  // namespace

TEST_CASE("unit element") {
  const Setup s(10);
  const Kernel k1 = kernel_weyl();
  const auto one = s.f([](double, double) { return cplx(1.0); });
  const CylinderFunction f = random_symbol(s.grid, s.band, 1.0, 4, -10, 10, true);
  CHECK(star_product(k1, one, f).interior_distance(f, 2) < 1e-12);
  CHECK(star_product(k1, f, one).interior_distance(f, 2) < 1e-12);
  CHECK(star_product_trace(one, one).interior_distance(one, 0) < 1e-12);
}

TEST_CASE("even-mode spec identities hold exactly on the interior") {
  const double h = 0.5;
  const Setup s(10, h);
  const Kernel k1 = kernel_weyl();
  const auto e2 = s.f([](double t, double) { return e(2, t); });
  const auto e4 = s.f([](double t, double) { return e(4, t); });
  const auto L = s.f([](double, double l) { return cplx(l); });
  CHECK(star_product(k1, e2, e2, s.cfg).interior_distance(e4, 3) < 1e-12);
  const CylinderFunction comm = star_product(k1, L, e2, s.cfg) - star_product(k1, e2, L, s.cfg);
  CHECK(comm.interior_distance(cplx(2 * h) * e2, 3) < 1e-12);
  CHECK(moyal_bracket(k1, L, e2, s.cfg).interior_distance(cplx(0, -2) * e2, 3) < 1e-12);
}

TEST_CASE("odd-mode spec identities converge with the band") {
  // e^{i Theta} under Weyl ordering couples every momentum (1/mu tails), so these
  // identities are only reached as the band grows.
  double p1 = 1.0, p2 = 1.0, p3 = 1.0;
  for (int N : {4, 8, 16, 32}) {
    const Setup s(N);
    const Kernel k1 = kernel_weyl();
    const auto e1 = s.f([](double t, double) { return e(1, t); });
    const auto em1 = s.f([](double t, double) { return e(-1, t); });
    const auto e2 = s.f([](double t, double) { return e(2, t); });
    const auto one = s.f([](double, double) { return cplx(1.0); });
    const auto L = s.f([](double, double l) { return cplx(l); });
    const double a = centre_error(star_product(k1, e1, e1), e2);
    const double b = centre_error(star_product_trace(e1, em1), one);
    const double c = centre_error(star_product(k1, L, e1) - star_product(k1, e1, L), e1);
    CHECK(a < 0.6 * p1);
    CHECK(b < 0.6 * p2);
    CHECK(c < 0.6 * p3);
    p1 = a, p2 = b, p3 = c;
  }
  CHECK(p1 < 0.05);
  CHECK(p2 < 0.05);
}

TEST_CASE("triple trace matches the operator route") {
  const MomentumBand b = MomentumBand::symmetric(8);
  const AngleGrid g(grid_size_for(b.dim(), 2));
  for (int t = 0; t < 4; ++t) {
    const CylinderFunction f = random_symbol(g, b, 1.0, 2, -8, 8);
    const CylinderFunction h = random_symbol(g, b, 1.0, 2, -8, 8);
    CHECK(star_product_trace(f, h).interior_distance(star_product(kernel_weyl(), f, h), 3) < 1e-8);
    CHECK(star_product(StarBackend::triple_trace, kernel_weyl(), f, h)
              .interior_distance(star_product(StarBackend::operator_route, kernel_weyl(), f, h), 3) < 1e-8);
  }
  const CylinderFunction f = random_symbol(g, b, 1.0, 2, -8, 8);
  CHECK_THROWS_AS(star_product(StarBackend::triple_trace, kernel_mix(), f, f), InvalidArgument);
}

TEST_CASE("homomorphism, associativity and Dirac compatibility on even modes") {
  const Setup s(12);
  for (const Kernel& k : {kernel_weyl(), kernel_mix()}) {
    INFO(k.name());
    for (int t = 0; t < 3; ++t) {
      const CylinderFunction f = random_symbol(s.grid, s.band, 1.0, 2, -4, 4, true);
      const CylinderFunction g = random_symbol(s.grid, s.band, 1.0, 2, -4, 4, true);
      const CylinderFunction h = random_symbol(s.grid, s.band, 1.0, 2, -4, 4, true);
      const CylinderOperator F = quantize(k, f), G = quantize(k, g);
      CHECK(quantize(k, star_product(k, f, g)).interior_distance(F * G, 3) < 1e-10);
      CHECK(quantize(k, moyal_bracket(k, f, g)).interior_distance(cplx(0, -1) * commutator(F, G), 3) < 1e-9);
      CHECK(star_product(k, star_product(k, f, g), h).interior_distance(star_product(k, f, star_product(k, g, h)), 4) <
            1e-10);
    }
  }
}

TEST_CASE("odd-mode homomorphism defect shrinks as the band grows") {
  double prev = 1.0;
  for (int N : {8, 16, 32}) {
    const Setup s(N);
    const Kernel k1 = kernel_weyl();
    const auto f = s.f([](double t, double l) { return std::abs(l) <= 1 ? e(1, t) * (1.0 + l) : cplx{}; });
    const auto g = s.f([](double t, double l) { return std::abs(l) <= 1 ? e(2, t) * (2.0 - l) : cplx{}; });
    const CylinderOperator F = quantize(k1, f), G = quantize(k1, g);
    const CylinderOperator lhs = quantize(k1, star_product(k1, f, g));
    const double err = lhs.interior_distance(F * G, N - 4);
    CHECK(err > 1e-6);
    CHECK(err < 0.6 * prev);
    prev = err;
  }
}

TEST_CASE("unit element on odd coherences converges with the guard") {
  const CMatrix small = random_density(5, 2);
  double prev = 1.0;
  for (int N : {6, 12, 24}) {
    const Setup s(N);
    CMatrix m = CMatrix::Zero(s.band.dim(), s.band.dim());
    m.block(s.band.index(-2), s.band.index(-2), 5, 5) = small;
    const DensityOperator rho{CylinderOperator(s.band, m)};
    const auto one = s.f([](double, double) { return cplx(1.0); });
    const CylinderFunction rw = wigner_function_moments(kernel_weyl(), rho, s.grid).as_function();
    const double r = stargen_residual(kernel_weyl(), one, rw, 1.0, N - 2);
    CHECK(r < 0.6 * prev);
    prev = r;
  }
}

TEST_CASE("moyal bracket basics") {
  const Setup s(8);
  const CylinderFunction f = random_symbol(s.grid, s.band, 1.0, 3, -8, 8);
  CHECK(max_abs(moyal_bracket(kernel_weyl(), f, f).values()) < 1e-12);
  CHECK_THROWS_AS(moyal_bracket(kernel_symmetric(), f, f), NonInvertibleKernelError);
  CHECK_THROWS_AS(star_product(kernel_symmetric(), f, f), NonInvertibleKernelError);
}

TEST_CASE("poisson bracket and derivatives") {
  const double h = 0.25;
  const Setup s(8, h);
  const auto L = s.f([](double, double l) { return cplx(l); });
  const auto e1 = s.f([](double t, double) { return e(1, t); });
  CHECK(max_abs(poisson_bracket(L, e1).values() - (cplx(0, -1) * e1).values()) < 1e-12);
  const auto c1 = s.f([](double t, double) { return cplx(std::cos(t)); });
  const auto s2 = s.f([](double t, double) { return cplx(std::sin(2 * t)); });
  CHECK(max_abs(poisson_bracket(c1, s2).values()) < 1e-12);
  const auto L2 = s.f([](double, double l) { return cplx(l * l); });
  const auto target = s.f([](double t, double l) { return cplx(2 * l * std::sin(t)); });
  CHECK(max_abs(poisson_bracket(L2, c1).values() - target.values()) < 1e-12);
  const auto ds2 = s.f([](double t, double) { return cplx(2 * std::cos(2 * t)); });
  CHECK(max_abs(derivative_theta(s2).values() - ds2.values()) < 1e-12);
  const auto dL2 = s.f([](double, double l) { return cplx(2 * l); });
  CHECK(max_abs(derivative_L(L2).values() - dL2.values()) < 1e-12);

  const MomentumBand narrow(0, 3);
  CHECK_THROWS_AS(derivative_L(CylinderFunction::zeros(AngleGrid(9), narrow, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(derivative_theta(CylinderFunction::zeros(AngleGrid(10), s.band, 1.0)), InvalidArgument);
}

TEST_CASE("moyal bracket approaches the poisson bracket as hbar^2") {
  auto err = [](double h) {
    const int N = static_cast<int>(std::lround(2.0 / h));
    const Setup s(N, h);
    const auto f = s.f([](double t, double l) { return l * std::cos(2 * t); });
    const auto g = s.f([](double t, double l) { return l * l * std::sin(2 * t); });
    const CylinderFunction d = moyal_bracket(kernel_weyl(), f, g, s.cfg) - poisson_bracket(f, g);
    const int n1 = static_cast<int>(std::lround(1.0 / h));
    double e = 0.0;
    for (int j = 0; j < s.grid.size(); ++j) e = std::max(e, std::abs(d.at(j, n1)));
    return e;
  };
  const double r = err(0.2) / err(0.1);
  CHECK(r > 3.5);
  CHECK(r < 4.5);
}

TEST_CASE("star-genvalue residual") {
  const Setup s(8);
  const Kernel k1 = kernel_weyl();
  const auto L = s.f([](double, double l) { return cplx(l); });
  const auto one = s.f([](double, double) { return cplx(1.0); });
  for (int n0 : {-2, 0, 3}) {
    const DensityOperator rho(CylinderOperator::ket_bra(s.band, n0, n0));
    const CylinderFunction rw = wigner_function_moments(k1, rho, s.grid).as_function();
    CHECK(stargen_residual(k1, L, rw, n0, 3) < 1e-10);
    CHECK(stargen_residual(k1, L, rw, n0 + 1.0, 3) >= 0.1);
    CHECK(stargen_residual(k1, one, rw, 1.0, 3) < 1e-10);
  }
  // Unit element on a mixed state: exact when every coherence has even offset.
  CMatrix even = random_density(s.band.dim(), 3);
  for (int r = 0; r < even.rows(); ++r)
    for (int c = 0; c < even.cols(); ++c)
      if ((r - c) % 2) even(r, c) = 0.0;
  const DensityOperator me{CylinderOperator(s.band, even)};
  CHECK(stargen_residual(k1, one, wigner_function_moments(k1, me, s.grid).as_function(), 1.0, 2) < 1e-10);

  const Kernel km = kernel_mix();
  const DensityOperator r2(CylinderOperator::ket_bra(s.band, 1, 1));
  const CylinderFunction rm = (1.0 / kTwoPi) * weyl_symbol(km, r2.op(), s.grid, 1.0);
  CHECK(stargen_residual(km, L, rm, 1.0, 3) < 1e-10);
  CHECK(stargen_residual(km, L, rm, 2.0, 3) >= 0.1);
  CHECK_THROWS_AS(stargen_residual(kernel_symmetric(), L, rm, 1.0, 3), NonInvertibleKernelError);
}
