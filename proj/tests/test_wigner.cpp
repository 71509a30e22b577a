#include <doctest.h>

#include "cylwig/error.hpp"
#include "cylwig/quantizer.hpp"
#include "cylwig/wigner.hpp"
#include "support.hpp"

using namespace cylwig;
using namespace cylwig::testing;
using doctest::Approx;

namespace {

// W(Theta, n) = Tr{rho Omega(Theta, n)} / 2pi from explicit quantizer matrices.
CMatrix wigner_by_trace(const Kernel& k, const DensityOperator& rho, const AngleGrid& g) {
  const MomentumBand& b = rho.band();
  CMatrix w(g.size(), b.dim());
  for (int j = 0; j < g.size(); ++j)
    for (int n = b.n_min; n <= b.n_max; ++n)
      w(j, b.index(n)) = (rho.matrix() * gsw_quantizer(k, g.point(j), n, b).matrix()).trace() / kTwoPi;
  return w;
}

DensityOperator witness() {
  return DensityOperator::pure(MomentumBand(0, 2), CVector::Ones(3) / std::sqrt(3.0));
}

}  // namespace

TEST_CASE("fock rows") {
  const MomentumBand b(-3, 4);
  const AngleGrid g(grid_size_for(b.dim()));
  for (int n0 : {-3, 0, 2}) {
    const DensityOperator rho(CylinderOperator::ket_bra(b, n0, n0));
    for (const WignerGrid& w : {wigner_function(kernel_symmetric(), rho, g), wigner_function_moments(kernel_symmetric(), rho, g),
                                wigner_function(kernel_weyl(), rho, g)})
      for (int j = 0; j < g.size(); ++j)
        for (int n = b.n_min; n <= b.n_max; ++n) CHECK(std::abs(w.at(j, n) - (n == n0 ? 1.0 / kTwoPi : 0.0)) < 1e-14);
  }
}

TEST_CASE("three-level witness row") {
  const AngleGrid g(9);
  const WignerGrid w = wigner_function(kernel_symmetric(), witness(), g);
  for (int j = 0; j < g.size(); ++j) CHECK(w.at(j, 1) == Approx((1 + 2 * std::cos(g.point(j))) / (6 * kPi)));
}

TEST_CASE("fast path, moment route and explicit traces agree") {
  const MomentumBand b(-2, 5);
  const AngleGrid g(grid_size_for(b.dim()));
  for (int t = 0; t < 5; ++t) {
    const DensityOperator rho(CylinderOperator(b, random_density(b.dim(), 1 + t)));
    const WignerGrid fast = wigner_function(kernel_symmetric(), rho, g);
    const WignerGrid slow = wigner_function_moments(kernel_symmetric(), rho, g);
    CHECK((fast.values - slow.values).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(max_abs(wigner_by_trace(kernel_symmetric(), rho, g) - fast.values.cast<cplx>()) < 1e-14);
    for (const Kernel& k : {kernel_weyl(), kernel_mix()})
      CHECK(max_abs(wigner_by_trace(k, rho, g) - wigner_function(k, rho, g).values.cast<cplx>()) < 1e-13);
  }
}

TEST_CASE("reality follows the symmetry condition") {
  const MomentumBand b(0, 6);
  const AngleGrid g(grid_size_for(b.dim()));
  const DensityOperator rho(CylinderOperator(b, random_density(b.dim(), 2)));
  for (const Kernel& k : {kernel_weyl(), kernel_symmetric(), kernel_mix(), kernel_gauss(0.05)})
    CHECK(wigner_function_moments(k, rho, g).max_imag < 1e-12);
  CHECK(wigner_function_moments(kernel_phase(), rho, g).max_imag > 1e-3);
}

TEST_CASE("expectations") {
  const double h = 0.5;
  const Config cfg{h, 1e-10, 257};
  const MomentumBand b(-3, 3);
  const AngleGrid g(grid_size_for(b.dim()));
  const auto one = CylinderFunction::sample(g, b, h, [](double, double) { return cplx(1.0); });
  const auto L = CylinderFunction::sample(g, b, h, [](double, double l) { return cplx(l); });
  const DensityOperator rho(CylinderOperator(b, random_density(b.dim(), 3)));
  CHECK(std::abs(expectation(kernel_symmetric(), one, rho, cfg) - 1.0) < 1e-13);
  const DensityOperator f2(CylinderOperator::ket_bra(b, 2, 2));
  CHECK(std::abs(expectation(kernel_symmetric(), L, f2, cfg) - 2 * h) < 1e-13);
  for (const Kernel& k : {kernel_weyl(), kernel_symmetric(), kernel_mix(), kernel_phase()}) {
    INFO(k.name());
    const CylinderFunction f = random_symbol(g, b, h, 4, -3, 3);
    CHECK(std::abs(expectation(k, f, rho, cfg) - expectation_trace(k, f, rho, cfg)) < 1e-12);
  }
}

TEST_CASE("marginals") {
  const MomentumBand b(0, 4);
  const AngleGrid g(grid_size_for(b.dim()));
  const WignerGrid w1 = wigner_function(kernel_symmetric(), DensityOperator(CylinderOperator::ket_bra(b, 3, 3)), g);
  const MarginalPair m1 = marginals(w1);
  for (int q = 0; q < b.dim(); ++q) CHECK(m1.momentum[q] == Approx(q == 3 ? 1.0 : 0.0));
  for (double p : m1.angle) CHECK(p == Approx(1.0 / kTwoPi));

  CMatrix half = CMatrix::Zero(5, 5);
  half(0, 0) = half(1, 1) = 0.5;
  const MarginalPair m2 = marginals(wigner_function(kernel_symmetric(), DensityOperator(CylinderOperator(b, half)), g));
  CHECK(m2.momentum[0] == Approx(0.5));
  CHECK(m2.momentum[1] == Approx(0.5));

  const DensityOperator rho(CylinderOperator(b, random_density(5, 4)));
  for (const Kernel& k : {kernel_weyl(), kernel_symmetric()}) {
    const MarginalPair m = marginals(wigner_function(k, rho, g));
    double tot = 0.0;
    for (double p : m.momentum) tot += p;
    CHECK(tot == Approx(1.0).epsilon(1e-13));
    // The angle marginal is exact for the local symmetric kernel; Weyl ordering loses the
    // odd-offset tails that fall outside the band.
    const double bound = k.id() == KernelId::symmetric ? 1e-13 : 1e-2;
    const std::vector<double> ad = angle_density(rho, g);
    for (int j = 0; j < g.size(); ++j) CHECK(std::abs(m.angle[j] - ad[j]) < bound);
  }
  // An unchecked custom kernel carries no provenance for either condition.
  const Kernel raw("raw", [](double s, int) { return cplx(std::cos(0.5 * s)); });
  CHECK_THROWS_AS(marginals(wigner_function(raw, rho, g)), InvalidArgument);
}

TEST_CASE("angle density of a pure state") {
  const MomentumBand b(-2, 2);
  const AngleGrid g(11);
  CVector psi(5);
  for (int i = 0; i < 5; ++i) psi(i) = cuniform();
  psi.normalize();
  const std::vector<double> ad = angle_density(DensityOperator::pure(b, psi), g);
  for (int j = 0; j < g.size(); ++j) {
    cplx amp{};
    for (int n = -2; n <= 2; ++n) amp += std::polar(1.0, n * g.point(j)) * psi(b.index(n));
    CHECK(ad[j] == Approx(std::norm(amp) / kTwoPi));
  }
}

TEST_CASE("reconstruction") {
  SUBCASE("fock row") {
    const MomentumBand b(0, 3);
    const AngleGrid g(grid_size_for(4));
    const WignerGrid w = wigner_function(kernel_symmetric(), DensityOperator(CylinderOperator::ket_bra(b, 2, 2)), g);
    CHECK(max_abs(reconstruct_density(w).matrix() - CylinderOperator::ket_bra(b, 2, 2).matrix()) < 1e-14);
  }
  SUBCASE("three-level witness: chain solve versus the literal moments") {
    const WignerGrid w = wigner_function(kernel_symmetric(), witness(), AngleGrid(9));
    const CylinderOperator chain = reconstruct_matrix(w);
    CHECK(chain.at(0, 1).real() == Approx(1.0 / 3.0));
    CHECK(chain.at(1, 2).real() == Approx(1.0 / 3.0));
    CHECK(chain.at(0, 2).real() == Approx(1.0 / 3.0));
    const CylinderOperator lit = reconstruct_matrix(w, ReconstructionMode::paper_literal);
    CHECK(lit.at(0, 1).real() == Approx(2.0 / 3.0));
  }
  SUBCASE("random rank-3, dim 9, and an offset band") {
    for (const MomentumBand b : {MomentumBand(0, 8), MomentumBand(-4, 4), MomentumBand(-7, 1)}) {
      const AngleGrid g(grid_size_for(b.dim()));
      const DensityOperator rho(CylinderOperator(b, random_density(9, 3)));
      const WignerGrid w = wigner_function(kernel_symmetric(), rho, g);
      CHECK(max_abs(reconstruct_density(w).matrix() - rho.matrix()) < 1e-12);
    }
  }
  SUBCASE("preconditions") {
    const MomentumBand b(0, 5);
    const DensityOperator rho(CylinderOperator(b, random_density(6, 2)));
    CHECK_THROWS_AS(reconstruct_matrix(wigner_function(kernel_weyl(), rho, AngleGrid(13))), InvalidArgument);
    CHECK_THROWS_AS(reconstruct_matrix(wigner_function(kernel_symmetric(), rho, AngleGrid(9))), InvalidArgument);
    WignerGrid w = wigner_function(kernel_symmetric(), rho, AngleGrid(13));
    w.values(0, 0) += 1.0;  // no longer the Wigner function of a state
    CHECK_THROWS_AS(reconstruct_density(w), InvariantViolation);
  }
}
