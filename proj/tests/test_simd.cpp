#include <doctest.h>

#include <vector>

#include "cylwig/numberphase.hpp"
#include "cylwig/simd/kernels.hpp"
#include "cylwig/wigner.hpp"
#include "support.hpp"

using namespace cylwig;
using namespace cylwig::testing;

namespace {

std::vector<cplx> rand_vec(std::size_t n) {
  std::vector<cplx> v(n);
  for (cplx& x : v) x = cuniform();
  return v;
}

// Restores the dispatch choice on scope exit.
struct IsaGuard {
  simd::Isa saved = simd::active().isa;
  ~IsaGuard() { simd::select(saved); }
};

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(simd::scalar_table().isa == simd::Isa::scalar);
  IsaGuard g;
  CHECK(simd::select(simd::Isa::scalar));
  CHECK(simd::active().isa == simd::Isa::scalar);
  CHECK(std::string(simd::isa_name(simd::Isa::avx2)) == "avx2");
}

TEST_CASE("scalar kernels against naive loops") {
  const simd::KernelTable& s = simd::scalar_table();
  for (std::size_t n : {0u, 1u, 5u, 33u}) {
    const auto a = rand_vec(n), b = rand_vec(n);
    cplx du{}, dc{}, sm{};
    for (std::size_t i = 0; i < n; ++i) {
      du += a[i] * b[i];
      dc += std::conj(a[i]) * b[i];
      sm += a[i];
    }
    CHECK(std::abs(s.dotu(a.data(), b.data(), n) - du) < 1e-13);
    CHECK(std::abs(s.dotc(a.data(), b.data(), n) - dc) < 1e-13);
    CHECK(std::abs(s.sum(a.data(), n) - sm) < 1e-13);
  }
}

TEST_CASE("avx2 kernels match scalar for every length 0..67") {
  const simd::KernelTable* v = simd::avx2_table();
  if (!v) {
    MESSAGE("avx2 not available on this machine; equivalence not exercised");
    return;
  }
  const simd::KernelTable& s = simd::scalar_table();
  const cplx alpha(0.3, -1.7);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto a = rand_vec(n), b = rand_vec(n);
    const double tol = 1e-14 * (1.0 + static_cast<double>(n));
    CHECK(std::abs(v->dotu(a.data(), b.data(), n) - s.dotu(a.data(), b.data(), n)) < tol);
    CHECK(std::abs(v->dotc(a.data(), b.data(), n) - s.dotc(a.data(), b.data(), n)) < tol);
    CHECK(std::abs(v->sum(a.data(), n) - s.sum(a.data(), n)) < tol);

    std::vector<cplx> y1 = b, y2 = b;
    s.axpy(alpha, a.data(), y1.data(), n);
    v->axpy(alpha, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-14);

    std::vector<double> r1(n + 1, 0.25), r2(n + 1, 0.25);  // guard element must stay untouched
    s.axpy_re(alpha, a.data(), r1.data(), n);
    v->axpy_re(alpha, a.data(), r2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r1[i] - r2[i]) < 1e-14);
    CHECK(r2[n] == 0.25);
  }
}

TEST_CASE("unaligned offsets") {
  const simd::KernelTable* v = simd::avx2_table();
  if (!v) return;
  const auto a = rand_vec(40), b = rand_vec(40);
  for (std::size_t off = 0; off < 3; ++off) {
    const std::size_t n = 40 - off;
    CHECK(std::abs(v->dotu(a.data() + off, b.data(), n) - simd::scalar_table().dotu(a.data() + off, b.data(), n)) <
          1e-13);
  }
}

TEST_CASE("pipelines agree across instruction sets") {
  if (!simd::avx2_table()) return;
  IsaGuard g;
  const MomentumBand band(-4, 6);
  const AngleGrid grid(grid_size_for(band.dim()));
  const DensityOperator rho(CylinderOperator(band, random_density(band.dim(), 3)));
  const FockDensity fr = random_fock_density(12, 2);
  const AngleGrid pg(48);

  REQUIRE(simd::select(simd::Isa::scalar));
  const WignerGrid ws = wigner_function(kernel_symmetric(), rho, grid);
  const NumberPhaseWigner ns = number_phase_wigner(fr, pg);
  const std::vector<double> as = angle_density(rho, grid);

  REQUIRE(simd::select(simd::Isa::avx2));
  const WignerGrid wv = wigner_function(kernel_symmetric(), rho, grid);
  const NumberPhaseWigner nv = number_phase_wigner(fr, pg);
  const std::vector<double> av = angle_density(rho, grid);

  CHECK((ws.values - wv.values).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((ns.values - nv.values).cwiseAbs().maxCoeff() < 1e-14);
  for (std::size_t j = 0; j < as.size(); ++j) CHECK(std::abs(as[j] - av[j]) < 1e-14);
}
