#include "cylwig/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cylwig/error.hpp"
#include "cylwig/simd/kernels.hpp"

namespace cylwig {

namespace {

std::shared_ptr<const std::vector<cplx>> make_roots(int M) {
  auto roots = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(M));
  for (int r = 0; r < M; ++r) {
    // Fold into [-pi, pi] before evaluating so symmetric entries match exactly.
    int s = 2 * r <= M ? r : r - M;
    double a = kTwoPi * s / M;
    (*roots)[r] = {std::cos(a), std::sin(a)};
  }
  return roots;
}

}  // namespace

AngleGrid::AngleGrid(int M) : M_(M) {
  if (M < 3) throw InvalidArgument("angle grid needs M >= 3, got " + std::to_string(M));
  roots_ = make_roots(M);
  std::vector<cplx> row(static_cast<std::size_t>(M));
  const double bound = 64.0 * std::numeric_limits<double>::epsilon() * M;
  for (int m = 1; m < M; ++m) {
    twiddle_row(m, row);
    if (std::abs(simd::sum(row)) > bound)
      throw InvariantViolation("angle grid quadrature is not exact for mode " + std::to_string(m));
  }
}

std::vector<double> AngleGrid::points() const {
  std::vector<double> p(static_cast<std::size_t>(M_));
  for (int j = 0; j < M_; ++j) p[j] = point(j);
  return p;
}

cplx AngleGrid::twiddle(int m, int j) const {
  // e^{i m (-pi + 2 pi j/M)} = (-1)^m e^{2 pi i m j / M}
  long long r = (static_cast<long long>(m) * j) % M_;
  if (r < 0) r += M_;
  cplx w = (*roots_)[static_cast<std::size_t>(r)];
  return (m % 2 == 0) ? w : -w;
}

void AngleGrid::twiddle_row(int m, std::span<cplx> out) const {
  if (static_cast<int>(out.size()) != M_) throw InvalidArgument("twiddle row length mismatch");
  long long step = m % M_;
  if (step < 0) step += M_;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  long long r = 0;
  for (int j = 0; j < M_; ++j) {
    out[j] = sign * (*roots_)[static_cast<std::size_t>(r)];
    r += step;
    if (r >= M_) r -= M_;
  }
}

std::vector<cplx> AngleGrid::twiddle_row(int m) const {
  std::vector<cplx> row(static_cast<std::size_t>(M_));
  twiddle_row(m, row);
  return row;
}

AngleGrid make_angle_grid(int M) { return AngleGrid(M); }

int grid_size_for(int dim, int bandwidth) {
  if (dim < 1 || bandwidth < 0) throw InvalidArgument("grid_size_for: dim >= 1 and bandwidth >= 0 required");
  int M = std::max(2 * bandwidth + 1, 4 * dim + 1);
  return M % 2 == 0 ? M + 1 : M;
}

cplx integrate_angle(std::span<const cplx> f, const AngleGrid& grid) {
  if (static_cast<int>(f.size()) != grid.size())
    throw InvalidArgument("integrate_angle: expected " + std::to_string(grid.size()) + " values, got " +
                          std::to_string(f.size()));
  return grid.weight() * simd::sum(f);
}

double integrate_angle(std::span<const double> f, const AngleGrid& grid) {
  if (static_cast<int>(f.size()) != grid.size())
    throw InvalidArgument("integrate_angle: expected " + std::to_string(grid.size()) + " values, got " +
                          std::to_string(f.size()));
  double s = 0.0;
  for (double v : f) s += v;
  return grid.weight() * s;
}

cplx fourier_coefficient(std::span<const cplx> f, const AngleGrid& grid, int m) {
  if (static_cast<int>(f.size()) != grid.size()) throw InvalidArgument("fourier_coefficient: length mismatch");
  std::vector<cplx> row = grid.twiddle_row(m);
  return simd::dotc(row, f) / static_cast<double>(grid.size());
}

MomentumBand::MomentumBand(int lo, int hi) : n_min(lo), n_max(hi) {
  if (lo > hi)
    throw InvalidArgument("momentum band needs n_min <= n_max, got [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
}

int MomentumBand::edge_distance(int n) const { return std::min(n - n_min, n_max - n); }

}  // namespace cylwig
