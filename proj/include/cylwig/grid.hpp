#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cylwig/types.hpp"

namespace cylwig {

// Uniform grid Theta_j = -pi + 2 pi j / M on the circle.
class AngleGrid {
 public:
  // Throws InvalidArgument for M < 3 and InvariantViolation if the discrete
  // orthogonality sums fail to vanish.
  explicit AngleGrid(int M);

  int size() const { return M_; }
  double weight() const { return kTwoPi / M_; }
  double point(int j) const { return -kPi + kTwoPi * j / M_; }
  std::vector<double> points() const;

  // e^{i m Theta_j} for j = 0..M-1, built from one table of M-th roots so the
  // values are exactly periodic in m.
  void twiddle_row(int m, std::span<cplx> out) const;
  std::vector<cplx> twiddle_row(int m) const;
  cplx twiddle(int m, int j) const;

  // Index of the grid point at -Theta_j (mod 2 pi).
  int reflected(int j) const { return (M_ - j) % M_; }

  // Fourier modes representable without aliasing: |m| <= (M-1)/2.
  int max_mode() const { return (M_ - 1) / 2; }

  bool operator==(const AngleGrid& o) const { return M_ == o.M_; }

 private:
  int M_;
  std::shared_ptr<const std::vector<cplx>> roots_;
};

AngleGrid make_angle_grid(int M);

// Sizing rule: M = 2B + 1, raised to at least 4*dim + 1, always odd.
int grid_size_for(int dim, int bandwidth = 0);

// weight * sum_j f_j.
cplx integrate_angle(std::span<const cplx> f, const AngleGrid& grid);
double integrate_angle(std::span<const double> f, const AngleGrid& grid);

// Fourier coefficient (1/M) sum_j f_j e^{-i m Theta_j}.
cplx fourier_coefficient(std::span<const cplx> f, const AngleGrid& grid, int m);

// Inclusive integer range of the momentum index n (L = n hbar).
struct MomentumBand {
  int n_min = 0;
  int n_max = 0;

  MomentumBand() = default;
  MomentumBand(int lo, int hi);
  static MomentumBand symmetric(int N) { return {-N, N}; }

  int dim() const { return n_max - n_min + 1; }
  bool contains(int n) const { return n >= n_min && n <= n_max; }
  int index(int n) const { return n - n_min; }
  int momentum(int idx) const { return n_min + idx; }
  // Distance from n to the nearer band edge (0 at the edges).
  int edge_distance(int n) const;
  bool operator==(const MomentumBand&) const = default;
};

}  // namespace cylwig
