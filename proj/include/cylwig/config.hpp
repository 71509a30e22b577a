#pragma once

namespace cylwig {

struct Config {
  double hbar = 1.0;
  double tol = 1e-10;
  // Gauss-Legendre node count used for kernels without an analytic moment.
  int quad_nodes = 257;

  // Throws InvalidArgument unless hbar > 0, tol > 0, quad_nodes >= 3 and odd.
  void validate() const;

  // Defaults, with tol taken from CYLWIG_TOL when that variable is set.
  static Config from_env();
};

}  // namespace cylwig
