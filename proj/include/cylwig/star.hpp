#pragma once

#include "cylwig/config.hpp"
#include "cylwig/cylinder.hpp"
#include "cylwig/kernels.hpp"

namespace cylwig {

enum class StarBackend { operator_route, triple_trace };

// W^{-1}[K](W[K](f) W[K](g)). Throws NonInvertibleKernelError for vanishing kernels.
CylinderFunction star_product(const Kernel& k, const CylinderFunction& f, const CylinderFunction& g,
                              const Config& cfg = {});

// Moyal product for K = 1 from the triple trace of quantizers, with the Theta'
// and Theta'' integrals done by grid quadrature and every matrix element taken
// from the kernel moments.
CylinderFunction star_product_trace(const CylinderFunction& f, const CylinderFunction& g, const Config& cfg = {});

CylinderFunction star_product(StarBackend backend, const Kernel& k, const CylinderFunction& f,
                              const CylinderFunction& g, const Config& cfg = {});

// (f * g - g * f) / (i hbar), hbar taken from f.
CylinderFunction moyal_bracket(const Kernel& k, const CylinderFunction& f, const CylinderFunction& g,
                               const Config& cfg = {});

// d_Theta f d_L g - d_L f d_Theta g. d_Theta is spectral (odd grids only),
// d_L uses central differences in the interior and second-order one-sided
// differences at the two edge rows, so quadratics in L are differentiated exactly.
CylinderFunction poisson_bracket(const CylinderFunction& f, const CylinderFunction& g);

CylinderFunction derivative_theta(const CylinderFunction& f);
CylinderFunction derivative_L(const CylinderFunction& f);

// max |f * rho_W - lambda rho_W| over band indices at distance >= guard from the
// edges. For K != 1 the product is taken in the K = 1 algebra between
// K^T f_sym and K^{-1} rho_W.
double stargen_residual(const Kernel& k, const CylinderFunction& f_sym, const CylinderFunction& rho_w,
                        double lambda, int guard, const Config& cfg = {});

}  // namespace cylwig
