#pragma once

#include "skrates/spectral.hpp"

namespace skr {

// Fundamental solution at time t of the damped mode system
//
//   eps^2 f'' + f' + lambda f = 0,   g = eps f',
//
// written as the 2x2 matrix [[f10, f01], [g10, g01]] whose columns are the
// solutions (f,g) with initial data (1,0) and (0,1). The discriminant
// 1 - 4 lambda eps^2 separates oscillatory (<0), critical (=0) and
// overdamped (>0) regimes; all three are one analytic family evaluated
// without cancellation across the boundary.
struct ModeMatrix {
  double f10 = 1.0, f01 = 0.0;
  double g10 = 0.0, g01 = 1.0;
};

// Exact propagator entries. Products with the decaying exponential
// exp(-t/(2 eps^2)) are formed in log space so overdamped entries stay
// accurate when either factor under/overflows; true underflow flushes to 0.
ModeMatrix wave_mode_matrix(double eps, double lambda, double t);

// Heat multiplier e^{-lambda t}.
double heat_factor(double lambda, double t);

// Exponential-Euler weights for a forcing frozen on [0,h]:
//   wf = (1/eps) \int_0^h f01(s) ds,   wg = (1/eps) \int_0^h g01(s) ds
// (adaptive quadrature on the closed forms, relative tolerance 1e-12), and
// the heat weight wh = (1 - e^{-lambda h}) / lambda. wf -> wh as eps -> 0.
struct ForcingWeights {
  double wf = 0.0, wg = 0.0, wh = 0.0;
};
ForcingWeights forcing_weights(double eps, double lambda, double h);

// Mode-wise application of the wave propagator; contracts the energy norm
// ||.||_{H^alpha x H^{alpha-1}} for every alpha.
StateVector apply_wave_semigroup(const StateVector& x, double eps, double t);

}  // namespace skr
