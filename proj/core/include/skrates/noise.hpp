#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "skrates/rng.hpp"

namespace skr {

enum class NoiseKind { white, power, trace };

// Diagonal covariance spectrum q_n of the driving Wiener process, plus its
// regularity exponent beta = sup { alpha : sum q_n lambda_n^{alpha-1} < inf }
// for the untruncated family (lambda_n ~ n^2):
//   white          q_n = 1        beta = 1/2
//   power(gamma)   q_n = n^{-2g}  beta = min(gamma + 1/2, 1)
//   trace          q_n = n^{-2}   beta = 1   (summable preset)
struct NoiseSpectrum {
  NoiseKind kind = NoiseKind::white;
  double gamma = 0.0;  // decay exponent for kind == power
  std::vector<double> q;
  double beta = 0.5;
};

NoiseSpectrum make_spectrum(NoiseKind kind, double gamma, int n_modes);

// Exact variance of one heat-mode stochastic-convolution increment over a
// step h: q (1 - e^{-2 lambda h}) / (2 lambda).
double heat_increment_var(double lambda, double q, double h);

// Wave-mode increment covariance over one step (Ito isometry on the closed
// forms, adaptive quadrature at relative tolerance 1e-12):
//   Var_u  = (q/eps^2) \int_0^h f01(s)^2 ds
//   Var_v  = (q/eps^2) \int_0^h g01(s)^2 ds
//   Cov_uv = (q/eps^2) \int_0^h f01(s) g01(s) ds
struct WaveBlock {
  double var_u = 0.0, var_v = 0.0, cov_uv = 0.0;
};
WaveBlock wave_increment_cov(double eps, double lambda, double q, double h);

// Joint covariance of the (wave-u, wave-v, heat) increment triple for one
// mode and one step, all three driven by the same scalar Brownian motion.
// Cross terms:
//   Cov(u, heat) = (q/eps) \int_0^h f01(s) e^{-lambda s} ds
//   Cov(v, heat) = (q/eps) \int_0^h g01(s) e^{-lambda s} ds
// The cached factor L is lower triangular in the component order
// (heat, wave-u, wave-v): sampling feeds the first standard normal to the
// heat coordinate alone, so the heat path is identical across all eps values
// sharing a replica stream (common random numbers), while the joint law is
// exact for every eps.
struct IncrementCovariance {
  double var_u = 0.0, var_v = 0.0, var_h = 0.0;
  double cov_uv = 0.0, cov_uh = 0.0, cov_vh = 0.0;
  // Rows of L in (h, u, v) order: h = l[0] z0; u = l[1] z0 + l[2] z1;
  // v = l[3] z0 + l[4] z1 + l[5] z2.
  std::array<double, 6> factor{};
  double clip_norm = 0.0;  // total negative eigenvalue mass removed
};
IncrementCovariance joint_increment_cov(double eps, double lambda, double q,
                                        double h);

struct IncrementSample {
  double u = 0.0, v = 0.0, h = 0.0;
};

// Applies the cached factor to the three consecutive normals at draw indices
// base+0, base+1, base+2. Exactly three uniforms per mode per step, in a
// fixed order, independent of worker scheduling.
IncrementSample sample_increments(const IncrementCovariance& cov,
                                  const CounterRng& rng, std::uint64_t base);

}  // namespace skr
