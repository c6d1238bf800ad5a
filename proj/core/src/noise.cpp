#include "skrates/noise.hpp"

#include <algorithm>
#include <cmath>

#include "skrates/errors.hpp"
#include "skrates/propagators.hpp"
#include "skrates/quadrature.hpp"

namespace skr {

namespace {

void check_noise_args(double eps, double lambda, double q, double h) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (!(q >= 0.0)) throw ValidationError("mode variance q must be nonnegative");
  if (!(h >= 0.0)) throw ValidationError("step must be nonnegative");
}

// Eigenvalues of a symmetric 3x3 matrix by cyclic Jacobi rotations; used only
// as a positive-semidefiniteness certificate, so eigenvectors are not formed.
std::array<double, 3> jacobi_eigenvalues(std::array<std::array<double, 3>, 3> a) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int qi = p + 1; qi < 3; ++qi) {
        if (a[p][qi] == 0.0) continue;
        const double theta = (a[qi][qi] - a[p][p]) / (2.0 * a[p][qi]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        std::array<std::array<double, 3>, 3> r = a;
        for (int k = 0; k < 3; ++k) {
          r[p][k] = c * a[p][k] - s * a[qi][k];
          r[qi][k] = s * a[p][k] + c * a[qi][k];
        }
        a = r;
        for (int k = 0; k < 3; ++k) {
          r[k][p] = c * a[k][p] - s * a[k][qi];
          r[k][qi] = s * a[k][p] + c * a[k][qi];
        }
        a = r;
      }
    }
  }
  return {a[0][0], a[1][1], a[2][2]};
}

// Beyond this point every wave-propagator entry and e^{-lambda s} has
// underflowed to exactly 0.0 (the slow decay rate is at least
// min(1/(2 eps^2), lambda), and exp underflows near -745), so truncating the
// Ito integrals there changes nothing and keeps the quadrature off a long
// identically-zero tail.
double support_end(double eps, double lambda, double h) {
  return std::min(h, 1520.0 * eps * eps + 1520.0 / lambda);
}

}  // namespace

NoiseSpectrum make_spectrum(NoiseKind kind, double gamma, int n_modes) {
  if (n_modes < 1) throw ValidationError("spectrum needs at least one mode");
  NoiseSpectrum s;
  s.kind = kind;
  s.q.resize(n_modes);
  switch (kind) {
    case NoiseKind::white:
      s.gamma = 0.0;
      s.beta = 0.5;
      std::fill(s.q.begin(), s.q.end(), 1.0);
      break;
    case NoiseKind::power:
      if (!(gamma >= 0.0))
        throw ValidationError("power spectrum needs gamma >= 0");
      s.gamma = gamma;
      s.beta = std::min(gamma + 0.5, 1.0);
      for (int n = 1; n <= n_modes; ++n)
        s.q[n - 1] = std::pow(double(n), -2.0 * gamma);
      break;
    case NoiseKind::trace:
      s.gamma = 1.0;
      s.beta = 1.0;
      for (int n = 1; n <= n_modes; ++n) s.q[n - 1] = 1.0 / (double(n) * n);
      break;
  }
  return s;
}

double heat_increment_var(double lambda, double q, double h) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (!(q >= 0.0)) throw ValidationError("mode variance q must be nonnegative");
  if (!(h >= 0.0)) throw ValidationError("step must be nonnegative");
  return q * -std::expm1(-2.0 * lambda * h) / (2.0 * lambda);
}

WaveBlock wave_increment_cov(double eps, double lambda, double q, double h) {
  check_noise_args(eps, lambda, q, h);
  WaveBlock b;
  if (h == 0.0 || q == 0.0) return b;
  const auto f01 = [eps, lambda](double s) {
    return wave_mode_matrix(eps, lambda, s).f01;
  };
  const auto g01 = [eps, lambda](double s) {
    return wave_mode_matrix(eps, lambda, s).g01;
  };
  const double scale = q / (eps * eps);
  const double end = support_end(eps, lambda, h);
  const double iuu = integrate([&](double s) { const double v = f01(s); return v * v; }, 0.0, end);
  const double ivv = integrate([&](double s) { const double v = g01(s); return v * v; }, 0.0, end);
  // The cross integrand changes sign; Cauchy-Schwarz bounds its magnitude, so
  // anchor the tolerance there instead of at the (possibly cancelled) value.
  QuadratureOptions cross;
  cross.abs_floor = cross.rel_tol * std::sqrt(iuu * ivv);
  b.var_u = scale * iuu;
  b.var_v = scale * ivv;
  b.cov_uv = scale * integrate([&](double s) { return f01(s) * g01(s); }, 0.0, end, cross);
  return b;
}

IncrementCovariance joint_increment_cov(double eps, double lambda, double q,
                                        double h) {
  check_noise_args(eps, lambda, q, h);
  IncrementCovariance c;
  const WaveBlock wb = wave_increment_cov(eps, lambda, q, h);
  c.var_u = wb.var_u;
  c.var_v = wb.var_v;
  c.cov_uv = wb.cov_uv;
  c.var_h = heat_increment_var(lambda, q, h);
  if (h > 0.0 && q > 0.0) {
    const double ihh = -std::expm1(-2.0 * lambda * h) / (2.0 * lambda);
    const double iuu = c.var_u * eps * eps / q;
    const double ivv = c.var_v * eps * eps / q;
    QuadratureOptions uh, vh;
    uh.abs_floor = uh.rel_tol * std::sqrt(iuu * ihh);
    vh.abs_floor = vh.rel_tol * std::sqrt(ivv * ihh);
    const double scale = q / eps;
    const double end = support_end(eps, lambda, h);
    c.cov_uh = scale * integrate(
                           [&](double s) {
                             return wave_mode_matrix(eps, lambda, s).f01 *
                                    heat_factor(lambda, s);
                           },
                           0.0, end, uh);
    c.cov_vh = scale * integrate(
                           [&](double s) {
                             return wave_mode_matrix(eps, lambda, s).g01 *
                                    heat_factor(lambda, s);
                           },
                           0.0, end, vh);
  }

  // Certify positive semidefiniteness before factoring. Quadrature rounding
  // may leave eigenvalues a hair below zero; anything worse is a hard error.
  const std::array<std::array<double, 3>, 3> m = {{{c.var_h, c.cov_uh, c.cov_vh},
                                                   {c.cov_uh, c.var_u, c.cov_uv},
                                                   {c.cov_vh, c.cov_uv, c.var_v}}};
  const double trace = c.var_h + c.var_u + c.var_v;
  if (trace > 0.0) {
    const auto w = jacobi_eigenvalues(m);
    double clipped = 0.0;
    for (double wi : w) {
      if (wi < -1e-13 * trace)
        throw NumericalError(
            "increment covariance has a significantly negative eigenvalue");
      if (wi < 0.0) clipped -= wi;
    }
    c.clip_norm = clipped;
  }

  // Lower-triangular factor in (h, u, v) order. The heat pivot comes first so
  // the heat sample depends only on (lambda, q, h) and the first normal:
  // replicas share one heat path bit-for-bit across eps. Pivots that rounding
  // pushed below zero clamp to zero (certified tiny above).
  auto& l = c.factor;
  l[0] = std::sqrt(std::max(c.var_h, 0.0));
  l[1] = l[0] > 0.0 ? c.cov_uh / l[0] : 0.0;
  l[2] = std::sqrt(std::max(c.var_u - l[1] * l[1], 0.0));
  l[3] = l[0] > 0.0 ? c.cov_vh / l[0] : 0.0;
  l[4] = l[2] > 0.0 ? (c.cov_uv - l[1] * l[3]) / l[2] : 0.0;
  l[5] = std::sqrt(std::max(c.var_v - l[3] * l[3] - l[4] * l[4], 0.0));
  return c;
}

IncrementSample sample_increments(const IncrementCovariance& cov,
                                  const CounterRng& rng, std::uint64_t base) {
  const double z0 = rng.gaussian(base);
  const double z1 = rng.gaussian(base + 1);
  const double z2 = rng.gaussian(base + 2);
  const auto& l = cov.factor;
  IncrementSample s;
  s.h = l[0] * z0;
  s.u = l[1] * z0 + l[2] * z1;
  s.v = l[3] * z0 + l[4] * z1 + l[5] * z2;
  return s;
}

}  // namespace skr
