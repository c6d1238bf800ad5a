#include "skrates/propagators.hpp"

#include <cmath>

#include "skrates/errors.hpp"
#include "skrates/quadrature.hpp"

namespace skr {

namespace {

// tau * exp(-tau) without overflowing the intermediate for huge tau.
double tau_exp(double tau) {
  if (tau < 700.0) return tau * std::exp(-tau);
  const double l = std::log(tau) - tau;
  return l < -745.0 ? 0.0 : std::exp(l);
}

void check_args(double eps, double lambda, double t) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ValidationError("eps must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("lambda must be positive");
  if (!(t >= 0.0) || !std::isfinite(t))
    throw ValidationError("time must be nonnegative");
}

}  // namespace

ModeMatrix wave_mode_matrix(double eps, double lambda, double t) {
  check_args(eps, lambda, t);
  if (t == 0.0) return ModeMatrix{};

  const double tau = t / (2.0 * eps * eps);
  const double disc = 1.0 - 4.0 * lambda * eps * eps;
  const double z = disc * tau * tau;  // (r*tau)^2, signed

  // ec = e^{-tau} cosh(r tau), es = e^{-tau} sinh(r tau) / r, with the
  // oscillatory continuation cosh(i s tau) = cos(s tau) etc. for disc < 0.
  double ec, es;
  if (std::abs(z) < 1e-4) {
    // Both regimes collapse onto the same Taylor series in z; the largest
    // neglected term is |z|^5/11! ~ 1e-28, far below double rounding.
    const double c =
        1.0 + z * (1.0 / 2 + z * (1.0 / 24 + z * (1.0 / 720 + z / 40320)));
    const double s =
        1.0 + z * (1.0 / 6 + z * (1.0 / 120 + z * (1.0 / 5040 + z / 362880)));
    ec = std::exp(-tau) * c;
    es = tau_exp(tau) * s;
  } else if (z < 0.0) {
    const double s = std::sqrt(-disc);
    const double arg = s * tau;
    ec = std::exp(-tau) * std::cos(arg);
    es = tau_exp(tau) * (std::sin(arg) / arg);
  } else {
    const double r = std::sqrt(disc);
    // tau (1 - r) = 2 lambda t / (1 + r): exact in the limit r -> 1 where the
    // direct difference would cancel.
    const double a = std::exp(-2.0 * lambda * t / (1.0 + r));
    const double b = std::exp(-tau * (1.0 + r));
    ec = 0.5 * (a + b);
    es = (a - b) / (2.0 * r);
  }

  ModeMatrix m;
  m.f10 = ec + es;
  m.f01 = 2.0 * eps * es;
  m.g10 = -2.0 * lambda * eps * es;
  m.g01 = ec - es;
  return m;
}

double heat_factor(double lambda, double t) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("lambda must be positive");
  if (!(t >= 0.0) || !std::isfinite(t))
    throw ValidationError("time must be nonnegative");
  return std::exp(-lambda * t);
}

ForcingWeights forcing_weights(double eps, double lambda, double h) {
  check_args(eps, lambda, h);
  ForcingWeights w;
  w.wh = -std::expm1(-lambda * h) / lambda;
  if (h == 0.0) return w;
  // Past this point both entries have underflowed to exactly 0.0 (slowest
  // decay rate is at least min(1/(2 eps^2), lambda)); truncation is exact.
  const double end = std::min(h, 1520.0 * eps * eps + 1520.0 / lambda);
  w.wf = integrate(
      [eps, lambda](double s) { return wave_mode_matrix(eps, lambda, s).f01; },
      0.0, end) /
         eps;
  w.wg = integrate(
      [eps, lambda](double s) { return wave_mode_matrix(eps, lambda, s).g01; },
      0.0, end) /
         eps;
  return w;
}

StateVector apply_wave_semigroup(const StateVector& x, double eps, double t) {
  StateVector out = x;
  const int n = x.basis->size();
  for (int i = 0; i < n; ++i) {
    const ModeMatrix m = wave_mode_matrix(eps, x.basis->lambda(i + 1), t);
    out.u[i] = m.f10 * x.u[i] + m.f01 * x.v[i];
    out.v[i] = m.g10 * x.u[i] + m.g01 * x.v[i];
  }
  return out;
}

}  // namespace skr
