#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "skrates/errors.hpp"

namespace skr {

struct QuadratureOptions {
  double rel_tol = 1e-12;   // target relative accuracy of the integral
  double abs_floor = 0.0;   // absolute tolerance floor (for integrals near 0)
  int min_depth = 8;        // forced bisections before the error test applies
  int max_depth = 60;       // bisection depth limit
  std::size_t max_evals = 50'000'000;
};

namespace detail {

template <class F>
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(F& f, const QuadratureOptions& opt) : f_(f), opt_(opt) {}

  double run(double a, double b) {
    double fa = eval(a), fb = eval(b);
    double m = 0.5 * (a + b), fm = eval(m);
    double whole = simpson(a, b, fa, fm, fb);
    // Scale the acceptance test from a coarse pass so relative tolerance
    // has a meaningful reference even when the crude estimate is poor.
    double scale = coarse_scale(a, b);
    double tol = std::max(opt_.rel_tol * scale, opt_.abs_floor);
    return recurse(a, b, fa, fm, fb, whole, tol, 0);
  }

 private:
  double eval(double x) {
    if (++evals_ > opt_.max_evals)
      throw NumericalError("adaptive quadrature exceeded its evaluation budget");
    return f_(x);
  }

  static double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  // Composite 64-panel |f| integral, plus geometric shells toward both
  // endpoints: a cheap magnitude reference that does not cancel for
  // oscillatory integrands and still sees boundary layers much narrower
  // than one uniform panel (a reference of ~0 would push the tolerance
  // below roundoff and the recursion could never terminate).
  double coarse_scale(double a, double b) {
    const int n = 64;
    double h = (b - a) / n, acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      double w = (i == 0 || i == n) ? 0.5 : 1.0;
      acc += w * std::fabs(eval(a + i * h));
    }
    acc *= h;
    double left = 0.0, right = 0.0;
    for (int k = 7; k <= 52; ++k) {
      const double off = std::ldexp(b - a, -k);
      if (a + off == a || b - off == b) break;
      left += std::fabs(eval(a + off)) * off;
      right += std::fabs(eval(b - off)) * off;
    }
    return std::max({acc, left, right});
  }

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) {
    if (depth > opt_.max_depth)
      throw NumericalError("adaptive quadrature failed to converge");
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = eval(lm), frm = eval(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    double delta = left + right - whole;
    // Richardson: Simpson halving overestimates the residual error 15x. The
    // forced minimum depth guards against features so localized that every
    // top-level sample misses them (the error test would pass vacuously).
    if (depth >= opt_.min_depth && std::fabs(delta) <= 15.0 * tol)
      return left + right + delta / 15.0;
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  F& f_;
  const QuadratureOptions& opt_;
  std::size_t evals_ = 0;
};

}  // namespace detail

// Adaptive Simpson integration of f over [a,b]. Throws NumericalError if the
// tolerance cannot be met within the depth/evaluation budget; never returns a
// silently truncated value.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  detail::AdaptiveSimpson<F> engine(f, opt);
  return engine.run(a, b);
}

}  // namespace skr
