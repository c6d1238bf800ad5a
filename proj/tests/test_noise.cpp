#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "skrates/errors.hpp"
#include "skrates/noise.hpp"

using namespace skr;

namespace {

constexpr double kPi = std::numbers::pi;

double lam1() { return kPi * kPi; }

// Scaled comparison for covariance entries: error relative to the geometric
// mean of the two variances, the scale on which Cauchy-Schwarz lives.
void check_cov3(const IncrementCovariance& got, const oracle::Cov3& want,
                double tol) {
  auto rel = [&](double mine, double ora, double si, double sj) {
    return std::fabs(mine - ora) / std::max(std::sqrt(si * sj), 1e-300);
  };
  CHECK(rel(got.var_h, want.p[0][0], want.p[0][0], want.p[0][0]) < tol);
  CHECK(rel(got.var_u, want.p[1][1], want.p[1][1], want.p[1][1]) < tol);
  CHECK(rel(got.var_v, want.p[2][2], want.p[2][2], want.p[2][2]) < tol);
  CHECK(rel(got.cov_uv, want.p[1][2], want.p[1][1], want.p[2][2]) < tol);
  CHECK(rel(got.cov_uh, want.p[0][1], want.p[0][0], want.p[1][1]) < tol);
  CHECK(rel(got.cov_vh, want.p[0][2], want.p[0][0], want.p[2][2]) < tol);
}

}  // namespace

TEST_CASE("noise spectra and regularity exponents") {
  NoiseSpectrum white = make_spectrum(NoiseKind::white, 0.0, 4);
  CHECK(white.q == std::vector<double>{1.0, 1.0, 1.0, 1.0});
  CHECK(white.beta == 0.5);

  NoiseSpectrum p1 = make_spectrum(NoiseKind::power, 0.1, 3);
  CHECK(p1.q[0] == 1.0);
  CHECK(p1.q[1] == doctest::Approx(std::pow(2.0, -0.2)).epsilon(1e-15));
  CHECK(p1.q[2] == doctest::Approx(std::pow(3.0, -0.2)).epsilon(1e-15));
  CHECK(p1.beta == doctest::Approx(0.6).epsilon(1e-15));

  CHECK(make_spectrum(NoiseKind::power, 0.5, 2).beta == 1.0);
  CHECK(make_spectrum(NoiseKind::power, 2.0, 2).beta == 1.0);

  NoiseSpectrum tr = make_spectrum(NoiseKind::trace, 0.0, 3);
  CHECK(tr.q[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(tr.q[2] == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(tr.beta == 1.0);

  CHECK_THROWS_AS(make_spectrum(NoiseKind::power, -0.5, 2), ValidationError);
  CHECK_THROWS_AS(make_spectrum(NoiseKind::white, 0.0, 0), ValidationError);
}

TEST_CASE("heat increment variance closed form") {
  // q (1 - e^{-2 lambda h}) / (2 lambda) at (1, 2, ln 2) is exactly 3/4.
  CHECK(heat_increment_var(1.0, 2.0, std::log(2.0)) ==
        doctest::Approx(0.75).epsilon(1e-15));
  CHECK(heat_increment_var(3.0, 1.0, 0.0) == 0.0);
  // Stationary limit q/(2 lambda).
  CHECK(heat_increment_var(2.5, 1.0, 1e6) ==
        doctest::Approx(0.2).epsilon(1e-12));
  // Small-h limit q h.
  CHECK(heat_increment_var(1.0, 1.0, 1e-9) ==
        doctest::Approx(1e-9).epsilon(1e-6));
  CHECK_THROWS_AS(heat_increment_var(0.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("increment covariance matches a lyapunov integration") {
  struct Case {
    double eps, lambda, q, h;
  };
  for (Case c : std::vector<Case>{
           {0.5, lam1(), 1.0, 0.1},
           {0.1, 4.0 * lam1(), 2.0, 0.01},
           {0.5, 1.0, 1.0, 0.05},  // critical: discriminant zero
           {0.9, 40438.0, 0.7, 0.002},
           {0.1, lam1(), 1.5, 0.25 / 512.0},
           {0.05, lam1(), 1.0, 0.002},
       }) {
    IncrementCovariance got = joint_increment_cov(c.eps, c.lambda, c.q, c.h);
    int steps = static_cast<int>(
        std::ceil(4000.0 * std::max(1.0, c.h / (c.eps * c.eps))));
    oracle::Cov3 want =
        oracle::lyapunov_increment_cov(c.eps, c.lambda, c.q, c.h, steps);
    check_cov3(got, want, 1e-12);
    CHECK(got.clip_norm <= 1e-13 * (got.var_h + got.var_u + got.var_v));

    // The marginal 2x2 wave block is computed by an independent entry point.
    WaveBlock wb = wave_increment_cov(c.eps, c.lambda, c.q, c.h);
    CHECK(wb.var_u == got.var_u);
    CHECK(wb.var_v == got.var_v);
    CHECK(wb.cov_uv == got.cov_uv);
  }
}

TEST_CASE("long-step variances reach the stationary law") {
  // Var u -> q/(2 lambda), Var v -> q/2 as h -> infinity.
  IncrementCovariance st = joint_increment_cov(0.5, 1.0, 1.0, 50.0);
  CHECK(st.var_u == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(st.var_v == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(st.var_h == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tiny-step cross covariance") {
  // Cov(v, heat) ~ q h / eps to leading order.
  IncrementCovariance c = joint_increment_cov(1.0, lam1(), 1.0, 1e-6);
  CHECK(std::fabs(c.cov_vh - 1e-6) < 1e-10);
}

TEST_CASE("cholesky factor reproduces the covariance") {
  CounterRng rng(31, 0, StreamPurpose::scratch);
  for (int k = 0; k < 200; ++k) {
    double eps = 0.02 + 0.98 * rng.uniform(4 * k);
    double l = std::exp(std::log(0.5) + rng.uniform(4 * k + 1) *
                                            std::log(50000.0 / 0.5));
    double q = 0.1 + 2.0 * rng.uniform(4 * k + 2);
    double h = std::exp(std::log(1e-5) +
                        rng.uniform(4 * k + 3) * std::log(10.0 / 1e-5));
    IncrementCovariance c = joint_increment_cov(eps, l, q, h);
    const auto& f = c.factor;
    double scale = std::max({c.var_h, c.var_u, c.var_v});
    double tol = 1e-10 * scale + 2.0 * c.clip_norm;
    CHECK(std::fabs(f[0] * f[0] - c.var_h) <= tol);
    CHECK(std::fabs(f[0] * f[1] - c.cov_uh) <= tol);
    CHECK(std::fabs(f[1] * f[1] + f[2] * f[2] - c.var_u) <= tol);
    CHECK(std::fabs(f[0] * f[3] - c.cov_vh) <= tol);
    CHECK(std::fabs(f[1] * f[3] + f[2] * f[4] - c.cov_uv) <= tol);
    CHECK(std::fabs(f[3] * f[3] + f[4] * f[4] + f[5] * f[5] - c.var_v) <=
          tol);
    CHECK(c.clip_norm <= 1e-12 * (c.var_h + c.var_u + c.var_v) + 1e-300);
  }
}

TEST_CASE("heat row of the factor is independent of eps") {
  // Common random numbers: the heat coordinate must be driven identically
  // for every eps sharing a replica stream, bit for bit.
  IncrementCovariance a = joint_increment_cov(0.3, lam1(), 1.0, 0.01);
  IncrementCovariance b = joint_increment_cov(0.7, lam1(), 1.0, 0.01);
  CHECK(a.factor[0] == b.factor[0]);
  CHECK(a.var_h == b.var_h);

  CounterRng rng(5, 9, StreamPurpose::path);
  for (std::uint64_t base : {0ull, 3ull, 300ull}) {
    IncrementSample sa = sample_increments(a, rng, base);
    IncrementSample sb = sample_increments(b, rng, base);
    CHECK(sa.h == sb.h);
    // And the heat component is exactly factor[0] times the first normal.
    CHECK(sa.h == a.factor[0] * rng.gaussian(base));
  }
}

TEST_CASE("degenerate steps stay finite") {
  IncrementCovariance c = joint_increment_cov(0.5, 2.0, 1.0, 1e-12);
  for (double x : c.factor) CHECK(std::isfinite(x));
  CounterRng rng(1, 1, StreamPurpose::path);
  IncrementSample s = sample_increments(c, rng, 0);
  CHECK(std::isfinite(s.u));
  CHECK(std::isfinite(s.v));
  CHECK(std::isfinite(s.h));
  IncrementCovariance z = joint_increment_cov(0.5, 2.0, 0.0, 0.1);
  IncrementSample sz = sample_increments(z, rng, 0);
  CHECK(sz.u == 0.0);
  CHECK(sz.v == 0.0);
  CHECK(sz.h == 0.0);
}

TEST_CASE("sampled moments agree with the covariance formulas") {
  const double eps = 0.3, l = lam1(), q = 1.0, h = 0.05;
  IncrementCovariance c = joint_increment_cov(eps, l, q, h);
  const int n = 200000;
  CounterRng rng(77, 0, StreamPurpose::scratch);
  double m[3] = {0, 0, 0};
  double s[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  for (int k = 0; k < n; ++k) {
    IncrementSample x = sample_increments(c, rng, 3 * std::uint64_t(k));
    double v[3] = {x.h, x.u, x.v};
    for (int i = 0; i < 3; ++i) {
      m[i] += v[i];
      for (int j = i; j < 3; ++j) s[i][j] += v[i] * v[j];
    }
  }
  double cov[3][3];
  for (int i = 0; i < 3; ++i) m[i] /= n;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) cov[i][j] = s[i][j] / n - m[i] * m[j];
  double want[3][3] = {{c.var_h, c.cov_uh, c.cov_vh},
                       {0, c.var_u, c.cov_uv},
                       {0, 0, c.var_v}};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::fabs(m[i]) < 5.0 * std::sqrt(want[i][i] / n));
    for (int j = i; j < 3; ++j) {
      // Var(x y) = c_ii c_jj + c_ij^2 for joint gaussians.
      double se = std::sqrt(
          (want[i][i] * want[j][j] + want[i][j] * want[i][j]) / n);
      CHECK(std::fabs(cov[i][j] - want[i][j]) < 5.0 * se);
    }
  }
}
