// Acceptance gate: ten end-to-end checks covering the exact propagator, the
// sampled noise law, the strong/weak convergence-rate experiments, and
// byte-level determinism of the artifacts. Each check prints one PASS/FAIL
// line with its measured margin and wall time; the exit code is the number
// of failed checks. argv[1] must point at the skrates CLI binary (the
// determinism check launches it as a subprocess).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skrates/analysis.hpp"
#include "skrates/config.hpp"
#include "skrates/csv_io.hpp"
#include "skrates/experiments.hpp"
#include "skrates/noise.hpp"
#include "skrates/propagators.hpp"
#include "skrates/rng.hpp"
#include "skrates/runner.hpp"

namespace fs = std::filesystem;
using namespace skr;

namespace {

constexpr double kPi = std::numbers::pi;

double lam(int n) { return (n * kPi) * (n * kPi); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double floored_rel(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

// ---------------------------------------------------------------------------
// 1. Closed-form propagator against fixed-step RK4 on the mode ODE.

Outcome propagator_vs_rk4() {
  double worst = 0.0;
  for (double eps : {1.0, 0.1, 0.01})
    for (int n : {1, 8, 64})
      for (double t : {0.01, 0.1, 1.0}) {
        ModeMatrix m = wave_mode_matrix(eps, lam(n), t);
        oracle::Mat2 r = oracle::rk4_mode_matrix(eps, lam(n), t, 1e-5);
        worst = std::max({worst, floored_rel(m.f10, r.f10),
                          floored_rel(m.f01, r.f01),
                          floored_rel(m.g10, r.g10),
                          floored_rel(m.g01, r.g01)});
      }
  return {worst <= 1e-6,
          fmt("max relative deviation %.3e over 27 grid points (tol 1e-6, "
              "rk4 step 1e-5)",
              worst)};
}

// ---------------------------------------------------------------------------
// 2. Per-mode energy lambda f^2 + g^2 never increases along the flow.

Outcome energy_contraction() {
  CounterRng rng(20260815, 0, StreamPurpose::scratch);
  double worst = 0.0;
  const int n_samples = 1000;
  for (int k = 0; k < n_samples; ++k) {
    double eps = rng.uniform(5 * k);
    double l = std::exp(std::log(lam(1)) +
                        rng.uniform(5 * k + 1) * std::log(lam(64) / lam(1)));
    double t1 = 2.0 * rng.uniform(5 * k + 2);
    double t2 = t1 + 2.0 * rng.uniform(5 * k + 3);
    double ang = 2.0 * kPi * rng.uniform(5 * k + 4);
    double u0 = std::cos(ang), v0 = std::sin(ang);
    double e0 = l * u0 * u0 + v0 * v0;
    auto energy = [&](double tt) {
      ModeMatrix m = wave_mode_matrix(eps, l, tt);
      double f = m.f10 * u0 + m.f01 * v0;
      double g = m.g10 * u0 + m.g01 * v0;
      return l * f * f + g * g;
    };
    double e1 = energy(t1), e2 = energy(t2);
    worst = std::max({worst, (e1 - e0) / e0, (e2 - e1) / e0});
  }
  return {worst <= 1e-12,
          fmt("max relative energy increase %.3e over %d random "
              "(eps, lambda, t, state) samples (tol 1e-12)",
              worst, n_samples)};
}

// ---------------------------------------------------------------------------
// 3. The velocity entries satisfy the integral identity
//    g(t) = e^{-t/eps^2} g(0) - (lambda/eps) int_0^t e^{-(t-s)/eps^2} f(s) ds,
//    evaluated with an independent panel-doubling Simpson rule after the
//    substitution r = (t-s)/eps^2.

Outcome g_integral_identity() {
  double worst = 0.0;
  for (double eps : {1.0, 0.1, 0.01})
    for (int n : {1, 8, 64})
      for (double t : {0.01, 0.1, 1.0}) {
        double l = lam(n);
        ModeMatrix m = wave_mode_matrix(eps, l, t);
        double rmax = std::min(t / (eps * eps), 745.0);
        auto convolve = [&](auto entry, double target) {
          // Give the quadrature a tenth of the final comparison budget.
          double floor =
              0.1 * 1e-9 * std::max(1.0, std::fabs(target)) / (l * eps);
          return oracle::simpson(
                     [&](double r) {
                       return std::exp(-r) *
                              entry(wave_mode_matrix(eps, l,
                                                     t - eps * eps * r));
                     },
                     0.0, rmax, 512, 1e-11, floor) *
                 l * eps;
        };
        double tail =
            (t / (eps * eps) > 700.0) ? 0.0 : std::exp(-t / (eps * eps));
        double rhs10 =
            -convolve([](const ModeMatrix& mm) { return mm.f10; }, m.g10);
        double rhs01 =
            tail -
            convolve([](const ModeMatrix& mm) { return mm.f01; }, m.g01);
        worst = std::max(
            {worst, floored_rel(m.g10, rhs10), floored_rel(m.g01, rhs01)});
      }
  return {worst <= 1e-9,
          fmt("max identity residual %.3e over 27 grid points, both columns "
              "(tol 1e-9)",
              worst)};
}

// ---------------------------------------------------------------------------
// 4. Small-mass convergence of the position entry at fixed (lambda, t). The
//    first-order estimate controls |f10 - e^{-lambda t}| / (eps sqrt(lambda));
//    halving eps must halve that normalized error (factor in [0.4, 0.6]).
//    The raw difference itself is even in eps, so its halving factor tends
//    to 1/4 and cannot sit in that window; both factors are reported.

Outcome small_mass_halving() {
  struct Pt {
    double l, t;
  };
  double fmin = 1.0, fmax = 0.0, rmin = 1.0, rmax = 0.0;
  bool pass = true;
  for (Pt p : std::vector<Pt>{
           {lam(1), 0.02}, {lam(1), 0.05}, {lam(1), 0.25}, {lam(2), 0.05}}) {
    double prev_norm = 0.0, prev_raw = 0.0;
    for (int k = 4; k <= 7; ++k) {
      double eps = std::ldexp(1.0, -k);
      double raw =
          std::fabs(wave_mode_matrix(eps, p.l, p.t).f10 - std::exp(-p.l * p.t));
      double norm = raw / (eps * std::sqrt(p.l));
      if (k > 4) {
        double fn = norm / prev_norm, fr = raw / prev_raw;
        fmin = std::min(fmin, fn);
        fmax = std::max(fmax, fn);
        rmin = std::min(rmin, fr);
        rmax = std::max(rmax, fr);
        pass = pass && fn >= 0.4 && fn <= 0.6;
      }
      prev_norm = norm;
      prev_raw = raw;
    }
  }
  return {pass,
          fmt("normalized halving factors in [%.3f, %.3f] (window [0.4, 0.6]); "
              "raw-difference factors in [%.3f, %.3f] (even in eps -> 1/4)",
              fmin, fmax, rmin, rmax)};
}

// ---------------------------------------------------------------------------
// 5. Noise exactness: closed-form increment variances against independent
//    Ito-isometry quadrature, then Monte Carlo moments of the sampled
//    triples over 10^6 draws within four standard errors.

Outcome noise_exactness() {
  // Closed forms vs panel-doubling Simpson (independent of the library's
  // adaptive quadrature).
  double worst_quad = 0.0;
  for (auto [eps, l, q, h] : std::vector<std::array<double, 4>>{
           {0.5, lam(1), 1.0, 0.1},
           {0.1, lam(2), 2.0, 0.01},
           {0.5, 1.0, 1.0, 0.05},
           {0.25, lam(3), 0.5, 0.25 / 512.0}}) {
    double heat = heat_increment_var(l, q, h);
    double heat_ref = oracle::simpson(
        [&](double s) { return q * std::exp(-2.0 * l * (h - s)); }, 0.0, h,
        64, 1e-13, 1e-18);
    worst_quad = std::max(worst_quad,
                          std::fabs(heat - heat_ref) / std::max(heat, 1e-300));
    WaveBlock wb = wave_increment_cov(eps, l, q, h);
    auto entry = [&](auto pick) {
      return q / (eps * eps) *
             oracle::simpson(
                 [&](double s) { return pick(wave_mode_matrix(eps, l, s)); },
                 0.0, h, 64, 1e-13, 1e-20);
    };
    double vu = entry([](const ModeMatrix& m) { return m.f01 * m.f01; });
    double vv = entry([](const ModeMatrix& m) { return m.g01 * m.g01; });
    double cuv = entry([](const ModeMatrix& m) { return m.f01 * m.g01; });
    double scale = std::sqrt(vu * vv);
    worst_quad = std::max({worst_quad, std::fabs(wb.var_u - vu) / vu,
                           std::fabs(wb.var_v - vv) / vv,
                           std::fabs(wb.cov_uv - cuv) / scale});
  }
  if (worst_quad > 1e-9)
    return {false, fmt("covariance vs quadrature deviates by %.3e (tol 1e-9)",
                       worst_quad)};

  // Monte Carlo: one overdamped and one oscillatory configuration.
  double worst_z = 0.0;
  const int n = 1'000'000;
  int case_id = 0;
  for (auto [eps, l, q, h] : std::vector<std::array<double, 4>>{
           {0.1, lam(1), 1.0, 0.05}, {0.5, lam(2), 1.0, 0.05}}) {
    IncrementCovariance c = joint_increment_cov(eps, l, q, h);
    CounterRng rng(424242, std::uint64_t(case_id++), StreamPurpose::scratch);
    double m[3] = {0, 0, 0}, s[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    for (int k = 0; k < n; ++k) {
      IncrementSample x = sample_increments(c, rng, 3 * std::uint64_t(k));
      double v[3] = {x.h, x.u, x.v};
      for (int i = 0; i < 3; ++i) {
        m[i] += v[i];
        for (int j = i; j < 3; ++j) s[i][j] += v[i] * v[j];
      }
    }
    double want[3][3] = {{c.var_h, c.cov_uh, c.cov_vh},
                         {0, c.var_u, c.cov_uv},
                         {0, 0, c.var_v}};
    for (int i = 0; i < 3; ++i) {
      m[i] /= n;
      worst_z = std::max(worst_z,
                         std::fabs(m[i]) / std::sqrt(want[i][i] / n));
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double cij = s[i][j] / n - m[i] * m[j];
        double se = std::sqrt(
            (want[i][i] * want[j][j] + want[i][j] * want[i][j]) / n);
        worst_z = std::max(worst_z, std::fabs(cij - want[i][j]) / se);
      }
  }
  return {worst_z <= 4.0,
          fmt("quadrature deviation %.2e (tol 1e-9); max MC deviation %.2f "
              "standard errors over 2 x 10^6 draws (tol 4)",
              worst_quad, worst_z)};
}

// ---------------------------------------------------------------------------
// Rate experiments. The default configuration is the strong-rate preset
// (N=64, T=0.25, h=T/512, nemytskii-sine(1), white noise, eps = 2^-3..2^-7,
// M=2000); the others are one-line edits of it.

Outcome check_slope(const RateResult& r, double lo, double hi,
                    const char* what) {
  if (!r.curve.fit)
    return {false, fmt("%s: no usable fit (fewer than 3 points)", what)};
  const RateFit& f = *r.curve.fit;
  int dropped = 0;
  for (const ErrorEntry& e : r.curve.entries) dropped += e.noise_dominated;
  return {f.slope >= lo && f.slope <= hi,
          fmt("%s slope %.3f +/- %.3f over %d points (window [%.2f, %.2f], "
              "%d noise-dominated dropped)",
              what, f.slope, f.slope_stderr, f.n_used, lo, hi, dropped)};
}

Outcome strong_rate_white(int workers, ErrorCurve& cache) {
  RateResult r = run_strong_rate(parse_config_text(""), workers);
  cache = r.curve;
  return check_slope(r, 0.35, 0.65, "strong/white");
}

Outcome weak_rate_white(int workers) {
  RateResult full = run_weak_rate(parse_config_text("M = 10000\n"), workers);
  Outcome of = check_slope(full, 0.75, 1.25, "weak/white M=10^4");

  auto start = std::chrono::steady_clock::now();
  RateResult reduced = run_weak_rate(
      parse_config_text("N = 32, M = 4000\n"
                        "eps_list = [0.125, 0.0625, 0.03125, 0.015625]\n"),
      workers);
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  Outcome orr = check_slope(reduced, 0.6, 1.4, "reduced N=32 M=4000");

  std::string detail =
      of.detail + "; " + orr.detail + fmt(" in %.0f s (budget 600 s)", secs);
  if (!of.pass || !orr.pass)
    detail +=
        "; the windows presume the guaranteed worst-case order 1, but a "
        "functional paired with the first mode realizes the even-in-eps "
        "propagator defect and decays at rate 2 (see README)";
  return {of.pass && orr.pass && secs < 600.0, detail};
}

Outcome strong_rate_trace(int workers) {
  RateResult r = run_strong_rate(parse_config_text("noise = trace\n"), workers);
  return check_slope(r, 0.8, 1.2, "strong/trace");
}

Outcome step_size_stability(int workers, const ErrorCurve& base) {
  if (base.entries.empty())
    return {false, "strong-rate baseline unavailable (criterion 6 failed)"};
  RateResult half =
      run_strong_rate(parse_config_text("h = 0.000244140625\n"), workers);
  double worst = 0.0;
  for (std::size_t i = 0; i < base.entries.size(); ++i) {
    double a = base.entries[i].error;
    double b = half.curve.entries[i].error;
    worst = std::max(worst, std::fabs(a - b) / a);
  }
  return {worst < 0.05,
          fmt("max strong-entry change %.2f%% when h -> h/2 (tol 5%%)",
              100.0 * worst)};
}

// ---------------------------------------------------------------------------
// 10. Worker-count determinism, end to end through the CLI.

int run_cli(const std::string& cli, const std::string& args,
            const fs::path& log) {
  std::string cmd = "\"" + cli + "\" " + args + " >" + log.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome worker_determinism(const std::string& cli) {
  fs::path dir = fs::temp_directory_path() / "skrates_acceptance_c10";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path cfg = dir / "preset.cfg";
  write_file(cfg.string(), "# strong-rate preset: all defaults\n");
  for (int workers : {1, 8}) {
    int rc = run_cli(cli,
                     fmt("strong-rate --config %s --workers %d --out %s",
                         cfg.string().c_str(), workers,
                         (dir / fmt("w%d", workers)).string().c_str()),
                     dir / fmt("log%d.txt", workers));
    if (rc != 0)
      return {false, fmt("cli exited with %d for --workers %d", rc, workers)};
  }
  std::string a = slurp(dir / "w1" / "strong_rate.csv");
  std::string b = slurp(dir / "w8" / "strong_rate.csv");
  bool same = !a.empty() && a == b;
  std::string digest = read_embedded_digest(
      (dir / "w1" / "strong_rate.csv").string());
  fs::remove_all(dir);
  return {same, same ? fmt("strong_rate.csv byte-identical for --workers 1 "
                           "and 8 (%zu bytes, digest %s)",
                           a.size(), digest.c_str())
                     : "csv bytes differ between --workers 1 and --workers 8"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-skrates-cli>\n", argv[0]);
    return 2;
  }
  std::string cli = argv[1];
  int workers = resolve_workers(0);

  int failures = 0;
  auto run = [&](int idx, const char* name,
                 const std::function<Outcome()>& f) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %2d %-24s %s  [%.1f s]\n", o.pass ? "PASS" : "FAIL",
                idx, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  };

  ErrorCurve strong_white_curve;

  run(1, "propagator-vs-rk4", [] { return propagator_vs_rk4(); });
  run(2, "energy-contraction", [] { return energy_contraction(); });
  run(3, "g-integral-identity", [] { return g_integral_identity(); });
  run(4, "small-mass-halving", [] { return small_mass_halving(); });
  run(5, "noise-exactness", [] {
    auto start = std::chrono::steady_clock::now();
    Outcome o = noise_exactness();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (o.pass && secs >= 60.0)
      o = {false, o.detail + fmt(" -- exceeded 60 s budget (%.0f s)", secs)};
    return o;
  });
  run(6, "strong-rate-white",
      [&] { return strong_rate_white(workers, strong_white_curve); });
  run(7, "weak-rate-white", [&] { return weak_rate_white(workers); });
  run(8, "strong-rate-trace", [&] { return strong_rate_trace(workers); });
  run(9, "step-size-stability",
      [&] { return step_size_stability(workers, strong_white_curve); });
  run(10, "worker-determinism", [&] { return worker_determinism(cli); });

  if (failures == 0)
    std::printf("acceptance: all 10 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
