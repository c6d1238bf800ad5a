#include "skrates/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "skrates/errors.hpp"
#include "skrates/rng.hpp"

namespace skr {

double functional_eval(const FunctionalSpec& phi, const double* u, int n) {
  const int m = std::min<int>(n, static_cast<int>(phi.w.size()));
  switch (phi.kind) {
    case FunctionalKind::cos_pairing: {
      double p = 0.0;
      for (int i = 0; i < m; ++i) p += u[i] * phi.w[i];
      return std::cos(p);
    }
    case FunctionalKind::gauss_norm: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += u[i] * u[i];
      return std::exp(-s);
    }
    case FunctionalKind::linear_pairing: {
      double p = 0.0;
      for (int i = 0; i < m; ++i) p += u[i] * phi.w[i];
      return p;
    }
  }
  return 0.0;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double pairwise_mean(const std::vector<double>& x) {
  if (x.empty()) throw ValidationError("mean of an empty sample");
  return pairwise_sum(x.data(), x.size()) / double(x.size());
}

namespace {

// 95% percentile interval halfwidth of a bootstrap sample (linear
// interpolation between order statistics).
double percentile_halfwidth(std::vector<double>& t) {
  std::sort(t.begin(), t.end());
  const auto at = [&](double q) {
    const double pos = q * double(t.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, t.size() - 1);
    const double frac = pos - double(lo);
    return t[lo] + frac * (t[hi] - t[lo]);
  };
  return 0.5 * (at(0.975) - at(0.025));
}

// Statistic shared by both error types: max over observation times of a
// columnwise replica mean, optionally |.| or a p-th root at the end.
// `values` is row-major [replica][time].
template <class Finish>
double max_time_mean(const std::vector<double>& values, int n_replicas,
                     int n_times, const std::vector<std::uint32_t>* resample,
                     Finish finish) {
  double best = 0.0;
  std::vector<double> col(n_replicas);
  for (int k = 0; k < n_times; ++k) {
    for (int r = 0; r < n_replicas; ++r) {
      const std::size_t row = resample ? (*resample)[r] : std::uint32_t(r);
      col[std::size_t(r)] = values[row * std::size_t(n_times) + k];
    }
    best = std::max(best, finish(pairwise_mean(col)));
  }
  return best;
}

template <class Finish>
ErrorEntry bootstrap_entry(const SweepSamples& s,
                           const std::vector<double>& values,
                           std::uint64_t seed, std::uint64_t eps_index,
                           Finish finish) {
  ErrorEntry e;
  e.eps = s.eps;
  e.n_samples = s.n_replicas;
  e.error = max_time_mean(values, s.n_replicas, s.n_times, nullptr, finish);

  const CounterRng rng(seed, eps_index, StreamPurpose::bootstrap);
  std::vector<double> stat(kBootstrapResamples);
  std::vector<std::uint32_t> idx(s.n_replicas);
  for (int b = 0; b < kBootstrapResamples; ++b) {
    const std::uint64_t base = std::uint64_t(b) * s.n_replicas;
    for (int r = 0; r < s.n_replicas; ++r) {
      const double u = rng.uniform(base + r);
      idx[std::size_t(r)] = std::min<std::uint32_t>(
          std::uint32_t(u * s.n_replicas), std::uint32_t(s.n_replicas - 1));
    }
    stat[std::size_t(b)] =
        max_time_mean(values, s.n_replicas, s.n_times, &idx, finish);
  }
  e.ci_halfwidth = percentile_halfwidth(stat);
  e.noise_dominated = std::abs(e.error) < 2.0 * e.ci_halfwidth;
  return e;
}

}  // namespace

ErrorEntry strong_error_entry(const SweepSamples& s, double p,
                              std::uint64_t seed, std::uint64_t eps_index) {
  if (!(p >= 1.0)) throw ValidationError("moment order p must be >= 1");
  if (s.n_replicas < 1 || s.n_times < 1)
    throw ValidationError("empty sample in strong error entry");
  // Power the norms once; bootstrap then only averages and roots.
  std::vector<double> powed(s.norm_diff.size());
  for (std::size_t i = 0; i < powed.size(); ++i)
    powed[i] = p == 2.0 ? s.norm_diff[i] * s.norm_diff[i]
                        : std::pow(s.norm_diff[i], p);
  const double inv_p = 1.0 / p;
  return bootstrap_entry(s, powed, seed, eps_index, [inv_p, p](double m) {
    return p == 2.0 ? std::sqrt(m) : std::pow(m, inv_p);
  });
}

ErrorEntry weak_error_entry(const SweepSamples& s, std::uint64_t seed,
                            std::uint64_t eps_index) {
  if (s.n_replicas < 1 || s.n_times < 1)
    throw ValidationError("empty sample in weak error entry");
  return bootstrap_entry(s, s.phi_diff, seed, eps_index,
                         [](double m) { return std::abs(m); });
}

std::optional<RateFit> fit_rate(const std::vector<ErrorEntry>& entries,
                                bool drop_noise_dominated) {
  std::vector<double> x, y;
  for (const ErrorEntry& e : entries) {
    if (drop_noise_dominated && e.noise_dominated) continue;
    if (!(e.error > 0.0) || !(e.eps > 0.0)) continue;
    x.push_back(std::log(e.eps));
    y.push_back(std::log(e.error));
  }
  const int n = static_cast<int>(x.size());
  if (n < 3) return std::nullopt;

  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += x[std::size_t(i)];
    my += y[std::size_t(i)];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = x[std::size_t(i)] - mx;
    sxx += dx * dx;
    sxy += dx * (y[std::size_t(i)] - my);
  }
  if (!(sxx > 0.0)) return std::nullopt;

  RateFit fit;
  fit.n_used = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r =
        y[std::size_t(i)] - (fit.intercept + fit.slope * x[std::size_t(i)]);
    rss += r * r;
  }
  fit.residual_norm = std::sqrt(rss);
  fit.slope_stderr = std::sqrt(rss / double(n - 2) / sxx);
  return fit;
}

}  // namespace skr
