#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skrates/spectral.hpp"

namespace skr {

enum class FunctionalKind { cos_pairing, gauss_norm, linear_pairing };

// Test functional on the position field:
//   cos-pairing(w)  phi(u) = cos(<u,w>)        bounded, all derivatives bounded
//   gauss-norm      phi(u) = exp(-||u||^2)     bounded, all derivatives bounded
//   linear-pairing  phi(u) = <u,w>             unbounded; flagged in reports
struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::cos_pairing;
  std::vector<double> w;  // pairing coefficients, padded with zeros
  bool within_hypotheses() const { return kind != FunctionalKind::linear_pairing; }
};

double functional_eval(const FunctionalSpec& phi, const double* u, int n);

// Deterministic pairwise tree reduction; the summation order is a pure
// function of n, so totals are bit-stable across worker counts.
double pairwise_sum(const double* x, std::size_t n);
double pairwise_mean(const std::vector<double>& x);

// Per-replica observables of one epsilon in a sweep, row-major [replica][time].
// Observation index 0 (t = 0) is excluded; errors there are identically zero.
struct SweepSamples {
  double eps = 0.0;
  int n_replicas = 0;
  int n_times = 0;
  std::vector<double> norm_diff;  // ||u^eps - u^0||_{L2} at (r, k)
  std::vector<double> phi_diff;   // phi(u^eps) - phi(u^0) at (r, k)
};

struct ErrorEntry {
  double eps = 0.0;
  double error = 0.0;
  double ci_halfwidth = 0.0;  // bootstrap 95%, percentile method
  int n_samples = 0;
  bool noise_dominated = false;
};

struct RateFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;
  int n_used = 0;
};

struct ErrorCurve {
  std::string type;  // "strong(p=2)" or "weak(cos-pairing)" etc.
  std::vector<ErrorEntry> entries;  // eps strictly decreasing
  std::optional<RateFit> fit;
};

// Strong error for one epsilon: max over observation times of the p-th root
// of the replica mean of ||u^eps(t_k) - u^0(t_k)||^p. Bootstrap resampling
// (1000 resamples) is driven by a counter-based stream keyed on (seed,
// eps_index), so intervals are identical for every worker count.
ErrorEntry strong_error_entry(const SweepSamples& s, double p,
                              std::uint64_t seed, std::uint64_t eps_index);

// Weak error for one epsilon: max over observation times of |replica mean of
// the coupled difference phi(u^eps) - phi(u^0)|. The coupled difference is an
// unbiased weak-error estimator whose standard deviation scales like the
// strong error. Entries with |mean| < 2 halfwidth are flagged noise-dominated.
ErrorEntry weak_error_entry(const SweepSamples& s, std::uint64_t seed,
                            std::uint64_t eps_index);

// Ordinary least squares of log(error) on log(eps); needs >= 3 usable points.
std::optional<RateFit> fit_rate(const std::vector<ErrorEntry>& entries,
                                bool drop_noise_dominated);

inline constexpr int kBootstrapResamples = 1000;

}  // namespace skr
