#include "skrates/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "skrates/errors.hpp"

namespace skr {

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (workers < 1) throw ValidationError("worker count must be positive");
  const int pool_size = static_cast<int>(
      std::min<std::size_t>(std::size_t(workers), n));
  if (pool_size == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto work = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
        abort.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(std::size_t(pool_size));
  for (int w = 0; w < pool_size; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (requested < 0) throw ValidationError("worker count must be positive");
  if (const char* env = std::getenv("SKRATES_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw ValidationError("SKRATES_WORKERS must be a positive integer");
    return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepContext build_sweep_context(const ExperimentConfig& cfg) {
  SweepContext ctx;
  auto basis = SpectralBasis::dirichlet(cfg.n_modes);
  ctx.problem.basis = basis;
  ctx.problem.spectrum = make_spectrum(cfg.noise, cfg.noise_gamma, cfg.n_modes);
  ctx.problem.f = cfg.f;
  ctx.problem.u0 = cfg.u0;
  ctx.problem.u0.resize(std::size_t(cfg.n_modes), 0.0);
  ctx.problem.v0 = cfg.v0;
  ctx.problem.v0.resize(std::size_t(cfg.n_modes), 0.0);
  ctx.problem.t_final = cfg.t_final;
  ctx.problem.h = cfg.h;
  ctx.problem.observations = cfg.observations;
  ctx.problem.seed = cfg.seed;
  ctx.tables.reserve(cfg.eps_list.size());
  for (double eps : cfg.eps_list)
    ctx.tables.push_back(
        build_step_tables(basis, ctx.problem.spectrum, eps, cfg.h));
  return ctx;
}

std::vector<SweepSamples> run_sweep(const ExperimentConfig& cfg, int workers) {
  const SweepContext ctx = build_sweep_context(cfg);
  const Nonlinearity f(ctx.problem.f, ctx.problem.basis);
  const int n_eps = static_cast<int>(cfg.eps_list.size());
  const int n_times = cfg.observations;  // t = 0 dropped from observables
  const std::size_t per_eps = std::size_t(cfg.replicas);

  FunctionalSpec phi;
  phi.kind = cfg.functional;
  phi.w = cfg.functional_w;

  std::vector<SweepSamples> out(static_cast<std::size_t>(n_eps));
  for (int e = 0; e < n_eps; ++e) {
    out[std::size_t(e)].eps = cfg.eps_list[std::size_t(e)];
    out[std::size_t(e)].n_replicas = cfg.replicas;
    out[std::size_t(e)].n_times = n_times;
    out[std::size_t(e)].norm_diff.resize(per_eps * std::size_t(n_times));
    out[std::size_t(e)].phi_diff.resize(per_eps * std::size_t(n_times));
  }

  parallel_for(per_eps * std::size_t(n_eps), workers, [&](std::size_t task) {
    const std::size_t e = task / per_eps;
    const std::size_t r = task % per_eps;
    const CoupledPath path =
        simulate_coupled(ctx.problem, ctx.tables[e], f, std::uint64_t(r));
    const int n = path.n_modes;
    SweepSamples& s = out[e];
    for (int k = 1; k <= n_times; ++k) {
      const double* ue = &path.u_eps[std::size_t(k) * n];
      const double* uh = &path.u_heat[std::size_t(k) * n];
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = ue[i] - uh[i];
        acc += d * d;
      }
      const std::size_t slot = r * std::size_t(n_times) + std::size_t(k - 1);
      s.norm_diff[slot] = std::sqrt(acc);
      s.phi_diff[slot] =
          functional_eval(phi, ue, n) - functional_eval(phi, uh, n);
    }
  });
  return out;
}

}  // namespace skr
