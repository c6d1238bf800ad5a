#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "skrates/analysis.hpp"
#include "skrates/config.hpp"
#include "skrates/dynamics.hpp"

namespace skr {

// Runs fn(0..n-1) on `workers` threads pulling from a shared atomic queue.
// Tasks must write only to their own slots; the first exception thrown by any
// task is rethrown on the caller after all workers finish.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn);

// Resolves --workers: explicit value, else SKRATES_WORKERS, else hardware
// concurrency.
int resolve_workers(int requested);

// Shared immutable pieces of one sweep (basis, transform, per-eps tables).
struct SweepContext {
  SimProblem problem;
  std::vector<StepTables> tables;  // one per eps, index-aligned with eps_list
};
SweepContext build_sweep_context(const ExperimentConfig& cfg);

// Executes the (eps, replica) task grid and gathers per-replica observables.
// Results are stored slot-indexed, so they are independent of scheduling.
std::vector<SweepSamples> run_sweep(const ExperimentConfig& cfg, int workers);

}  // namespace skr
