#pragma once

#include <string>
#include <vector>

#include "skrates/analysis.hpp"
#include "skrates/config.hpp"
#include "skrates/dynamics.hpp"
#include "skrates/lemma_checks.hpp"

namespace skr {

// End-to-end experiment drivers shared by the CLI and the acceptance suite.

struct RateResult {
  ErrorCurve curve;
  std::string report;  // human-readable summary (deterministic content only)
};

// Strong error sweep: predicted rate is every exponent below beta.
RateResult run_strong_rate(const ExperimentConfig& cfg, int workers);

// Weak error sweep with the coupled-difference estimator: predicted rate
// min(2 beta, 1); noise-dominated entries flagged and excluded from the fit.
RateResult run_weak_rate(const ExperimentConfig& cfg, int workers);

// Coupled paths of one replica, one per eps.
std::vector<CoupledPath> run_simulate(const ExperimentConfig& cfg, int workers);

struct LemmaResult {
  LemmaReport report;        // default grid
  LemmaReport refined;       // doubled resolution, for stability comparison
  std::string report_text;
};
LemmaResult run_lemma_check(LemmaId id);

struct PropagatorRow {
  double eps, lambda, t, f10, f01, g10, g01;
};
std::vector<PropagatorRow> run_propagator_table(const ExperimentConfig& cfg);

}  // namespace skr
