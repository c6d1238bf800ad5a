#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skrates/analysis.hpp"
#include "skrates/dynamics.hpp"
#include "skrates/noise.hpp"

namespace skr {

// Resolved experiment configuration. Parsed from a flat key = value text
// file with '#' comments; unknown keys are rejected (silent typos are how
// scientific configs go wrong), diagnostics carry line numbers.
struct ExperimentConfig {
  std::vector<double> eps_list = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  int n_modes = 64;
  double t_final = 0.25;
  double h = 0.25 / 512.0;
  int replicas = 2000;
  int observations = 16;

  NoiseKind noise = NoiseKind::white;
  double noise_gamma = 1.0;

  NonlinearitySpec f{NonlinKind::nemytskii_sine, 1.0};

  std::vector<double> u0 = {0.70710678118654752};  // sin(pi x)
  std::vector<double> v0 = {};

  FunctionalKind functional = FunctionalKind::cos_pairing;
  std::vector<double> functional_w = {1.0};

  double p_moment = 2.0;
  std::uint64_t seed = 0;

  // propagator-table grids
  std::vector<double> table_eps = {1.0, 0.5, 0.1, 0.01};
  std::vector<double> table_t = {0.01, 0.1, 1.0};
  std::vector<int> table_modes = {1, 2, 4, 8, 16, 32, 64};

  // simulate subcommand: which replica's path to dump
  std::uint64_t sim_replica = 0;

  int steps_total() const;
  int steps_per_observation() const;
};

// Parses and validates; missing file or bad content throws ConfigError /
// ValidationError. An empty path yields the full default config.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<config>");

// Canonical serialization of the resolved config: fixed key order, full
// precision. Semantically identical configs (any key order, any spelling of
// defaults) canonicalize to identical bytes.
std::string canonical_config_text(const ExperimentConfig& cfg);

// FNV-1a 64-bit digest of the canonical text, 16 hex digits. Embedded in
// every output file; `--check-digest` recomputes and compares.
std::string config_digest(const ExperimentConfig& cfg);

// Helpers shared by parsing and reporting.
std::string noise_kind_name(NoiseKind k);
std::string nonlin_kind_name(NonlinKind k);
std::string functional_kind_name(FunctionalKind k);

}  // namespace skr
