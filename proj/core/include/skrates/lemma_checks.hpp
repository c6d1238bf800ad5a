#pragma once

#include <optional>
#include <string>
#include <vector>

namespace skr {

// Numerically certified semigroup estimates. Each check scans a parameter
// grid and reports sup over the grid of measured/shape, where `shape` is the
// claimed bound with its constant stripped. A finite, refinement-stable
// maximum certifies the estimate; constants are reported, never asserted.
//
//   contraction         ||exp(tA)x||_{H^a x H^{a-1}} <= ||x||  (constant 1, exact)
//   state_smoothing     ||exp(tA)(0,v)|| <= C t^{-d} eps^r (1 + eps^{2d-r} e^{-t/2eps^2})
//                         * ||v||_{H^{a+r-2d-1}},  d in [0,1/2], r in [2d,1]
//   position_smoothing  position part only: |f01| <= C eps^a t^{-d} lambda^{(a-1-2d)/2},
//                         a in [0,1], d in [0,a/2]
//   mode_decay          per-mode decay by regime: oscillatory
//                         |f01| <= C lambda^{-1/2} e^{-t/4eps^2}; overdamped
//                         |f01| <= C eps e^{-lambda t}, |f10| <= C e^{-lambda t}
//   heat_limit          |f10(t) - e^{-lambda t}| <= C eps^a t^{-d} lambda^{(a-2d)/2},
//                         d in [0, a/2]; velocity variant |f01/eps - e^{-lambda t}|
//                         with d in [a/2, 1/2]
enum class LemmaId {
  contraction,
  state_smoothing,
  position_smoothing,
  mode_decay,
  heat_limit,
};

// Accepts the canonical names above plus the numeric shorthands
// 4.1, 4.2, 4.3, 4.5, 4.6 used by the check suite's historical numbering.
std::optional<LemmaId> parse_lemma_id(const std::string& text);
std::string lemma_name(LemmaId id);

struct LemmaPoint {
  double eps = 0.0, lambda = 0.0, t = 0.0;
  double alpha = 0.0, delta = 0.0, rho = 0.0;
  double measured = 0.0, shape = 0.0, ratio = 0.0;
};

struct LemmaReport {
  LemmaId id{};
  double max_ratio = 0.0;
  LemmaPoint argmax;
  std::size_t n_points = 0;
  std::vector<LemmaPoint> points;  // full scan, for CSV emission
};

struct LemmaGrid {
  std::vector<double> eps, lambdas, ts;
  std::vector<double> alphas, deltas, rhos;
};

// Built-in grid; refine = 2 doubles the resolution of every axis (used for
// the stability-under-refinement report).
LemmaGrid default_lemma_grid(LemmaId id, int refine = 1);

// The exponential factor in state_smoothing underflows for t >> eps^2, so
// grid points with t/eps^2 > 700 are skipped there (documented limitation).
LemmaReport lemma_bound_ratio(LemmaId id, const LemmaGrid& grid);

}  // namespace skr
