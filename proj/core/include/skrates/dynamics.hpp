#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "skrates/noise.hpp"
#include "skrates/propagators.hpp"
#include "skrates/spectral.hpp"

namespace skr {

enum class NonlinKind { zero, linear, nemytskii_sine };

// Drift nonlinearity acting on the position field:
//   zero              f(u) = 0
//   linear(c)         f(u) = c u
//   nemytskii-sine(c) f(u)(x) = c sin(u(x)), evaluated pseudo-spectrally
// All three are globally Lipschitz on L2 with constant |c|; the sine map is
// bounded with bounded derivatives of every order.
struct NonlinearitySpec {
  NonlinKind kind = NonlinKind::nemytskii_sine;
  double c = 1.0;
  double lipschitz() const { return kind == NonlinKind::zero ? 0.0 : std::abs(c); }
};

// Galerkin nonlinearity P_N f. The sine kind collocates on J = 4N interior
// nodes; aliasing of the non-polynomial composition is accepted (no exact
// dealiasing exists for sin(u)) and the constant-in-N collocation ratio keeps
// it stable under refinement.
class Nonlinearity {
 public:
  Nonlinearity(NonlinearitySpec spec,
               std::shared_ptr<const SpectralBasis> basis);

  // out = [P_N f(u)]_n. Scratch is caller-owned so a shared instance is
  // safe across threads.
  void apply(const std::vector<double>& u, std::vector<double>& out,
             std::vector<double>& phys_scratch) const;

  const NonlinearitySpec& spec() const { return spec_; }

 private:
  NonlinearitySpec spec_;
  std::shared_ptr<const SpectralBasis> basis_;
  std::shared_ptr<const SineTransform> dst_;  // null for zero/linear kinds
};

// Everything the exponential-Euler step needs, precomputed once per
// (basis, spectrum, eps, h) and immutable afterwards: exact propagators,
// forcing weights, and factored increment covariances per mode.
struct StepTables {
  std::shared_ptr<const SpectralBasis> basis;
  double eps = 0.0, h = 0.0;
  std::vector<ModeMatrix> wave;
  std::vector<ForcingWeights> weights;
  std::vector<double> heat_decay;          // e^{-lambda h}
  std::vector<IncrementCovariance> noise;  // factored, (h,u,v) order
};
StepTables build_step_tables(std::shared_ptr<const SpectralBasis> basis,
                             const NoiseSpectrum& spectrum, double eps,
                             double h);

// One exponential-Euler step of the wave pair on preassembled forcing
// coefficients fw = [P_N f(u)]: exact semigroup, exact noise, left-endpoint
// frozen drift. Exact in law when f == 0.
void step_wave(const StepTables& t, std::vector<double>& u,
               std::vector<double>& v, const std::vector<double>& fw,
               const CounterRng& rng, std::uint64_t step_index);

// Heat counterpart on the shared increment triple (same draw indices; the
// heat coordinate uses the first normal of each mode triple only).
void step_heat(const StepTables& t, std::vector<double>& uh,
               const std::vector<double>& fh, const CounterRng& rng,
               std::uint64_t step_index);

// Snapshots of the coupled pair at the observation times (k=0 included).
struct CoupledPath {
  double eps = 0.0;
  std::vector<double> times;
  int n_modes = 0;
  // Row-major [time][mode].
  std::vector<double> u_eps, v_eps, u_heat;
};

// Fully specified simulation problem (resolved config, shared tables).
struct SimProblem {
  std::shared_ptr<const SpectralBasis> basis;
  NoiseSpectrum spectrum;
  NonlinearitySpec f;
  std::vector<double> u0, v0;  // length N
  double t_final = 0.25;
  double h = 0.25 / 512;
  int observations = 16;
  std::uint64_t seed = 0;
  // Test hook: step the "wave" system with the heat recursion so both
  // systems coincide bit-for-bit (strong error must then vanish).
  bool mirror_heat = false;
};

// Runs both systems on the shared noise path of `replica`. Deterministic
// given (problem, eps, replica); NaN aborts with a diagnostic.
CoupledPath simulate_coupled(const SimProblem& prob, const StepTables& tables,
                             const Nonlinearity& f, std::uint64_t replica);

}  // namespace skr
