#include "skrates/dynamics.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "skrates/errors.hpp"

namespace skr {

Nonlinearity::Nonlinearity(NonlinearitySpec spec,
                           std::shared_ptr<const SpectralBasis> basis)
    : spec_(spec), basis_(std::move(basis)) {
  if (!basis_) throw ValidationError("null basis");
  if (spec_.kind == NonlinKind::nemytskii_sine) {
    if (!basis_->is_dirichlet())
      throw ValidationError(
          "pointwise nonlinearity requires the Dirichlet basis");
    dst_ = std::make_shared<SineTransform>(basis_->size(), 4 * basis_->size());
  }
}

void Nonlinearity::apply(const std::vector<double>& u, std::vector<double>& out,
                         std::vector<double>& phys_scratch) const {
  const int n = basis_->size();
  out.resize(n);
  switch (spec_.kind) {
    case NonlinKind::zero:
      std::fill(out.begin(), out.end(), 0.0);
      return;
    case NonlinKind::linear:
      for (int i = 0; i < n; ++i) out[i] = spec_.c * u[i];
      return;
    case NonlinKind::nemytskii_sine: {
      const int j = dst_->n_points();
      phys_scratch.resize(j);
      dst_->synthesize(u.data(), phys_scratch.data());
      for (int k = 0; k < j; ++k)
        phys_scratch[k] = spec_.c * std::sin(phys_scratch[k]);
      dst_->analyze(phys_scratch.data(), out.data());
      return;
    }
  }
}

StepTables build_step_tables(std::shared_ptr<const SpectralBasis> basis,
                             const NoiseSpectrum& spectrum, double eps,
                             double h) {
  if (!basis) throw ValidationError("null basis");
  if (static_cast<int>(spectrum.q.size()) != basis->size())
    throw ValidationError("spectrum size does not match basis size");
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  if (!(h > 0.0)) throw ValidationError("step must be positive");
  StepTables t;
  t.basis = std::move(basis);
  t.eps = eps;
  t.h = h;
  const int n = t.basis->size();
  t.wave.reserve(n);
  t.weights.reserve(n);
  t.heat_decay.reserve(n);
  t.noise.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const double lambda = t.basis->lambda(i);
    t.wave.push_back(wave_mode_matrix(eps, lambda, h));
    t.weights.push_back(forcing_weights(eps, lambda, h));
    t.heat_decay.push_back(heat_factor(lambda, h));
    t.noise.push_back(joint_increment_cov(eps, lambda, spectrum.q[i - 1], h));
  }
  return t;
}

void step_wave(const StepTables& t, std::vector<double>& u,
               std::vector<double>& v, const std::vector<double>& fw,
               const CounterRng& rng, std::uint64_t step_index) {
  const int n = t.basis->size();
  const std::uint64_t step_base = step_index * std::uint64_t(3 * n);
  for (int i = 0; i < n; ++i) {
    const IncrementSample xi =
        sample_increments(t.noise[i], rng, step_base + std::uint64_t(3) * i);
    const ModeMatrix& m = t.wave[i];
    const ForcingWeights& w = t.weights[i];
    const double un = m.f10 * u[i] + m.f01 * v[i] + w.wf * fw[i] + xi.u;
    const double vn = m.g10 * u[i] + m.g01 * v[i] + w.wg * fw[i] + xi.v;
    u[i] = un;
    v[i] = vn;
  }
}

void step_heat(const StepTables& t, std::vector<double>& uh,
               const std::vector<double>& fh, const CounterRng& rng,
               std::uint64_t step_index) {
  const int n = t.basis->size();
  const std::uint64_t step_base = step_index * std::uint64_t(3 * n);
  for (int i = 0; i < n; ++i) {
    // First normal of the mode triple: identical to the .h component that
    // sample_increments would produce, without spending the other two draws.
    const double xi_h =
        t.noise[i].factor[0] * rng.gaussian(step_base + std::uint64_t(3) * i);
    uh[i] = t.heat_decay[i] * uh[i] + t.weights[i].wh * fh[i] + xi_h;
  }
}

namespace {

std::int64_t checked_step_count(double t_final, double h) {
  const double ratio = t_final / h;
  const auto n = static_cast<std::int64_t>(std::llround(ratio));
  if (n < 1 || std::abs(n * h - t_final) > 1e-9 * t_final)
    throw ValidationError("h must divide the final time into whole steps");
  return n;
}

void check_finite(const std::vector<double>& w, const char* label,
                  std::int64_t step, double time) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]))
      throw NumericalError("non-finite " + std::string(label) + " coefficient in mode " +
                           std::to_string(i + 1) + " at step " +
                           std::to_string(step) + " (t = " +
                           std::to_string(time) + ")");
  }
}

}  // namespace

CoupledPath simulate_coupled(const SimProblem& prob, const StepTables& tables,
                             const Nonlinearity& f, std::uint64_t replica) {
  const int n = prob.basis->size();
  if (!(*prob.basis == *tables.basis))
    throw ValidationError("step tables built for a different basis");
  if (static_cast<int>(prob.u0.size()) != n ||
      static_cast<int>(prob.v0.size()) != n)
    throw ValidationError("initial data size does not match basis size");
  const std::int64_t n_steps = checked_step_count(prob.t_final, tables.h);
  if (prob.observations < 1 || n_steps % prob.observations != 0)
    throw ValidationError(
        "observation count must divide the number of steps");
  const std::int64_t per_obs = n_steps / prob.observations;

  CoupledPath path;
  path.eps = tables.eps;
  path.n_modes = n;
  path.times.reserve(prob.observations + 1);
  const std::size_t stride = std::size_t(n);
  path.u_eps.reserve((prob.observations + 1) * stride);
  path.v_eps.reserve((prob.observations + 1) * stride);
  path.u_heat.reserve((prob.observations + 1) * stride);

  std::vector<double> u = prob.u0, v = prob.v0, uh = prob.u0;
  std::vector<double> fw(n), fh(n), phys;
  const CounterRng rng(prob.seed, replica, StreamPurpose::path);

  const auto record = [&](double t) {
    path.times.push_back(t);
    path.u_eps.insert(path.u_eps.end(), u.begin(), u.end());
    path.v_eps.insert(path.v_eps.end(), v.begin(), v.end());
    path.u_heat.insert(path.u_heat.end(), uh.begin(), uh.end());
  };
  record(0.0);

  for (std::int64_t s = 0; s < n_steps; ++s) {
    f.apply(u, fw, phys);
    f.apply(uh, fh, phys);
    if (prob.mirror_heat)
      step_heat(tables, u, fw, rng, std::uint64_t(s));
    else
      step_wave(tables, u, v, fw, rng, std::uint64_t(s));
    step_heat(tables, uh, fh, rng, std::uint64_t(s));
    const double t = double(s + 1) * tables.h;
    check_finite(u, "position", s, t);
    check_finite(v, "velocity", s, t);
    check_finite(uh, "heat", s, t);
    if ((s + 1) % per_obs == 0) record(t);
  }
  return path;
}

}  // namespace skr
