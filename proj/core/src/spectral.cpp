#include "skrates/spectral.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "skrates/errors.hpp"

namespace skr {

SpectralBasis::SpectralBasis(std::vector<double> lambda, bool dirichlet)
    : lambda_(std::move(lambda)), dirichlet_(dirichlet) {}

std::shared_ptr<const SpectralBasis> SpectralBasis::dirichlet(int n_modes) {
  if (n_modes < 1) throw ValidationError("basis needs at least one mode");
  std::vector<double> lambda(n_modes);
  for (int n = 1; n <= n_modes; ++n) {
    const double w = n * std::numbers::pi;
    lambda[n - 1] = w * w;
  }
  return std::shared_ptr<const SpectralBasis>(
      new SpectralBasis(std::move(lambda), true));
}

std::shared_ptr<const SpectralBasis> SpectralBasis::with_eigenvalues(
    std::vector<double> eigenvalues) {
  if (eigenvalues.empty()) throw ValidationError("basis needs at least one mode");
  double prev = 0.0;
  for (double lam : eigenvalues) {
    if (!(lam > 0.0) || lam < prev)
      throw ValidationError(
          "eigenvalues must be positive and nondecreasing");
    prev = lam;
  }
  return std::shared_ptr<const SpectralBasis>(
      new SpectralBasis(std::move(eigenvalues), false));
}

SpectralVector make_spectral_vector(std::shared_ptr<const SpectralBasis> basis,
                                    std::vector<double> coeffs) {
  if (!basis) throw ValidationError("null basis");
  if (static_cast<int>(coeffs.size()) != basis->size())
    throw ValidationError("coefficient count does not match basis size");
  return {std::move(basis), std::move(coeffs)};
}

StateVector make_state_vector(std::shared_ptr<const SpectralBasis> basis,
                              std::vector<double> u, std::vector<double> v) {
  if (!basis) throw ValidationError("null basis");
  if (static_cast<int>(u.size()) != basis->size() ||
      static_cast<int>(v.size()) != basis->size())
    throw ValidationError("coefficient count does not match basis size");
  return {std::move(basis), std::move(u), std::move(v)};
}

double hs_norm(const SpectralVector& v, double alpha) {
  double acc = 0.0;
  const auto& lam = v.basis->eigenvalues();
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double w = alpha == 0.0 ? 1.0 : std::pow(lam[i], alpha);
    acc += w * v.c[i] * v.c[i];
  }
  return std::sqrt(acc);
}

double state_norm(const StateVector& x, double alpha) {
  double acc = 0.0;
  const auto& lam = x.basis->eigenvalues();
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double wu = alpha == 0.0 ? 1.0 : std::pow(lam[i], alpha);
    const double wv = std::pow(lam[i], alpha - 1.0);
    acc += wu * x.u[i] * x.u[i] + wv * x.v[i] * x.v[i];
  }
  return std::sqrt(acc);
}

SpectralVector project(const SpectralVector& v, int n_keep) {
  if (n_keep < 0 || n_keep > v.basis->size())
    throw ValidationError("projection level out of range");
  SpectralVector out = v;
  for (int i = n_keep; i < v.basis->size(); ++i) out.c[i] = 0.0;
  return out;
}

SineTransform::SineTransform(int n_modes, int n_points)
    : n_modes_(n_modes), n_points_(n_points) {
  if (n_modes < 1) throw ValidationError("sine transform needs n_modes >= 1");
  if (n_points < n_modes)
    throw ValidationError(
        "sine transform needs at least as many nodes as modes");
  e_.resize(std::size_t(n_points) * n_modes);
  const double sqrt2 = std::numbers::sqrt2;
  for (int j = 0; j < n_points; ++j) {
    const double x = double(j + 1) / double(n_points + 1);
    for (int n = 1; n <= n_modes; ++n)
      e_[std::size_t(j) * n_modes + (n - 1)] =
          sqrt2 * std::sin(n * std::numbers::pi * x);
  }
}

void SineTransform::synthesize(const double* c, double* w) const {
  for (int j = 0; j < n_points_; ++j) {
    const double* row = &e_[std::size_t(j) * n_modes_];
    double acc = 0.0;
    for (int n = 0; n < n_modes_; ++n) acc += row[n] * c[n];
    w[j] = acc;
  }
}

void SineTransform::analyze(const double* w, double* c) const {
  // Discrete inner product (1/(J+1)) sum_j w_j e_n(x_j); exact inverse of
  // synthesize because modes 1..J are orthonormal under it.
  for (int n = 0; n < n_modes_; ++n) c[n] = 0.0;
  for (int j = 0; j < n_points_; ++j) {
    const double* row = &e_[std::size_t(j) * n_modes_];
    const double wj = w[j];
    for (int n = 0; n < n_modes_; ++n) c[n] += row[n] * wj;
  }
  const double scale = 1.0 / double(n_points_ + 1);
  for (int n = 0; n < n_modes_; ++n) c[n] *= scale;
}

PhysicalField synthesize(const SpectralVector& v, int n_points) {
  if (!v.basis->is_dirichlet())
    throw ValidationError("point evaluation requires the Dirichlet basis");
  SineTransform st(v.basis->size(), n_points);
  PhysicalField f;
  f.n_points = n_points;
  f.w.resize(n_points);
  st.synthesize(v.c.data(), f.w.data());
  return f;
}

SpectralVector analyze(const PhysicalField& field,
                       std::shared_ptr<const SpectralBasis> basis) {
  if (!basis || !basis->is_dirichlet())
    throw ValidationError("point evaluation requires the Dirichlet basis");
  SineTransform st(basis->size(), field.n_points);
  std::vector<double> c(basis->size());
  st.analyze(field.w.data(), c.data());
  return {std::move(basis), std::move(c)};
}

}  // namespace skr
