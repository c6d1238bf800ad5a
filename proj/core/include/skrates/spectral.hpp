#pragma once

#include <memory>
#include <vector>

namespace skr {

// Truncated eigenbasis of an elliptic operator on (0,1) with positive,
// nondecreasing eigenvalues. The standard construction is the Dirichlet
// Laplacian, lambda_n = (n*pi)^2 with eigenfunctions e_n(x) = sqrt(2) sin(n pi x);
// tests may inject custom eigenvalue sequences, in which case no point
// evaluation (synthesize/analyze) is available.
class SpectralBasis {
 public:
  static std::shared_ptr<const SpectralBasis> dirichlet(int n_modes);
  static std::shared_ptr<const SpectralBasis> with_eigenvalues(
      std::vector<double> eigenvalues);

  int size() const { return static_cast<int>(lambda_.size()); }
  // n is the 1-based mode index.
  double lambda(int n) const { return lambda_[n - 1]; }
  const std::vector<double>& eigenvalues() const { return lambda_; }
  bool is_dirichlet() const { return dirichlet_; }

  friend bool operator==(const SpectralBasis& a, const SpectralBasis& b) {
    return a.dirichlet_ == b.dirichlet_ && a.lambda_ == b.lambda_;
  }

 private:
  SpectralBasis(std::vector<double> lambda, bool dirichlet);
  std::vector<double> lambda_;
  bool dirichlet_;
};

// Mode coefficients of a scalar field: c[i] multiplies mode i+1.
struct SpectralVector {
  std::shared_ptr<const SpectralBasis> basis;
  std::vector<double> c;
};

// Coefficient pair (u, v) of a position/velocity state.
struct StateVector {
  std::shared_ptr<const SpectralBasis> basis;
  std::vector<double> u, v;
};

// Point values w_j = field(x_j) at the interior collocation nodes
// x_j = j/(J+1), j = 1..J.
struct PhysicalField {
  int n_points = 0;
  std::vector<double> w;
};

SpectralVector make_spectral_vector(std::shared_ptr<const SpectralBasis> basis,
                                    std::vector<double> coeffs);
StateVector make_state_vector(std::shared_ptr<const SpectralBasis> basis,
                              std::vector<double> u, std::vector<double> v);

// Sobolev norm ||u||_{H^alpha} = sqrt(sum lambda_n^alpha c_n^2). alpha may be
// negative; alpha = 0 is the L2 norm.
double hs_norm(const SpectralVector& v, double alpha);

// Energy-space norm sqrt(||u||_{H^alpha}^2 + ||v||_{H^{alpha-1}}^2).
double state_norm(const StateVector& x, double alpha);

// Keep the first n_keep modes, zero the rest. The tail obeys
// ||P_M u - u||_{L2} <= lambda_M^{-alpha/2} ||u||_{H^alpha}.
SpectralVector project(const SpectralVector& v, int n_keep);

// Dense sine transform between the first N Dirichlet modes and J >= N interior
// nodes. The node set makes modes 1..J exactly orthogonal in the discrete
// inner product (1/(J+1)) sum_j, so analyze(synthesize(v)) == v for any
// band-limited v and the discrete Parseval identity holds exactly.
class SineTransform {
 public:
  SineTransform(int n_modes, int n_points);

  void synthesize(const double* c, double* w) const;
  void analyze(const double* w, double* c) const;

  int n_modes() const { return n_modes_; }
  int n_points() const { return n_points_; }

 private:
  int n_modes_, n_points_;
  std::vector<double> e_;  // e_[j*N + (n-1)] = e_n(x_{j+1}), row-major by node
};

// Convenience wrappers constructing a transform on the fly (tests, CLI).
PhysicalField synthesize(const SpectralVector& v, int n_points);
SpectralVector analyze(const PhysicalField& field,
                       std::shared_ptr<const SpectralBasis> basis);

}  // namespace skr
