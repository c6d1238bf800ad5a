#include "skrates/lemma_checks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "skrates/errors.hpp"
#include "skrates/propagators.hpp"

namespace skr {

namespace {

std::string normalized(const std::string& text) {
  std::string s;
  for (char c : text)
    s.push_back(c == '-' ? '_' : char(std::tolower(static_cast<unsigned char>(c))));
  return s;
}

std::vector<double> geometric(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(step * i));
  out.back() = hi;
  return out;
}

std::vector<double> linear(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * double(i) / double(count - 1));
  return out;
}

std::vector<double> dirichlet_lambdas(int per_decade_scale) {
  // Geometrically spaced mode numbers 1..64, deduplicated after rounding.
  std::vector<double> lambdas;
  const auto ns = geometric(1.0, 64.0, 7 * per_decade_scale);
  int prev = 0;
  for (double x : ns) {
    const int n = std::max(1, int(std::lround(x)));
    if (n == prev) continue;
    prev = n;
    const double w = n * 3.14159265358979323846;
    lambdas.push_back(w * w);
  }
  return lambdas;
}

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

struct Accumulator {
  LemmaReport report;

  void add(LemmaPoint p) {
    p.ratio = p.shape > 0.0 ? p.measured / p.shape : 0.0;
    if (report.points.empty() || p.ratio > report.max_ratio) {
      report.max_ratio = p.ratio;
      report.argmax = p;
    }
    report.points.push_back(p);
  }
};

}  // namespace

std::optional<LemmaId> parse_lemma_id(const std::string& text) {
  const std::string s = normalized(text);
  if (s == "contraction" || s == "4.1") return LemmaId::contraction;
  if (s == "state_smoothing" || s == "4.2") return LemmaId::state_smoothing;
  if (s == "position_smoothing" || s == "4.3") return LemmaId::position_smoothing;
  if (s == "mode_decay" || s == "4.5") return LemmaId::mode_decay;
  if (s == "heat_limit" || s == "4.6") return LemmaId::heat_limit;
  return std::nullopt;
}

std::string lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::contraction: return "contraction";
    case LemmaId::state_smoothing: return "state-smoothing";
    case LemmaId::position_smoothing: return "position-smoothing";
    case LemmaId::mode_decay: return "mode-decay";
    case LemmaId::heat_limit: return "heat-limit";
  }
  return "?";
}

LemmaGrid default_lemma_grid(LemmaId id, int refine) {
  if (refine < 1) throw ValidationError("refine must be >= 1");
  LemmaGrid g;
  g.eps = geometric(std::pow(2.0, -10.0), 0.5, 10 * refine);
  g.lambdas = dirichlet_lambdas(refine);
  g.ts = geometric(0.01, 1.0, 7 * refine);
  switch (id) {
    case LemmaId::contraction:
      g.alphas = linear(0.0, 1.0, 2 * refine + 1);
      break;
    case LemmaId::state_smoothing:
      g.deltas = linear(0.0, 0.5, 4 * refine + 1);
      g.rhos = linear(0.0, 1.0, 4 * refine + 1);
      break;
    case LemmaId::position_smoothing:
    case LemmaId::heat_limit:
      g.alphas = linear(0.0, 1.0, 4 * refine + 1);
      g.deltas = linear(0.0, 0.5, 4 * refine + 1);
      break;
    case LemmaId::mode_decay:
      break;
  }
  return g;
}

LemmaReport lemma_bound_ratio(LemmaId id, const LemmaGrid& grid) {
  require(!grid.eps.empty() && !grid.lambdas.empty() && !grid.ts.empty(),
          "lemma grid needs eps, lambda and t axes");
  for (double e : grid.eps) require(e > 0.0 && e < 1.0, "eps must lie in (0,1)");
  for (double l : grid.lambdas) require(l > 0.0, "lambda must be positive");
  for (double t : grid.ts) require(t > 0.0, "t must be positive");
  for (double d : grid.deltas)
    require(d >= 0.0 && d <= 0.5, "delta must lie in [0,1/2]");
  for (double r : grid.rhos) require(r >= 0.0 && r <= 1.0, "rho must lie in [0,1]");
  for (double a : grid.alphas)
    require(id == LemmaId::contraction || (a >= 0.0 && a <= 1.0),
            "alpha must lie in [0,1]");

  Accumulator acc;
  acc.report.id = id;

  for (double eps : grid.eps) {
    for (double lambda : grid.lambdas) {
      for (double t : grid.ts) {
        const ModeMatrix m = wave_mode_matrix(eps, lambda, t);
        LemmaPoint p;
        p.eps = eps;
        p.lambda = lambda;
        p.t = t;

        switch (id) {
          case LemmaId::contraction: {
            require(!grid.alphas.empty(), "contraction needs an alpha axis");
            for (double alpha : grid.alphas) {
              // Worst of four unit-energy initial directions; the energy
              // norm is nonincreasing, so every ratio must stay <= 1.
              const double la = std::pow(lambda, alpha);
              const double lb = std::pow(lambda, alpha - 1.0);
              double worst = 0.0;
              const double dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
              for (const auto& d : dirs) {
                const double u = m.f10 * d[0] + m.f01 * d[1];
                const double v = m.g10 * d[0] + m.g01 * d[1];
                const double before = la * d[0] * d[0] + lb * d[1] * d[1];
                const double after = la * u * u + lb * v * v;
                worst = std::max(worst, std::sqrt(after / before));
              }
              p.alpha = alpha;
              p.measured = worst;
              p.shape = 1.0;
              acc.add(p);
            }
            break;
          }

          case LemmaId::state_smoothing: {
            require(!grid.deltas.empty() && !grid.rhos.empty(),
                    "state smoothing needs delta and rho axes");
            if (t / (eps * eps) > 700.0) break;  // documented underflow skip
            // Energy norm of e^{tA}(0, e_n); the alpha weight cancels
            // against the right-hand side, so one alpha certifies all.
            const double measured =
                std::sqrt(m.f01 * m.f01 + m.g01 * m.g01 / lambda);
            for (double delta : grid.deltas) {
              for (double rho : grid.rhos) {
                if (rho < 2.0 * delta) continue;
                p.delta = delta;
                p.rho = rho;
                p.measured = measured;
                p.shape = std::pow(t, -delta) * std::pow(eps, rho) *
                          (1.0 + std::pow(eps, 2.0 * delta - rho) *
                                     std::exp(-t / (2.0 * eps * eps))) *
                          std::pow(lambda, (rho - 2.0 * delta - 1.0) / 2.0);
                acc.add(p);
              }
            }
            break;
          }

          case LemmaId::position_smoothing: {
            require(!grid.alphas.empty() && !grid.deltas.empty(),
                    "position smoothing needs alpha and delta axes");
            for (double alpha : grid.alphas) {
              for (double delta : grid.deltas) {
                if (delta > alpha / 2.0) continue;
                p.alpha = alpha;
                p.delta = delta;
                p.measured = std::abs(m.f01);
                p.shape = std::pow(eps, alpha) * std::pow(t, -delta) *
                          std::pow(lambda, (alpha - 1.0 - 2.0 * delta) / 2.0);
                acc.add(p);
              }
            }
            break;
          }

          case LemmaId::mode_decay: {
            const bool oscillatory = 1.0 - 4.0 * lambda * eps * eps < 0.0;
            double worst_ratio = -1.0, worst_m = 0.0, worst_s = 0.0;
            const auto consider = [&](double measured, double shape) {
              if (!(shape > 0.0)) return;  // underflowed bound: skip
              const double r = measured / shape;
              if (r > worst_ratio) {
                worst_ratio = r;
                worst_m = measured;
                worst_s = shape;
              }
            };
            if (oscillatory) {
              const double e4 = std::exp(-t / (4.0 * eps * eps));
              consider(std::abs(m.f01), e4 / std::sqrt(lambda));
              consider(std::abs(m.g01), e4);
              consider(std::abs(m.f10), e4);
            } else {
              const double el = std::exp(-lambda * t);
              consider(std::abs(m.f01), eps * el);
              consider(std::abs(m.f10), el);
              consider(std::abs(m.g01),
                       std::exp(-t / (eps * eps)) + lambda * eps * eps * el);
            }
            if (worst_ratio >= 0.0) {
              p.measured = worst_m;
              p.shape = worst_s;
              acc.add(p);
            }
            break;
          }

          case LemmaId::heat_limit: {
            require(!grid.alphas.empty() && !grid.deltas.empty(),
                    "heat limit needs alpha and delta axes");
            const double decay = heat_factor(lambda, t);
            const double err_u = std::abs(m.f10 - decay);
            const double err_v = std::abs(m.f01 / eps - decay);
            for (double alpha : grid.alphas) {
              for (double delta : grid.deltas) {
                const double shape = std::pow(eps, alpha) *
                                     std::pow(t, -delta) *
                                     std::pow(lambda, (alpha - 2.0 * delta) / 2.0);
                // Position part needs delta <= alpha/2, velocity part the
                // complementary range; at the boundary both apply.
                double measured = -1.0;
                if (delta <= alpha / 2.0) measured = err_u;
                if (delta >= alpha / 2.0) measured = std::max(measured, err_v);
                if (measured < 0.0) continue;
                p.alpha = alpha;
                p.delta = delta;
                p.measured = measured;
                p.shape = shape;
                acc.add(p);
              }
            }
            break;
          }
        }
      }
    }
  }

  acc.report.n_points = acc.report.points.size();
  require(acc.report.n_points > 0,
          "no grid point satisfies the lemma's parameter constraints");
  return acc.report;
}

}  // namespace skr
