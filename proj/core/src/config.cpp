#include "skrates/config.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "skrates/errors.hpp"

namespace skr {

namespace {

std::string lower_key(const std::string& s) {
  std::string out;
  for (char c : s)
    out.push_back(c == '-' ? '_'
                           : char(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct LineRef {
  const std::string& origin;
  int line;
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(origin, line, msg);
  }
};

double parse_double(const std::string& s, const LineRef& at) {
  const std::string t = trim(s);
  if (t.empty()) at.fail("expected a number");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) at.fail("malformed number '" + t + "'");
  if (!std::isfinite(v)) at.fail("number '" + t + "' is not finite");
  return v;
}

long long parse_int(const std::string& s, const LineRef& at) {
  const std::string t = trim(s);
  if (t.empty()) at.fail("expected an integer");
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) at.fail("malformed integer '" + t + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, const LineRef& at) {
  const std::string t = trim(s);
  if (t.empty() || t[0] == '-') at.fail("expected a nonnegative integer");
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) at.fail("malformed integer '" + t + "'");
  return v;
}

// Lists come bracketed ([a, b, c]) or bare (a, b, c); both may be empty.
std::vector<std::string> split_list(const std::string& s, const LineRef& at) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') at.fail("unterminated list (missing ']')");
    t = trim(t.substr(1, t.size() - 2));
  }
  std::vector<std::string> items;
  if (t.empty()) return items;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = t.find(',', start);
    const std::string item =
        trim(comma == std::string::npos ? t.substr(start)
                                        : t.substr(start, comma - start));
    if (item.empty()) at.fail("empty list element");
    items.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

std::vector<double> parse_double_list(const std::string& s, const LineRef& at) {
  std::vector<double> out;
  for (const std::string& item : split_list(s, at))
    out.push_back(parse_double(item, at));
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const LineRef& at) {
  std::vector<int> out;
  for (const std::string& item : split_list(s, at))
    out.push_back(static_cast<int>(parse_int(item, at)));
  return out;
}

NoiseKind parse_noise_kind(const std::string& s, const LineRef& at) {
  const std::string t = lower_key(trim(s));
  if (t == "white") return NoiseKind::white;
  if (t == "power") return NoiseKind::power;
  if (t == "trace") return NoiseKind::trace;
  at.fail("unknown noise kind '" + trim(s) + "' (white, power, trace)");
}

FunctionalKind parse_functional_kind(const std::string& s, const LineRef& at) {
  const std::string t = lower_key(trim(s));
  if (t == "cos_pairing") return FunctionalKind::cos_pairing;
  if (t == "gauss_norm") return FunctionalKind::gauss_norm;
  if (t == "linear_pairing") return FunctionalKind::linear_pairing;
  at.fail("unknown functional '" + trim(s) +
          "' (cos-pairing, gauss-norm, linear-pairing)");
}

// Nonlinearity spellings: "zero", "linear", "nemytskii-sine", optionally
// with the constant attached: "nemytskii-sine(1.5)".
void parse_nonlinearity(const std::string& s, NonlinearitySpec& f,
                        const LineRef& at) {
  std::string t = trim(s);
  std::string arg;
  const std::size_t paren = t.find('(');
  if (paren != std::string::npos) {
    if (t.back() != ')') at.fail("unterminated '(' in nonlinearity");
    arg = t.substr(paren + 1, t.size() - paren - 2);
    t = trim(t.substr(0, paren));
  }
  const std::string kind = lower_key(t);
  if (kind == "zero")
    f.kind = NonlinKind::zero;
  else if (kind == "linear")
    f.kind = NonlinKind::linear;
  else if (kind == "nemytskii_sine")
    f.kind = NonlinKind::nemytskii_sine;
  else
    at.fail("unknown nonlinearity '" + t +
            "' (zero, linear, nemytskii-sine)");
  if (!trim(arg).empty()) f.c = parse_double(arg, at);
}

void validate(ExperimentConfig& cfg, const std::string& origin) {
  const LineRef at{origin, 0};
  if (cfg.eps_list.empty()) at.fail("eps_list must not be empty");
  for (double e : cfg.eps_list)
    if (!(e > 0.0 && e <= 1.0)) at.fail("eps values must lie in (0, 1]");
  std::sort(cfg.eps_list.begin(), cfg.eps_list.end(), std::greater<>());
  for (std::size_t i = 1; i < cfg.eps_list.size(); ++i)
    if (cfg.eps_list[i] == cfg.eps_list[i - 1])
      at.fail("eps_list has duplicate entries");

  if (cfg.n_modes < 1 || cfg.n_modes > 2048)
    at.fail("n_modes must lie in [1, 2048]");
  if (!(cfg.t_final > 0.0)) at.fail("T must be positive");
  if (!(cfg.h > 0.0)) at.fail("h must be positive");
  const double ratio = cfg.t_final / cfg.h;
  const auto n_steps = static_cast<long long>(std::llround(ratio));
  if (n_steps < 1 ||
      std::abs(double(n_steps) * cfg.h - cfg.t_final) > 1e-9 * cfg.t_final)
    at.fail("h must divide T");
  if (n_steps > 100'000'000) at.fail("T/h exceeds the supported step count");
  if (cfg.replicas < 1) at.fail("M must be at least 1");
  if (cfg.observations < 1 || n_steps % cfg.observations != 0)
    at.fail("observations must divide the step count T/h");
  if (!(cfg.noise_gamma >= 0.0)) at.fail("gamma must be nonnegative");
  if (!std::isfinite(cfg.f.c)) at.fail("nonlinearity constant must be finite");
  if (static_cast<int>(cfg.u0.size()) > cfg.n_modes)
    at.fail("u0 has more coefficients than n_modes");
  if (static_cast<int>(cfg.v0.size()) > cfg.n_modes)
    at.fail("v0 has more coefficients than n_modes");
  if (static_cast<int>(cfg.functional_w.size()) > cfg.n_modes)
    at.fail("functional_w has more coefficients than n_modes");
  if (!(cfg.p_moment >= 1.0)) at.fail("p must be at least 1");
  if (cfg.table_eps.empty()) at.fail("table_eps must not be empty");
  for (double e : cfg.table_eps)
    if (!(e > 0.0)) at.fail("table_eps values must be positive");
  if (cfg.table_t.empty()) at.fail("table_t must not be empty");
  for (double t : cfg.table_t)
    if (!(t >= 0.0)) at.fail("table_t values must be nonnegative");
  if (cfg.table_modes.empty()) at.fail("table_modes must not be empty");
  for (int m : cfg.table_modes)
    if (m < 1) at.fail("table_modes entries must be positive");
}

}  // namespace

int ExperimentConfig::steps_total() const {
  return static_cast<int>(std::llround(t_final / h));
}

int ExperimentConfig::steps_per_observation() const {
  return steps_total() / observations;
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  ExperimentConfig cfg;

  using Handler = std::function<void(const std::string&, const LineRef&)>;
  const std::map<std::string, Handler> handlers = {
      {"eps_list",
       [&](const std::string& v, const LineRef& at) {
         cfg.eps_list = parse_double_list(v, at);
       }},
      {"n_modes",
       [&](const std::string& v, const LineRef& at) {
         cfg.n_modes = static_cast<int>(parse_int(v, at));
       }},
      {"t_final",
       [&](const std::string& v, const LineRef& at) {
         cfg.t_final = parse_double(v, at);
       }},
      {"h",
       [&](const std::string& v, const LineRef& at) {
         cfg.h = parse_double(v, at);
       }},
      {"replicas",
       [&](const std::string& v, const LineRef& at) {
         cfg.replicas = static_cast<int>(parse_int(v, at));
       }},
      {"observations",
       [&](const std::string& v, const LineRef& at) {
         cfg.observations = static_cast<int>(parse_int(v, at));
       }},
      {"noise",
       [&](const std::string& v, const LineRef& at) {
         cfg.noise = parse_noise_kind(v, at);
       }},
      {"noise_gamma",
       [&](const std::string& v, const LineRef& at) {
         cfg.noise_gamma = parse_double(v, at);
       }},
      {"f",
       [&](const std::string& v, const LineRef& at) {
         parse_nonlinearity(v, cfg.f, at);
       }},
      {"f_c",
       [&](const std::string& v, const LineRef& at) {
         cfg.f.c = parse_double(v, at);
       }},
      {"u0",
       [&](const std::string& v, const LineRef& at) {
         cfg.u0 = parse_double_list(v, at);
       }},
      {"v0",
       [&](const std::string& v, const LineRef& at) {
         cfg.v0 = parse_double_list(v, at);
       }},
      {"functional",
       [&](const std::string& v, const LineRef& at) {
         cfg.functional = parse_functional_kind(v, at);
       }},
      {"functional_w",
       [&](const std::string& v, const LineRef& at) {
         cfg.functional_w = parse_double_list(v, at);
       }},
      {"p_moment",
       [&](const std::string& v, const LineRef& at) {
         cfg.p_moment = parse_double(v, at);
       }},
      {"seed",
       [&](const std::string& v, const LineRef& at) {
         cfg.seed = parse_u64(v, at);
       }},
      {"table_eps",
       [&](const std::string& v, const LineRef& at) {
         cfg.table_eps = parse_double_list(v, at);
       }},
      {"table_t",
       [&](const std::string& v, const LineRef& at) {
         cfg.table_t = parse_double_list(v, at);
       }},
      {"table_modes",
       [&](const std::string& v, const LineRef& at) {
         cfg.table_modes = parse_int_list(v, at);
       }},
      {"sim_replica",
       [&](const std::string& v, const LineRef& at) {
         cfg.sim_replica = parse_u64(v, at);
       }},
  };
  // Short aliases matching the notation used throughout the reports.
  const std::map<std::string, std::string> aliases = {
      {"m", "replicas"}, {"n", "n_modes"},      {"t", "t_final"},
      {"p", "p_moment"}, {"gamma", "noise_gamma"}};

  std::set<std::string> seen;
  const auto apply = [&](const std::string& assignment, const LineRef& at) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
      at.fail("expected 'key = value', got '" + assignment + "'");
    std::string key = lower_key(trim(assignment.substr(0, eq)));
    if (key.empty()) at.fail("missing key before '='");
    const auto alias = aliases.find(key);
    if (alias != aliases.end()) key = alias->second;
    const auto handler = handlers.find(key);
    if (handler == handlers.end()) at.fail("unknown key '" + key + "'");
    if (!seen.insert(key).second) at.fail("duplicate key '" + key + "'");
    handler->second(assignment.substr(eq + 1), at);
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const LineRef at{origin, line_no};
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (trim(raw).empty()) continue;
    // A line may carry several assignments: commas outside brackets start a
    // new one when the next segment contains '=', and otherwise continue a
    // bare (unbracketed) list value.
    std::vector<std::string> assignments;
    int depth = 0;
    std::string current;
    for (char c : raw) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ',' && depth == 0) {
        assignments.push_back(current);
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    assignments.push_back(current);
    std::vector<std::string> merged;
    for (const std::string& seg : assignments) {
      if (!merged.empty() && seg.find('=') == std::string::npos)
        merged.back() += "," + seg;
      else
        merged.push_back(seg);
    }
    for (const std::string& assignment : merged) apply(trim(assignment), at);
  }

  validate(cfg, origin);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  if (path.empty()) {
    ExperimentConfig cfg;
    validate(cfg, "<defaults>");
    return cfg;
  }
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num_list(const std::vector<double>& xs, bool trim_zeros) {
  std::size_t n = xs.size();
  if (trim_zeros)
    while (n > 0 && xs[n - 1] == 0.0) --n;
  std::string out = "[";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ", ";
    out += num(xs[i]);
  }
  return out + "]";
}

std::string int_list(const std::vector<int>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

}  // namespace

std::string noise_kind_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::white: return "white";
    case NoiseKind::power: return "power";
    case NoiseKind::trace: return "trace";
  }
  return "?";
}

std::string nonlin_kind_name(NonlinKind k) {
  switch (k) {
    case NonlinKind::zero: return "zero";
    case NonlinKind::linear: return "linear";
    case NonlinKind::nemytskii_sine: return "nemytskii-sine";
  }
  return "?";
}

std::string functional_kind_name(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::cos_pairing: return "cos-pairing";
    case FunctionalKind::gauss_norm: return "gauss-norm";
    case FunctionalKind::linear_pairing: return "linear-pairing";
  }
  return "?";
}

std::string canonical_config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "eps_list = " << num_list(cfg.eps_list, false) << "\n";
  out << "n_modes = " << cfg.n_modes << "\n";
  out << "t_final = " << num(cfg.t_final) << "\n";
  out << "h = " << num(cfg.h) << "\n";
  out << "replicas = " << cfg.replicas << "\n";
  out << "observations = " << cfg.observations << "\n";
  out << "noise = " << noise_kind_name(cfg.noise) << "\n";
  out << "noise_gamma = " << num(cfg.noise_gamma) << "\n";
  out << "f = " << nonlin_kind_name(cfg.f.kind) << "(" << num(cfg.f.c) << ")\n";
  // Trailing zero coefficients are synonymous with absent ones; canonical
  // form drops them so padding never perturbs the digest.
  out << "u0 = " << num_list(cfg.u0, true) << "\n";
  out << "v0 = " << num_list(cfg.v0, true) << "\n";
  out << "functional = " << functional_kind_name(cfg.functional) << "\n";
  out << "functional_w = " << num_list(cfg.functional_w, true) << "\n";
  out << "p_moment = " << num(cfg.p_moment) << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "table_eps = " << num_list(cfg.table_eps, false) << "\n";
  out << "table_t = " << num_list(cfg.table_t, false) << "\n";
  out << "table_modes = " << int_list(cfg.table_modes) << "\n";
  out << "sim_replica = " << cfg.sim_replica << "\n";
  return out.str();
}

std::string config_digest(const ExperimentConfig& cfg) {
  const std::string text = canonical_config_text(cfg);
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return buf;
}

}  // namespace skr
