#include "skrates/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "skrates/errors.hpp"

namespace skr {

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string digest_line(const std::string& digest) {
  return "# digest=" + digest + "\n";
}

}  // namespace

std::string error_curve_csv(const ErrorCurve& curve,
                            const std::string& digest) {
  std::ostringstream out;
  out << digest_line(digest);
  out << "type,eps,error,ci_halfwidth,n_samples,noise_dominated\n";
  for (const ErrorEntry& e : curve.entries) {
    out << curve.type << ',' << format_double(e.eps) << ','
        << format_double(e.error) << ',' << format_double(e.ci_halfwidth)
        << ',' << e.n_samples << ',' << (e.noise_dominated ? 1 : 0) << "\n";
  }
  if (curve.fit) {
    out << "fit," << format_double(curve.fit->slope) << ','
        << format_double(curve.fit->slope_stderr) << ','
        << format_double(curve.fit->intercept) << ",,\n";
  }
  return out.str();
}

std::string path_csv(const CoupledPath& path, const std::string& digest) {
  std::ostringstream out;
  out << digest_line(digest);
  out << "t,mode,u_eps,v_eps,u_heat\n";
  const int n = path.n_modes;
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      const std::size_t slot = k * std::size_t(n) + std::size_t(i);
      out << format_double(path.times[k]) << ',' << (i + 1) << ','
          << format_double(path.u_eps[slot]) << ','
          << format_double(path.v_eps[slot]) << ','
          << format_double(path.u_heat[slot]) << "\n";
    }
  }
  return out.str();
}

std::string propagator_table_csv(const std::vector<PropagatorRow>& rows,
                                 const std::string& digest) {
  std::ostringstream out;
  out << digest_line(digest);
  out << "eps,lambda,t,f10,f01,g10,g01\n";
  for (const PropagatorRow& r : rows) {
    out << format_double(r.eps) << ',' << format_double(r.lambda) << ','
        << format_double(r.t) << ',' << format_double(r.f10) << ','
        << format_double(r.f01) << ',' << format_double(r.g10) << ','
        << format_double(r.g01) << "\n";
  }
  return out.str();
}

std::string lemma_csv(const LemmaReport& report, const std::string& digest) {
  std::ostringstream out;
  out << digest_line(digest);
  out << "lemma,eps,lambda,t,alpha,delta,rho,measured,shape,ratio\n";
  const std::string name = lemma_name(report.id);
  for (const LemmaPoint& p : report.points) {
    out << name << ',' << format_double(p.eps) << ','
        << format_double(p.lambda) << ',' << format_double(p.t) << ','
        << format_double(p.alpha) << ',' << format_double(p.delta) << ','
        << format_double(p.rho) << ',' << format_double(p.measured) << ','
        << format_double(p.shape) << ',' << format_double(p.ratio) << "\n";
  }
  return out.str();
}

std::string gnuplot_script(const ErrorCurve& curve,
                           const std::string& csv_name) {
  std::ostringstream out;
  out << "# gnuplot companion for " << csv_name << "\n";
  out << "set datafile separator \",\"\n";
  out << "set logscale xy\n";
  out << "set xlabel \"eps\"\n";
  out << "set ylabel \"" << curve.type << " error\"\n";
  out << "set key left top\n";
  if (curve.fit) {
    out << "slope = " << format_double(curve.fit->slope) << "\n";
    out << "icept = " << format_double(curve.fit->intercept) << "\n";
    out << "fitline(x) = exp(icept) * x**slope\n";
  }
  out << "plot \"" << csv_name
      << "\" using 2:(strcol(1) eq \"fit\" ? 1/0 : $3) with linespoints"
         " title \"measured\"";
  if (curve.fit)
    out << ", \\\n     fitline(x) title sprintf(\"fit slope %.3f\", slope)";
  out << "\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) throw ValidationError("write failed: " + path);
}

std::string read_embedded_digest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open: " + path);
  std::string line;
  const std::string prefix = "# digest=";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) {
      std::string d = line.substr(prefix.size());
      while (!d.empty() && (d.back() == '\r' || d.back() == ' ')) d.pop_back();
      return d;
    }
    if (!line.empty() && line[0] != '#') break;
  }
  return "";
}

}  // namespace skr
