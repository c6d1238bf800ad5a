// Command-line front end: parses a config, runs one experiment subcommand,
// and writes CSV artifacts plus a human-readable report. Every artifact
// embeds the config digest; all CSV bytes are independent of --workers.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skrates/config.hpp"
#include "skrates/csv_io.hpp"
#include "skrates/errors.hpp"
#include "skrates/experiments.hpp"
#include "skrates/runner.hpp"
#include "skrates/version.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  int workers = 0;  // 0 = resolve from SKRATES_WORKERS / hardware
  bool gnuplot = false;
  bool check_digest = false;
  std::string lemma;
};

std::string underscored(std::string s) {
  for (char& c : s)
    if (c == '-') c = '_';
  return s;
}

fs::path out_path(const Options& opt, const std::string& name) {
  return fs::path(opt.out) / name;
}

void emit(const Options& opt, const std::string& name,
          const std::string& content) {
  skr::write_file(out_path(opt, name).string(), content);
  std::cout << "wrote " << out_path(opt, name).string() << "\n";
}

void emit_manifest(const Options& opt, const std::string& subcommand,
                   const skr::ExperimentConfig& cfg, int workers,
                   double seconds) {
  std::ostringstream out;
  out << "tool = skrates " << skr::kVersion << "\n";
  out << "subcommand = " << subcommand << "\n";
  out << "digest = " << skr::config_digest(cfg) << "\n";
  out << "workers = " << workers << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  out << "wall_clock_seconds = " << buf << "\n";
  out << "\n# resolved configuration\n" << skr::canonical_config_text(cfg);
  emit(opt, "run_manifest.txt", out.str());
}

// --check-digest: instead of running, verify that every CSV artifact in the
// output directory was produced by exactly this configuration.
int verify_digests(const Options& opt, const skr::ExperimentConfig& cfg) {
  const std::string expect = skr::config_digest(cfg);
  if (!fs::is_directory(opt.out))
    throw skr::ValidationError("not a directory: " + opt.out);
  int checked = 0, mismatched = 0;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.out))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& p : files) {
    const std::string found = skr::read_embedded_digest(p.string());
    ++checked;
    const bool ok = found == expect;
    if (!ok) ++mismatched;
    std::cout << (ok ? "ok       " : "MISMATCH ") << p.string();
    if (!ok)
      std::cout << " (embedded " << (found.empty() ? "<none>" : found)
                << ", config " << expect << ")";
    std::cout << "\n";
  }
  if (checked == 0)
    throw skr::ValidationError("no CSV artifacts found in " + opt.out);
  std::cout << checked << " artifact(s) checked, " << mismatched
            << " mismatch(es)\n";
  return mismatched == 0 ? 0 : 2;
}

int run_subcommand(const std::string& name, const Options& opt) {
  const skr::ExperimentConfig cfg = skr::parse_config_file(opt.config);
  if (opt.check_digest) return verify_digests(opt, cfg);

  const std::string digest = skr::config_digest(cfg);
  fs::create_directories(opt.out);
  const auto started = std::chrono::steady_clock::now();
  int workers = 1;

  if (name == "strong-rate" || name == "weak-rate") {
    workers = skr::resolve_workers(opt.workers);
    const skr::RateResult res = name == "strong-rate"
                                    ? skr::run_strong_rate(cfg, workers)
                                    : skr::run_weak_rate(cfg, workers);
    const std::string base = underscored(name);
    emit(opt, base + ".csv", skr::error_curve_csv(res.curve, digest));
    emit(opt, base + "_report.txt", res.report);
    if (opt.gnuplot)
      emit(opt, base + ".gp", skr::gnuplot_script(res.curve, base + ".csv"));
    std::cout << "\n" << res.report;
  } else if (name == "simulate") {
    workers = skr::resolve_workers(opt.workers);
    const auto paths = skr::run_simulate(cfg, workers);
    for (const skr::CoupledPath& p : paths)
      emit(opt, "path_eps" + skr::format_double(p.eps) + ".csv",
           skr::path_csv(p, digest));
  } else if (name == "propagator-table") {
    emit(opt, "propagator_table.csv",
         skr::propagator_table_csv(skr::run_propagator_table(cfg), digest));
  } else {  // lemma-check
    std::string text = opt.lemma;
    const std::string prefix = "lemma=";
    if (text.rfind(prefix, 0) == 0) text = text.substr(prefix.size());
    if (text.empty())
      throw skr::ValidationError(
          "lemma-check needs a bound name, e.g. `lemma-check contraction` "
          "(aliases: 4.1, 4.2, 4.3, 4.5, 4.6)");
    const auto id = skr::parse_lemma_id(text);
    if (!id)
      throw skr::ValidationError("unknown bound '" + text +
                                 "' (contraction, state-smoothing, "
                                 "position-smoothing, mode-decay, heat-limit)");
    const skr::LemmaResult res = skr::run_lemma_check(*id);
    const std::string base = "lemma_" + underscored(skr::lemma_name(*id));
    emit(opt, base + ".csv", skr::lemma_csv(res.report, digest));
    emit(opt, base + "_report.txt", res.report_text);
    std::cout << "\n" << res.report_text;
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  emit_manifest(opt, name, cfg, workers, seconds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "skrates: strong/weak convergence experiments for the small-mass limit "
      "of a damped stochastic wave equation, coupled to its limiting "
      "stochastic heat equation on a shared noise path"};
  app.set_version_flag("--version", std::string("skrates ") + skr::kVersion);
  app.require_subcommand(0, 1);

  Options opt;
  const auto add_common = [&](CLI::App* sub, bool plots) {
    sub->add_option("--config", opt.config,
                    "experiment config file (omit for defaults)");
    sub->add_option("--workers", opt.workers,
                    "worker threads (default: $SKRATES_WORKERS, else cores)");
    sub->add_option("--out", opt.out, "output directory")
        ->capture_default_str();
    if (plots)
      sub->add_flag("--gnuplot", opt.gnuplot,
                    "also emit a companion gnuplot script");
    sub->add_flag("--check-digest", opt.check_digest,
                  "verify digests of existing artifacts instead of running");
  };

  add_common(app.add_subcommand(
                 "simulate", "dump one replica's coupled paths, one CSV per eps"),
             false);
  add_common(app.add_subcommand("strong-rate",
                                "strong error sweep and log-log rate fit"),
             true);
  add_common(app.add_subcommand("weak-rate",
                                "weak error sweep with the coupled estimator"),
             true);
  CLI::App* lemma = app.add_subcommand(
      "lemma-check", "scan a semigroup bound ratio over a parameter grid");
  lemma->add_option("lemma", opt.lemma,
                    "bound name or numeric alias (accepts lemma=4.1 form)");
  add_common(lemma, false);
  add_common(app.add_subcommand("propagator-table",
                                "tabulate wave propagator entries"),
             false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints message and usage hint
    return 2;
  }

  if (app.get_subcommands().empty()) {
    std::cerr << app.help() << std::endl;
    return 2;
  }

  try {
    return run_subcommand(app.get_subcommands().front()->get_name(), opt);
  } catch (const skr::ValidationError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const skr::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << std::endl;
    return 1;
  }
}
