#pragma once

#include <string>
#include <vector>

#include "skrates/analysis.hpp"
#include "skrates/dynamics.hpp"
#include "skrates/experiments.hpp"
#include "skrates/lemma_checks.hpp"

namespace skr {

// All emitters produce fully deterministic bytes for a given (config, seed):
// no timestamps, no locale, shortest round-trip float formatting. The config
// digest rides in a leading comment so artifacts stay traceable to their
// exact configuration.

std::string format_double(double x);  // shortest representation, round-trips

// type,eps,error,ci_halfwidth,n_samples,noise_dominated; the fit is appended
// as a footer row: fit,<slope>,<slope_stderr>,<intercept>,,
std::string error_curve_csv(const ErrorCurve& curve, const std::string& digest);

// t,mode,u_eps,v_eps,u_heat
std::string path_csv(const CoupledPath& path, const std::string& digest);

// eps,lambda,t,f10,f01,g10,g01
std::string propagator_table_csv(const std::vector<PropagatorRow>& rows,
                                 const std::string& digest);

// lemma,eps,lambda,t,alpha,delta,rho,measured,shape,ratio
std::string lemma_csv(const LemmaReport& report, const std::string& digest);

// Companion gnuplot script for an error-curve CSV.
std::string gnuplot_script(const ErrorCurve& curve, const std::string& csv_name);

void write_file(const std::string& path, const std::string& content);

// Extracts the digest comment ("# digest=<hex>") from an artifact; empty
// string if absent.
std::string read_embedded_digest(const std::string& path);

}  // namespace skr
