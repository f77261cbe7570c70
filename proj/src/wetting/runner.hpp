#pragma once

#include "wetting/config.hpp"
#include "wetting/suites.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace wetting {

inline constexpr const char* kResultsHeader =
    "experiment,d,N,beta,h,K,law,seed,method,value,std_error,n_samples,replicas,wall_seconds";

/// Canonical order: experiment, method, d, N, beta, h, K, law, seed, then value.
void sort_rows(std::vector<ResultRow>& rows);
std::string results_csv(std::vector<ResultRow> rows);
std::string manifest_json(const RunConfig& config, const SuiteOutcome& outcome, double wall_seconds);

struct RunReport {
  int exit_code = 0; ///< 0 ok, 1 when an invariant failed
  std::string results_path;
  std::string manifest_path;
  std::vector<std::string> failures;
};

/// Runs the configured suite, writes results.csv and manifest.json into
/// config.output_dir (created if missing) and logs failures and notes to `log`.
RunReport run(const RunConfig& config, std::ostream& log);

} // namespace wetting
