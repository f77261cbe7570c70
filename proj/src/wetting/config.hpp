#pragma once

#include "wetting/model.hpp"
#include "wetting/sampler.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wetting {

/// Knobs used by individual suites; every one has a default.
struct SuiteOptions {
  std::uint64_t coupling_sweeps = 10000;
  std::vector<double> t_list{0.5, 1.0, 1.5, 2.0, 3.0, 5.0};
  std::vector<double> k_list{6, 8, 10, 12, 14, 16, 18, 20};
  std::uint64_t q_samples = 4000;
  std::uint64_t superadd_replicas = 200;
  std::uint64_t moment_replicas = 1000;
  double ti_step = 0.1;
  double h_anchor = -2.0;
};

/// Everything a run needs. Produced by parse_config; all fields validated.
struct RunConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  ModelParams model;
  std::vector<double> h_list;
  std::vector<double> k_wall_list; ///< +inf for the hard wall
  std::vector<int> n_list;
  std::vector<double> beta_list;
  McmcSpec mcmc;
  std::uint64_t sweeps = 2000; ///< production sweeps per chain; samples = sweeps / thinning
  SuiteOptions suite;
};

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<std::string> suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
};

/// Parses the flat key = value format with [model], [grids], [mcmc] and
/// [suite] sections. Throws ConfigError listing every problem found.
RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});
RunConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

/// Checks that an already-built config is runnable; empty when fine.
std::vector<std::string> config_violations(const RunConfig& config);

/// Shortest round-trip decimal text; "inf" and "-inf" for infinities.
std::string format_number(double x);
std::string format_list(const std::vector<double>& xs);

/// Canonical key/value echo of the resolved config (for the manifest).
std::map<std::string, std::string> describe(const RunConfig& config);

} // namespace wetting
