#pragma once

#include "wetting/config.hpp"
#include "wetting/free_energy.hpp"
#include "wetting/reduced.hpp"
#include "wetting/sampler.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wetting {

struct ResultRow {
  std::string experiment;
  int d = 0;
  int N = 0;
  double beta = 0.0;
  double h = 0.0;
  double K = 0.0;
  std::string law;
  std::uint64_t seed = 0;
  std::string method;
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t replicas = 0;
  double wall_seconds = 0.0;
};

struct SuiteInfo {
  std::string_view name;
  std::string_view description;
};
const std::vector<SuiteInfo>& suite_list();
bool is_known_suite(std::string_view name);
/// "oracle, coupling, ..." for error messages.
std::string suite_name_list();

/// Named numbers that do not fit the CSV layout; written to the manifest.
struct DetailRecord {
  std::string label;
  std::vector<std::pair<std::string, double>> values;
};

struct SuiteOutcome {
  std::vector<ResultRow> rows;
  std::vector<DetailRecord> details;
  /// Broken invariants; a non-empty list makes the run exit nonzero.
  std::vector<std::string> failures;
  /// Informational flags (non-monotone contact densities, unresolved points...).
  std::vector<std::string> notes;
};

/// Runs the suite named by config.experiment.
SuiteOutcome run_suite(const RunConfig& config);

// ---------------------------------------------------------------------------
// Building blocks shared with the acceptance checks
// ---------------------------------------------------------------------------

/// One (beta, h, K) point of the single-interior-site comparison between the
/// Monte Carlo estimators and the quadrature oracle, averaged over the same
/// disorder replicas on both sides.
struct OraclePoint {
  double beta, h, K;
  double f_exact, f_ti, f_ti_se;
  double contact_exact, contact_mc, contact_se;
  double q_exact, q_mc, q_se;
  double wall_gap;   ///< E[log Z_K - log Z_inf], by quadrature over the free site's disorder
  double kgap_bound; ///< |window| K_gap
  std::uint64_t n_samples, replicas;
  double wall_seconds;
};

struct OracleSpec {
  std::vector<double> betas{0.0, 0.5, 1.0};
  std::vector<double> hs{-1.0, 0.0, 1.0};
  std::vector<double> ks{1.0, 3.0, kInf};
  DisorderLaw law{};
  double boundary_height = 1.5;
  McmcSpec mcmc{.burn_in = 20, .thinning = 1, .samples = 4000, .replicas = 16};
  double ti_span = 1.0;
  double ti_step = 0.1;
  ReducedQSpec q{};
};

std::vector<OraclePoint> oracle_grid(const OracleSpec& spec, std::uint64_t seed);

/// Agreement of a Monte Carlo value with an oracle: |mc - exact| <= 4 se plus
/// a floor of 1e-12 (1 + |exact|) for estimators that are exact by construction.
bool within_4se(double mc, double exact, double se);

struct CouplingRun {
  std::uint64_t sweeps_done;
  std::uint64_t violations;
  std::string message;
  double mean_gap; ///< average of upper - lower over the common sites at the end
};
/// Two chains on the box of `params` sharing the disorder, the lower one started
/// (and fixed on the boundary) at upper - 1. Stops at the first violation.
CouplingRun coupling_run(const ModelParams& params, std::uint64_t sweeps, std::uint64_t seed);

} // namespace wetting
