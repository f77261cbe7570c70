#pragma once

#include "wetting/free_energy.hpp"
#include "wetting/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace wetting {

/// (1/|window|) E over boundary and disorder of log Z, with the boundary drawn
/// from the free field at height params.boundary.height (a lower bound on the
/// free energy). log Z per replica comes from the exact oracle when the box has
/// at most three interior sites, otherwise from log_Z_path_TI with `inner`.
/// Needs a finite K and a free-field boundary.
EstimateRecord superadditive_lower_bound(const ModelParams& params, std::uint64_t replicas,
                                         const McmcSpec& inner, std::uint64_t seed);

struct ScalingSimulation {
  int side = 2;
  double beta = 0.0;
  std::uint64_t replicas = 200;
  McmcSpec inner{};
  std::uint64_t seed = 0;
};

struct ScalingRow {
  double k;         ///< h = e^{-k}
  double h;
  double analytic;  ///< -log(explicit bound) / (log 1/h)^2
  double jensen;    ///< same exponent for the numerically optimized Jensen bound
  double log_predicted; ///< log of exp(-(sigma^2/2)(log 1/h)^2)
  std::optional<double> simulated;    ///< superadditive bound at u = sigma^2 log(1/h)
  std::optional<double> simulated_se;
  std::optional<double> simulated_exponent; ///< -log(bound)/(log 1/h)^2 when resolved
  bool resolved = false; ///< simulated bound exceeds 2 SE
};

struct ScalingTable {
  double sigma_sq;
  double k_wall;
  std::vector<ScalingRow> rows;
  /// Largest h on the grid whose simulated bound is not resolved (none when
  /// every simulated point is resolved or no simulation ran).
  std::optional<double> unresolved_below_h;
};

/// Analytic and (optionally) simulated columns; the two are never blended.
ScalingTable scaling_probe(double k_wall, std::span<const double> k_list, double sigma_sq,
                           const std::optional<ScalingSimulation>& simulation = std::nullopt);

} // namespace wetting
