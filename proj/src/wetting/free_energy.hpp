#pragma once

#include "wetting/model.hpp"
#include "wetting/sampler.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wetting {

/// A Monte Carlo (or deterministic) estimate with its provenance.
struct EstimateRecord {
  std::string method;
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  ModelParams params;
};

/// Disorder seed of replica r; shared by every estimator so that oracles can
/// rebuild the same environments.
std::uint64_t replica_disorder_seed(const ModelParams& params, std::uint64_t r);
/// Boundary of replica r (constant, or a fresh free-field sample).
FieldConfig replica_boundary(const ModelParams& params, std::shared_ptr<const BoxLattice> lattice,
                             std::uint64_t seed, std::uint64_t r);

/// Fraction of energy-window sites with phi in [0, a].
double contact_fraction(const FieldConfig& field, double width = 1.0);

/// Mean contact fraction over disorder replicas and Gibbs samples.
EstimateRecord contact_density(const ModelParams& params, const McmcSpec& mcmc, std::uint64_t seed);

struct FreeEnergyCurve {
  ModelParams params;
  McmcSpec mcmc;
  std::uint64_t seed = 0;
  double h_anchor = 0.0;
  double anchor_value = 0.0;
  std::vector<double> h; ///< anchor first, then the sorted grid
  std::vector<double> f;
  std::vector<double> f_se;
  std::vector<double> contact;
  std::vector<double> contact_se;
  std::vector<std::string> flags;
};

/// f(h) = anchor_value + integral of the contact density from h_anchor (trapezoid),
/// with f = log Z / |energy window|. The same disorder replicas are used at
/// every h. Flags non-monotone contact densities (beyond 3 SE) and an anchor
/// whose contact density is not below 1e-3.
FreeEnergyCurve free_energy_TI(const ModelParams& params, std::span<const double> h_grid,
                               double h_anchor, const McmcSpec& mcmc, std::uint64_t seed,
                               double anchor_value = 0.0);

/// log Z for one environment and finite K by integrating along
/// (reward, K) -> (t reward, t K), t in [0, 1], where log Z(0) = 0 exactly.
/// Gauss-Legendre in t (10 nodes).
struct PathEstimate {
  double value;
  double std_error;
  std::uint64_t n_samples;
};
PathEstimate log_Z_path_TI(const ModelParams& params, const FieldConfig& boundary,
                           std::span<const double> rewards, const McmcSpec& mcmc,
                           std::uint64_t seed);

} // namespace wetting
