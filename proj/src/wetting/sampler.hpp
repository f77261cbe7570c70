#pragma once

#include "wetting/disorder.hpp"
#include "wetting/gaussian_field.hpp"
#include "wetting/model.hpp"
#include "wetting/numerics.hpp"

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace wetting {

/// Law of one interior height given its neighbours: N(m, s^2) reweighted by
/// exp(reward * 1_[0,a] - K * 1_(-inf,0)). This is a mixture of three
/// truncated Gaussians on (-inf,0), [0,a] and (a,inf).
class SiteConditional {
public:
  SiteConditional(double mean, double sd, double reward, const WallStrength& wall,
                  double width = 1.0);

  double mean() const { return m_; }
  double sd() const { return s_; }
  /// Normalized component weights (negative, window, above).
  const std::array<double, 3>& weights() const { return w_; }
  /// log of the normalizing constant E[exp(energy)] under N(m, s^2).
  double log_normalizer() const { return log_norm_; }

  /// Exact inverse of the mixture CDF; nondecreasing in u and in m.
  double quantile(double u) const;
  double cdf(double x) const;
  double pdf(double x) const;

private:
  double m_, s_, a_;
  double reward_;
  WallStrength wall_;
  std::array<double, 3> w_{};
  double log_norm_ = 0.0;
  bool degenerate_ = false;
};

/// Times a SiteConditional fell back to deterministic placement because all
/// three weights underflowed.
std::uint64_t site_conditional_fallbacks();

/// Heat-bath chain over the interior sites in lexicographic order.
class GibbsChain {
public:
  /// `initial` fixes the boundary values and the starting interior.
  GibbsChain(const ModelParams& params, FieldConfig initial, std::uint64_t rng_seed);
  GibbsChain(const ModelParams& params, FieldConfig initial, const DisorderField& disorder,
             std::uint64_t rng_seed);
  /// Explicit per-site rewards, one per lattice site.
  GibbsChain(const ModelParams& params, FieldConfig initial, std::vector<double> rewards,
             std::uint64_t rng_seed);

  const ModelParams& params() const { return params_; }
  const BoxLattice& lattice() const { return field_.lattice(); }
  const FieldConfig& field() const { return field_; }
  std::span<const double> rewards() const { return rewards_; }
  std::uint64_t sweeps() const { return sweeps_; }

  /// Conditional law of interior site `s` given the current neighbours.
  SiteConditional conditional(SiteId s) const;
  /// Resample site `s` with the given uniform.
  void update_site(SiteId s, double u);
  void sweep();
  void run(std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i)
      sweep();
  }
  Rng& rng() { return rng_; }

private:
  ModelParams params_;
  FieldConfig field_;
  std::vector<double> rewards_;
  double sd_;
  Rng rng_;
  std::uint64_t sweeps_ = 0;
};

/// Absolute tolerance of the order check in coupled sweeps. Both chains run
/// the same floating-point formulas, so a true violation is far larger.
inline constexpr double kOrderTolerance = 1e-9;

struct OrderViolation {
  Coords coords;
  double upper;
  double lower;
};

/// Two chains driven by the same uniforms. `upper` lives on a box containing
/// the box of `lower` (absolute coordinates), or on the same box.
class CoupledPair {
public:
  CoupledPair(GibbsChain upper, GibbsChain lower, std::uint64_t rng_seed);

  const GibbsChain& upper() const { return upper_; }
  const GibbsChain& lower() const { return lower_; }

  /// First common site where upper < lower - tolerance, if any.
  std::optional<OrderViolation> find_violation() const;
  /// One coupled sweep; throws CouplingViolation naming the site if the order
  /// breaks.
  void sweep();
  std::uint64_t sweeps() const { return sweeps_; }

private:
  GibbsChain upper_;
  GibbsChain lower_;
  std::vector<SiteId> lower_to_upper_;
  std::vector<long> upper_to_lower_; // -1 when not interior to the lower box
  Rng rng_;
  std::uint64_t sweeps_ = 0;
};

struct McmcSpec {
  std::uint64_t burn_in = 200;
  std::uint64_t thinning = 5;
  std::uint64_t samples = 400; ///< recorded states per chain
  std::uint64_t replicas = 64; ///< disorder replicas
  double initial_height = 1.0; ///< starting interior height
};

struct MarginalCdf {
  int side;
  std::vector<double> t;
  std::vector<double> cdf;
  std::vector<double> std_error;
};

/// Empirical CDF of the height at `site` (absolute coordinates) for each box
/// side in `sides`. Centered boxes; disorder shared across sides.
std::vector<MarginalCdf> marginal_probe(const ModelParams& params, const Coords& site,
                                        std::span<const int> sides, std::span<const double> t_grid,
                                        const McmcSpec& spec, std::uint64_t seed);

} // namespace wetting
