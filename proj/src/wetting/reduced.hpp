#pragma once

#include "wetting/gaussian_field.hpp"
#include "wetting/model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace wetting {

struct ReducedQSpec {
  std::uint64_t samples = 4000; ///< conditional field draws per site
};

/// Disorder-free ingredients of the one-contact partition function under the
/// free field with a given boundary:
///   Q = P(no window site <= 1) + sum_x e^{beta omega_x - lambda + h} A_x,
///   A_x = P(delta_x = 1 and every other window site > 1).
struct ReducedQStructure {
  std::vector<SiteId> sites; ///< energy-window sites, in lattice order
  double p_none = 0.0;       ///< P(every window site > 1)
  double p_none_se = 0.0;
  std::vector<double> one_contact; ///< A_x
  std::vector<double> one_contact_se;
  std::vector<double> p_delta; ///< exact P(0 <= phi_x <= 1)
  std::vector<double> p_le1;   ///< exact P(phi_x <= 1)
  std::vector<double> p_neg;   ///< exact P(phi_x < 0)
  double height = 0.0;         ///< boundary mean u
  bool good_boundary = false;  ///< every boundary value > u / 2
  std::uint64_t n_samples = 0;
};

/// Monte Carlo over the free field: P(no window site <= 1) by the Karp-Luby
/// union estimator, A_x by sampling phi_x from its marginal on [0, 1] and the
/// rest from the exact conditional Gaussian. Needs the unit pinning band.
ReducedQStructure reduced_q_structure(const ModelParams& params, const FieldConfig& boundary,
                                      const ReducedQSpec& spec, std::uint64_t seed);

struct ReducedQ {
  double value;
  double std_error;
  bool good_boundary;
};

/// Q for one environment; `rewards` as from site_rewards.
ReducedQ reduced_Q(const ReducedQStructure& structure, std::span<const double> rewards);
ReducedQ reduced_Q(const ModelParams& params, const FieldConfig& boundary,
                   std::span<const double> rewards, const ReducedQSpec& spec, std::uint64_t seed);

struct SecondMomentReport {
  std::uint64_t replicas = 0;
  double mean_q_minus_1 = 0.0; ///< over disorder replicas
  double mean_q_minus_1_se = 0.0;
  double var_q = 0.0; ///< sample variance over disorder replicas
  double var_q_se = 0.0;
  double var_q_given_structure = 0.0; ///< e^{2h} Var(xi) sum_x A_x^2
  double var_bound = 0.0;             ///< e^{2h} Var(xi) sum_x P(delta_x = 1)^2
  double slack = 0.0;                 ///< var_bound - var_q_given_structure
  bool bound_holds = false;           ///< slack >= 0 and var_q <= var_bound + 3 SE
  double mean_lower = 0.0;            ///< (4/5) h sum P(phi<=1) - (1+h) sum P(phi<0)
  double mean_upper = 0.0;            ///< (e^h - 1) sum P(delta = 1)
  double mean_given_structure = 0.0;  ///< P_none + e^h sum A_x - 1
  bool good_boundary = false;
};

/// Var and mean of Q over `replicas` disorder draws for the fixed boundary.
SecondMomentReport second_moment_report(const ModelParams& params, const FieldConfig& boundary,
                                        const ReducedQStructure& structure,
                                        std::uint64_t replicas, std::uint64_t seed);

} // namespace wetting
