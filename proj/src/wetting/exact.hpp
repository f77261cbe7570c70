#pragma once

#include "wetting/disorder.hpp"
#include "wetting/gaussian_field.hpp"
#include "wetting/model.hpp"

#include <span>

namespace wetting {

inline constexpr std::size_t kExactMaxInterior = 3;

/// log Z for a box with at most three interior sites, by closed form (one
/// site) or nested adaptive quadrature over conditional Gaussians (two or
/// three sites), split at 0 and a. `boundary` supplies the fixed values and
/// `rewards` the per-site rewards (see site_rewards).
double exact_log_Z_small(const ModelParams& params, const FieldConfig& boundary,
                         std::span<const double> rewards);
double exact_log_Z_small(const ModelParams& params, const FieldConfig& boundary,
                         const DisorderField& disorder);
/// Constant boundary from `params`, disorder from params.disorder_seed.
double exact_log_Z_small(const ModelParams& params);

} // namespace wetting
