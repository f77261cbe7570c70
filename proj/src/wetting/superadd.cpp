#include "wetting/superadd.hpp"

#include "wetting/asymptotics.hpp"
#include "wetting/errors.hpp"
#include "wetting/exact.hpp"
#include "wetting/stats.hpp"

#include <cmath>

namespace wetting {

EstimateRecord superadditive_lower_bound(const ModelParams& params, std::uint64_t replicas,
                                         const McmcSpec& inner, std::uint64_t seed) {
  params.validate();
  if (params.wall.is_hard())
    throw DomainError("the superadditive bound is estimated for finite K only");
  if (params.boundary.kind != BoundaryKind::free_field)
    throw DomainError("the superadditive bound needs a free-field boundary");
  if (replicas < 2)
    throw DomainError("the superadditive bound needs at least two replicas");

  auto lat = params.make_lattice();
  const bool exact = lat->interior_count() <= kExactMaxInterior;
  const double window = static_cast<double>(lat->energy_window_count());
  RunningStats per_replica;
  std::uint64_t samples = 0;
  for (std::uint64_t r = 0; r < replicas; ++r) {
    const FieldConfig boundary = replica_boundary(params, lat, seed, r);
    const DisorderField env(params.law, replica_disorder_seed(params, r));
    const auto rewards = site_rewards(params, *lat, env);
    double log_z;
    if (exact) {
      log_z = exact_log_Z_small(params, boundary, rewards);
    } else {
      const auto est =
          log_Z_path_TI(params, boundary, rewards, inner, derive_seed(seed, {static_cast<std::int64_t>(r), 31}));
      log_z = est.value;
      samples += est.n_samples;
    }
    per_replica.add(log_z / window);
  }
  EstimateRecord rec;
  rec.method = exact ? "superadd_exact" : "superadd_path_ti";
  rec.value = per_replica.mean();
  rec.std_error = per_replica.std_error();
  rec.n_samples = exact ? replicas : samples;
  rec.replicas = replicas;
  rec.seed = seed;
  rec.params = params;
  return rec;
}

ScalingTable scaling_probe(double k_wall, std::span<const double> k_list, double sigma_sq,
                           const std::optional<ScalingSimulation>& simulation) {
  if (!(sigma_sq > 0.0))
    throw DomainError("sigma^2 must be positive");
  const double sigma = std::sqrt(sigma_sq);
  ScalingTable table;
  table.sigma_sq = sigma_sq;
  table.k_wall = k_wall;
  for (double k : k_list) {
    if (!(k > 0.0))
      throw DomainError("scaling_probe needs k > 0 (h = e^-k < 1)");
    ScalingRow row{};
    row.k = k;
    row.h = std::exp(-k);
    row.analytic = explicit_bound_exponent(row.h, k_wall, sigma);
    const auto opt = jensen_optimum(row.h, k_wall, sigma);
    row.jensen = opt.value > 0.0 ? -std::log(opt.value) / (k * k) : kInf;
    row.log_predicted = log_predicted_free_energy(row.h, sigma_sq);
    if (simulation) {
      ModelParams p;
      p.dim = 3;
      p.side = simulation->side;
      p.beta = simulation->beta;
      p.h = row.h;
      p.wall = WallStrength::soft(k_wall);
      p.boundary = {BoundaryKind::free_field, sigma_sq * k, 0};
      p.disorder_seed = simulation->seed;
      const auto rec = superadditive_lower_bound(p, simulation->replicas, simulation->inner,
                                                 derive_seed(simulation->seed, {static_cast<std::int64_t>(k * 1000)}));
      row.simulated = rec.value;
      row.simulated_se = rec.std_error;
      row.resolved = rec.value > 2.0 * rec.std_error;
      if (row.resolved)
        row.simulated_exponent = -std::log(rec.value) / (k * k);
      else if (!table.unresolved_below_h || row.h > *table.unresolved_below_h)
        table.unresolved_below_h = row.h;
    }
    table.rows.push_back(row);
  }
  return table;
}

} // namespace wetting
