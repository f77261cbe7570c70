#include "wetting/free_energy.hpp"

#include "wetting/errors.hpp"
#include "wetting/stats.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace wetting {

std::uint64_t replica_disorder_seed(const ModelParams& params, std::uint64_t r) {
  return derive_seed(params.disorder_seed, {static_cast<std::int64_t>(r)});
}

FieldConfig replica_boundary(const ModelParams& params, std::shared_ptr<const BoxLattice> lattice,
                             std::uint64_t seed, std::uint64_t r) {
  Rng rng(derive_seed(seed, {static_cast<std::int64_t>(r), 11}));
  return make_boundary(params, std::move(lattice), &rng);
}

namespace {

std::uint64_t chain_seed(std::uint64_t seed, std::uint64_t r, std::int64_t tag = 0) {
  return derive_seed(seed, {static_cast<std::int64_t>(r), 12, tag});
}

FieldConfig start_field(const ModelParams& params, FieldConfig boundary, const McmcSpec& mcmc) {
  const double start = std::max(params.boundary.height, 0.0) + mcmc.initial_height;
  for (SiteId s : boundary.lattice().interior_sites())
    boundary[s] = start;
  return boundary;
}

void check_mcmc(const McmcSpec& mcmc) {
  if (mcmc.samples == 0 || mcmc.thinning == 0 || mcmc.replicas == 0)
    throw DomainError("mcmc samples, thinning and replicas must be >= 1");
}

} // namespace

double contact_fraction(const FieldConfig& field, double width) {
  const BoxLattice& lat = field.lattice();
  std::size_t hits = 0;
  for (SiteId s : lat.energy_window_sites())
    hits += (field[s] >= 0.0 && field[s] <= width) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(lat.energy_window_count());
}

namespace {

// Contact-fraction series of replica r; the chain seed depends on (seed, r)
// only, so every h sees the same random numbers.
std::vector<double> contact_series(const ModelParams& params, std::shared_ptr<const BoxLattice> lat,
                                   const McmcSpec& mcmc, std::uint64_t seed, std::uint64_t r) {
  ModelParams pr = params;
  pr.disorder_seed = replica_disorder_seed(params, r);
  GibbsChain chain(pr, start_field(pr, replica_boundary(pr, lat, seed, r), mcmc), chain_seed(seed, r));
  chain.run(mcmc.burn_in);
  std::vector<double> series;
  series.reserve(mcmc.samples);
  for (std::uint64_t k = 0; k < mcmc.samples; ++k) {
    chain.run(mcmc.thinning);
    series.push_back(contact_fraction(chain.field(), pr.window.width));
  }
  return series;
}

} // namespace

EstimateRecord contact_density(const ModelParams& params, const McmcSpec& mcmc,
                               std::uint64_t seed) {
  params.validate();
  check_mcmc(mcmc);
  auto lat = params.make_lattice();
  ReplicaAccumulator acc;
  for (std::uint64_t r = 0; r < mcmc.replicas; ++r)
    acc.add_replica(contact_series(params, lat, mcmc, seed, r));
  const auto s = acc.summary();
  EstimateRecord rec;
  rec.method = "contact_density";
  rec.value = s.mean;
  rec.std_error = s.std_error;
  rec.n_samples = s.samples;
  rec.replicas = s.replicas;
  rec.seed = seed;
  rec.params = params;
  return rec;
}

FreeEnergyCurve free_energy_TI(const ModelParams& params, std::span<const double> h_grid,
                               double h_anchor, const McmcSpec& mcmc, std::uint64_t seed,
                               double anchor_value) {
  params.validate();
  if (h_grid.empty())
    throw DomainError("free_energy_TI needs a non-empty h grid");
  std::vector<double> hs(h_grid.begin(), h_grid.end());
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  if (h_anchor > hs.front())
    throw DomainError("h_anchor must not exceed the smallest grid value");
  if (h_anchor < hs.front())
    hs.insert(hs.begin(), h_anchor);

  FreeEnergyCurve curve;
  curve.params = params;
  curve.mcmc = mcmc;
  curve.seed = seed;
  curve.h_anchor = h_anchor;
  curve.anchor_value = anchor_value;
  curve.h = hs;
  check_mcmc(mcmc);
  auto lat = params.make_lattice();
  // series[i][r]: contact fractions at hs[i] along replica r.
  std::vector<std::vector<std::vector<double>>> series(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    ModelParams p = params;
    p.h = hs[i];
    ReplicaAccumulator acc;
    for (std::uint64_t r = 0; r < mcmc.replicas; ++r) {
      series[i].push_back(contact_series(p, lat, mcmc, seed, r));
      acc.add_replica(series[i].back());
    }
    const auto s = acc.summary();
    curve.contact.push_back(s.mean);
    curve.contact_se.push_back(s.std_error);
  }

  // Trapezoid. The grid points share replicas and random numbers, so the error
  // comes from the weighted sum of the series taken replica by replica.
  curve.f.push_back(anchor_value);
  curve.f_se.push_back(0.0);
  std::vector<double> weight(hs.size(), 0.0);
  std::vector<double> combined(mcmc.samples);
  for (std::size_t i = 1; i < hs.size(); ++i) {
    const double dh = hs[i] - hs[i - 1];
    weight[i - 1] += 0.5 * dh;
    weight[i] += 0.5 * dh;
    ReplicaAccumulator acc;
    for (std::uint64_t r = 0; r < mcmc.replicas; ++r) {
      std::fill(combined.begin(), combined.end(), 0.0);
      for (std::size_t j = 0; j <= i; ++j)
        for (std::size_t t = 0; t < combined.size(); ++t)
          combined[t] += weight[j] * series[j][r][t];
      acc.add_replica(combined);
    }
    const auto s = acc.summary();
    curve.f.push_back(anchor_value + s.mean);
    curve.f_se.push_back(s.std_error);
  }

  if (curve.contact.front() >= 1e-3)
    curve.flags.push_back("anchor_contact_density_not_below_1e-3");
  for (std::size_t i = 1; i < hs.size(); ++i) {
    const double drop = curve.contact[i - 1] - curve.contact[i];
    const double se = std::hypot(curve.contact_se[i - 1], curve.contact_se[i]);
    if (drop > 3.0 * se && drop > 0.0)
      curve.flags.push_back("contact_density_decreases_at_h=" + std::to_string(hs[i]));
  }
  return curve;
}

PathEstimate log_Z_path_TI(const ModelParams& params, const FieldConfig& boundary,
                           std::span<const double> rewards, const McmcSpec& mcmc,
                           std::uint64_t seed) {
  params.validate();
  check_mcmc(mcmc);
  if (params.wall.is_hard())
    throw DomainError("the reward/wall path needs a finite K");
  const BoxLattice& lat = boundary.lattice();
  if (rewards.size() != lat.site_count())
    throw ContractViolation("one reward per lattice site required");

  using GL = boost::math::quadrature::gauss<double, 10>;
  std::vector<double> nodes;
  std::vector<double> weights;
  for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
    const double x = GL::abscissa()[i];
    const double w = GL::weights()[i];
    nodes.push_back(0.5 * (1.0 + x));
    weights.push_back(0.5 * w);
    if (x != 0.0) {
      nodes.push_back(0.5 * (1.0 - x));
      weights.push_back(0.5 * w);
    }
  }

  const double k = params.wall.value();
  const double a = params.window.width;
  PathEstimate out{0.0, 0.0, 0};
  double var = 0.0;
  std::vector<double> series;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double t = nodes[i];
    ModelParams pt = params;
    pt.wall = WallStrength::soft(t * k);
    std::vector<double> rt(rewards.begin(), rewards.end());
    for (double& v : rt)
      v *= t;
    GibbsChain chain(pt, start_field(params, boundary, mcmc), std::move(rt),
                     chain_seed(seed, 0, static_cast<std::int64_t>(i)));
    chain.run(mcmc.burn_in);
    series.clear();
    for (std::uint64_t j = 0; j < mcmc.samples; ++j) {
      chain.run(mcmc.thinning);
      double e = 0.0;
      for (SiteId s : lat.energy_window_sites()) {
        const double phi = chain.field()[s];
        if (phi < 0.0)
          e -= k;
        else if (phi <= a)
          e += rewards[s];
      }
      series.push_back(e);
    }
    RunningStats st;
    for (double v : series)
      st.add(v);
    out.value += weights[i] * st.mean();
    var += weights[i] * weights[i] * batch_means_variance(series);
    out.n_samples += series.size();
  }
  out.std_error = std::sqrt(var);
  return out;
}

} // namespace wetting
