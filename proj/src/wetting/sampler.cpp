#include "wetting/sampler.hpp"

#include "wetting/errors.hpp"
#include "wetting/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace wetting {

namespace {

std::atomic<std::uint64_t> g_fallbacks{0};

double log_sum_exp3(const std::array<double, 3>& v) {
  const double mx = std::max({v[0], v[1], v[2]});
  if (mx == -kInf)
    return -kInf;
  return mx + std::log(std::exp(v[0] - mx) + std::exp(v[1] - mx) + std::exp(v[2] - mx));
}

} // namespace

std::uint64_t site_conditional_fallbacks() { return g_fallbacks.load(); }

SiteConditional::SiteConditional(double mean, double sd, double reward, const WallStrength& wall,
                                 double width)
    : m_(mean), s_(sd), a_(width), reward_(reward), wall_(wall) {
  const double za = -m_ / s_;
  const double zb = (a_ - m_) / s_;
  std::array<double, 3> lw{
      wall_.is_hard() ? -kInf : -wall_.value() + log_normal_cdf(za),
      reward_ + log_normal_mass(za, zb),
      log_normal_sf(zb),
  };
  log_norm_ = log_sum_exp3(lw);
  if (!std::isfinite(log_norm_)) {
    degenerate_ = true;
    if (g_fallbacks.fetch_add(1) == 0)
      std::cerr << "warning: site conditional weights underflowed; using deterministic "
                   "placement\n";
    return;
  }
  for (int i = 0; i < 3; ++i)
    w_[i] = std::exp(lw[i] - log_norm_);
}

double SiteConditional::quantile(double u) const {
  if (degenerate_)
    return std::clamp(m_, wall_.is_hard() ? 0.0 : -kInf, kInf);
  const double za = -m_ / s_;
  const double zb = (a_ - m_) / s_;
  const std::array<double, 4> cuts{-kInf, za, zb, kInf};
  double acc = 0.0;
  int k = 0;
  // Last component with positive weight absorbs rounding at the top end.
  int last = 2;
  while (last > 0 && w_[last] == 0.0)
    --last;
  for (; k < last; ++k) {
    if (w_[k] > 0.0 && u < acc + w_[k])
      break;
    acc += w_[k];
  }
  const double v = std::clamp((u - acc) / w_[k], 0.0, 1.0);
  return m_ + s_ * truncated_normal_quantile(cuts[k], cuts[k + 1], v);
}

double SiteConditional::cdf(double x) const {
  if (degenerate_)
    return x >= quantile(0.5) ? 1.0 : 0.0;
  const double za = -m_ / s_;
  const double zb = (a_ - m_) / s_;
  const double z = (x - m_) / s_;
  if (x < 0.0)
    return w_[0] == 0.0 ? 0.0 : w_[0] * std::exp(log_normal_cdf(z) - log_normal_cdf(za));
  if (x <= a_)
    return w_[0] + w_[1] * std::exp(log_normal_mass(za, z) - log_normal_mass(za, zb));
  return w_[0] + w_[1] + w_[2] * -std::expm1(log_normal_sf(z) - log_normal_sf(zb));
}

double SiteConditional::pdf(double x) const {
  if (degenerate_)
    return 0.0;
  const double z = (x - m_) / s_;
  const double energy = x < 0.0 ? (wall_.is_hard() ? -kInf : -wall_.value())
                        : x <= a_ ? reward_
                                  : 0.0;
  if (energy == -kInf)
    return 0.0;
  return std::exp(energy - log_norm_) * normal_pdf(z) / s_;
}

GibbsChain::GibbsChain(const ModelParams& params, FieldConfig initial, std::uint64_t rng_seed)
    : GibbsChain(params, std::move(initial), DisorderField(params.law, params.disorder_seed),
                 rng_seed) {}

GibbsChain::GibbsChain(const ModelParams& params, FieldConfig initial,
                       const DisorderField& disorder, std::uint64_t rng_seed)
    : GibbsChain(params, initial, site_rewards(params, initial.lattice(), disorder), rng_seed) {}

GibbsChain::GibbsChain(const ModelParams& params, FieldConfig initial, std::vector<double> rewards,
                       std::uint64_t rng_seed)
    : params_(params), field_(std::move(initial)), rewards_(std::move(rewards)),
      sd_(1.0 / std::sqrt(2.0 * field_.lattice().dim())), rng_(rng_seed) {
  params_.validate();
  if (rewards_.size() != field_.lattice().site_count())
    throw ContractViolation("one reward per lattice site required");
  for (double v : field_.values())
    if (!std::isfinite(v))
      throw ContractViolation("chain field must be finite everywhere");
}

SiteConditional GibbsChain::conditional(SiteId s) const {
  const BoxLattice& lat = field_.lattice();
  double sum = 0.0;
  for (SiteId y : lat.neighbors(s))
    sum += field_[y];
  return SiteConditional(sum / (2.0 * lat.dim()), sd_, rewards_[s], params_.wall,
                         params_.window.width);
}

void GibbsChain::update_site(SiteId s, double u) {
  const BoxLattice& lat = field_.lattice();
  const long f = lat.flat_id(s);
  double sum = 0.0;
  for (SiteId y : lat.interior_neighbors(static_cast<std::size_t>(f)))
    sum += field_[y];
  const SiteConditional c(sum / (2.0 * lat.dim()), sd_, rewards_[s], params_.wall,
                          params_.window.width);
  field_[s] = c.quantile(u);
}

void GibbsChain::sweep() {
  for (SiteId s : field_.lattice().interior_sites())
    update_site(s, rng_.uniform());
  ++sweeps_;
}

CoupledPair::CoupledPair(GibbsChain upper, GibbsChain lower, std::uint64_t rng_seed)
    : upper_(std::move(upper)), lower_(std::move(lower)), rng_(rng_seed) {
  const BoxLattice& ul = upper_.lattice();
  const BoxLattice& ll = lower_.lattice();
  if (ul.dim() != ll.dim())
    throw ContractViolation("coupled chains must share the dimension");
  const ModelParams& a = upper_.params();
  const ModelParams& b = lower_.params();
  if (a.beta != b.beta || a.h != b.h || !(a.wall == b.wall) || !(a.law == b.law) ||
      !(a.window == b.window))
    throw ContractViolation("coupled chains must share beta, h, K, law and pinning window");
  lower_to_upper_.resize(ll.site_count());
  upper_to_lower_.assign(ul.site_count(), -1);
  for (SiteId s = 0; s < ll.site_count(); ++s) {
    const Coords c = ll.coords(s);
    if (!ul.contains(c))
      throw ContractViolation("the lower chain's box must lie inside the upper chain's box");
    const SiteId t = ul.site_id(c);
    lower_to_upper_[s] = t;
    if (ll.is_interior(s)) {
      if (!ul.is_interior(t))
        throw ContractViolation("interior of the lower box must be interior to the upper box");
      if (upper_.rewards()[t] != lower_.rewards()[s])
        throw ContractViolation("coupled chains must share the disorder on the common domain");
      upper_to_lower_[t] = static_cast<long>(s);
    }
  }
  if (auto v = find_violation()) {
    std::ostringstream msg;
    msg << "coupled chains are not ordered initially at site (";
    for (std::size_t i = 0; i < v->coords.size(); ++i)
      msg << (i ? "," : "") << v->coords[i];
    msg << "): upper " << v->upper << " < lower " << v->lower;
    throw CouplingViolation(msg.str());
  }
}

std::optional<OrderViolation> CoupledPair::find_violation() const {
  const FieldConfig& uf = upper_.field();
  const FieldConfig& lf = lower_.field();
  for (SiteId s = 0; s < lf.values().size(); ++s) {
    const double hi = uf[lower_to_upper_[s]];
    const double lo = lf[s];
    if (hi < lo - kOrderTolerance)
      return OrderViolation{lower_.lattice().coords(s), hi, lo};
  }
  return std::nullopt;
}

void CoupledPair::sweep() {
  for (SiteId t : upper_.lattice().interior_sites()) {
    const double u = rng_.uniform();
    upper_.update_site(t, u);
    const long s = upper_to_lower_[t];
    if (s >= 0)
      lower_.update_site(static_cast<SiteId>(s), u);
  }
  ++sweeps_;
  if (auto v = find_violation()) {
    std::ostringstream msg;
    msg << "monotone coupling order violated after sweep " << sweeps_ << " at site (";
    for (std::size_t i = 0; i < v->coords.size(); ++i)
      msg << (i ? "," : "") << v->coords[i];
    msg << "): upper " << v->upper << " < lower " << v->lower;
    throw CouplingViolation(msg.str());
  }
}

std::vector<MarginalCdf> marginal_probe(const ModelParams& params, const Coords& site,
                                        std::span<const int> sides, std::span<const double> t_grid,
                                        const McmcSpec& spec, std::uint64_t seed) {
  if (params.origin != OriginMode::centered)
    throw DomainError("marginal_probe works on centered boxes");
  if (sides.empty() || t_grid.empty())
    throw DomainError("marginal_probe needs at least one box side and one threshold");
  if (spec.replicas == 0 || spec.samples == 0 || spec.thinning == 0)
    throw DomainError("marginal_probe needs replicas, samples and thinning >= 1");

  std::vector<MarginalCdf> out;
  for (int side : sides) {
    ModelParams p = params;
    p.side = side;
    auto lat = p.make_lattice();
    if (!lat->contains(site) || !lat->is_interior(lat->site_id(site)))
      throw DomainError("probe site must be interior to every box");
    const SiteId target = lat->site_id(site);

    std::vector<ReplicaAccumulator> acc(t_grid.size());
    for (std::uint64_t r = 0; r < spec.replicas; ++r) {
      ModelParams pr = p;
      pr.disorder_seed = derive_seed(params.disorder_seed, {static_cast<std::int64_t>(r)});
      Rng boundary_rng(derive_seed(seed, {1, static_cast<std::int64_t>(r), side}));
      FieldConfig init = make_boundary(pr, lat, &boundary_rng);
      for (SiteId s : lat->interior_sites())
        init[s] = std::max(init[s], 0.0) + spec.initial_height;
      GibbsChain chain(pr, std::move(init), derive_seed(seed, {2, static_cast<std::int64_t>(r), side}));
      chain.run(spec.burn_in);
      std::vector<std::vector<double>> series(t_grid.size());
      for (auto& s : series)
        s.reserve(spec.samples);
      for (std::uint64_t k = 0; k < spec.samples; ++k) {
        chain.run(spec.thinning);
        const double phi = chain.field()[target];
        for (std::size_t j = 0; j < t_grid.size(); ++j)
          series[j].push_back(phi <= t_grid[j] ? 1.0 : 0.0);
      }
      for (std::size_t j = 0; j < t_grid.size(); ++j)
        acc[j].add_replica(series[j]);
    }
    MarginalCdf m;
    m.side = side;
    m.t.assign(t_grid.begin(), t_grid.end());
    for (const auto& a : acc) {
      const auto sm = a.summary();
      m.cdf.push_back(sm.mean);
      m.std_error.push_back(sm.std_error);
    }
    out.push_back(std::move(m));
  }
  return out;
}

} // namespace wetting
