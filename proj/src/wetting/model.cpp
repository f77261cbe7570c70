#include "wetting/model.hpp"

#include "wetting/errors.hpp"

#include <cmath>
#include <sstream>

namespace wetting {

WallStrength WallStrength::soft(double k) {
  if (std::isnan(k) || k < 0.0)
    throw DomainError("wall penalty K must lie in [0, inf]");
  if (k == kInf)
    return hard();
  return WallStrength(k, false);
}

std::vector<std::string> ModelParams::violations() const {
  std::vector<std::string> out;
  if (dim < 1)
    out.push_back("d must be >= 1");
  if (side < 2)
    out.push_back("N must be >= 2");
  if (!std::isfinite(beta) || beta < 0.0)
    out.push_back("beta must be a finite real >= 0");
  else if (!law.in_domain(beta))
    out.push_back("beta outside I_P of the " + std::string(law.name()) + " law");
  if (!std::isfinite(h))
    out.push_back("h must be finite");
  if (!(window.width > 0.0))
    out.push_back("pinning window width a must be > 0");
  if (!(window.scale > 0.0))
    out.push_back("pinning window scale b must be > 0");
  if (!std::isfinite(boundary.height))
    out.push_back("boundary height must be finite");
  if (boundary.margin < 0)
    out.push_back("boundary margin must be >= 0");
  return out;
}

void ModelParams::validate() const {
  const auto v = violations();
  if (v.empty())
    return;
  std::ostringstream msg;
  msg << "invalid model parameters:";
  for (const auto& s : v)
    msg << "\n  - " << s;
  throw DomainError(msg.str());
}

std::shared_ptr<const BoxLattice> ModelParams::make_lattice() const {
  return std::make_shared<const BoxLattice>(dim, side, origin);
}

double ModelParams::reward(double omega) const {
  return window.scale * (beta * omega - law.lambda(beta) + h);
}

SiteIndicators site_indicators(double phi) {
  return {phi >= 0.0 && phi <= 1.0, phi < 0.0, phi <= 1.0};
}

double generalized_indicator(double width, double scale, double phi) {
  if (!(width > 0.0))
    throw DomainError("pinning window width a must be > 0");
  if (!(scale > 0.0))
    throw DomainError("pinning window scale b must be > 0");
  return (phi >= 0.0 && phi <= width) ? scale : 0.0;
}

double site_log_weight(double reward, const WallStrength& wall, double width, double phi) {
  if (phi < 0.0)
    return wall.is_hard() ? -kInf : -wall.value();
  if (phi <= width)
    return reward;
  return 0.0;
}

std::vector<double> site_rewards(const ModelParams& params, const BoxLattice& lattice,
                                 const DisorderField& disorder) {
  std::vector<double> out(lattice.site_count(), 0.0);
  const double lam = params.law.lambda(params.beta);
  for (SiteId s = 0; s < lattice.site_count(); ++s) {
    const double omega = params.beta == 0.0 ? 0.0 : disorder.at(lattice.coords(s));
    out[s] = params.window.scale * (params.beta * omega - lam + params.h);
  }
  return out;
}

std::vector<double> site_rewards(const ModelParams& params, const BoxLattice& lattice) {
  return site_rewards(params, lattice, DisorderField(params.law, params.disorder_seed));
}

double log_weight(const ModelParams& params, const FieldConfig& field,
                  std::span<const double> rewards) {
  const BoxLattice& lat = field.lattice();
  double total = 0.0;
  for (SiteId s : lat.energy_window_sites()) {
    const double w = site_log_weight(rewards[s], params.wall, params.window.width, field[s]);
    if (w == -kInf)
      return -kInf;
    total += w;
  }
  return total;
}

double log_weight(const ModelParams& params, const FieldConfig& field,
                  const DisorderField& disorder) {
  const auto r = site_rewards(params, field.lattice(), disorder);
  return log_weight(params, field, r);
}

FieldConfig sample_free_field_boundary(std::shared_ptr<const BoxLattice> lattice, double height,
                                       int margin, Rng& rng) {
  const BoxLattice& lat = *lattice;
  const int big_side = lat.extent() - 1 + 2 * margin;
  auto big = std::make_shared<const BoxLattice>(lat.dim(), big_side, OriginMode::corner);
  GaussianSolveOptions opts;
  const GaussianSolve solve(big, opts);
  const Eigen::VectorXd eta = solve.sample_fluctuation(rng);

  FieldConfig out(lattice, height);
  Coords bc(lat.dim());
  for (SiteId s : lat.boundary_sites()) {
    const Coords c = lat.coords(s);
    for (int i = 0; i < lat.dim(); ++i)
      bc[i] = c[i] - lat.lo() + margin;
    const long f = big->flat_id(big->site_id(bc));
    out[s] = height + (f >= 0 ? eta[f] : 0.0);
  }
  return out;
}

FieldConfig make_boundary(const ModelParams& params, std::shared_ptr<const BoxLattice> lattice,
                          Rng* rng) {
  if (params.boundary.kind == BoundaryKind::constant)
    return FieldConfig(std::move(lattice), params.boundary.height);
  if (!rng)
    throw ContractViolation("free-field boundary needs a random stream");
  const int margin = params.boundary.margin > 0 ? params.boundary.margin : params.side;
  return sample_free_field_boundary(std::move(lattice), params.boundary.height, margin, *rng);
}

} // namespace wetting
