#include "wetting/exact.hpp"

#include "wetting/errors.hpp"
#include "wetting/numerics.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace wetting {

namespace {

class SmallGaussian {
public:
  SmallGaussian(const ModelParams& params, std::vector<double> rewards)
      : wall_(params.wall), a_(params.window.width), rewards_(std::move(rewards)) {}

  /// E[prod_i g_i(phi_i)] for phi ~ N(mu, cov), indices `vars` into rewards_.
  double expect(const Eigen::VectorXd& mu, const Eigen::MatrixXd& cov,
                const std::vector<int>& vars) const {
    const int k = vars.front();
    const double sd = std::sqrt(cov(0, 0));
    const std::array<double, 4> cuts{-kInf, (0.0 - mu[0]) / sd, (a_ - mu[0]) / sd, kInf};
    const std::array<double, 3> energy{wall_.is_hard() ? -kInf : -wall_.value(), rewards_[k], 0.0};

    if (vars.size() == 1) {
      double total = 0.0;
      for (int i = 0; i < 3; ++i)
        if (energy[i] != -kInf)
          total += std::exp(energy[i] + log_normal_mass(cuts[i], cuts[i + 1]));
      return total;
    }

    const auto n = mu.size();
    const Eigen::VectorXd c = cov.col(0).tail(n - 1);
    const Eigen::MatrixXd cond_cov =
        cov.bottomRightCorner(n - 1, n - 1) - c * c.transpose() / cov(0, 0);
    const std::vector<int> rest(vars.begin() + 1, vars.end());
    auto inner = [&](double z) {
      const double dens = normal_pdf(z);
      if (dens == 0.0)
        return 0.0;
      const Eigen::VectorXd cond_mu = mu.tail(n - 1) + c * (z / sd);
      return dens * expect(cond_mu, cond_cov, rest);
    };
    double total = 0.0;
    for (int i = 0; i < 3; ++i)
      if (energy[i] != -kInf)
        total += std::exp(energy[i]) * integrate(inner, cuts[i], cuts[i + 1], 1e-13).value;
    return total;
  }

private:
  WallStrength wall_;
  double a_;
  std::vector<double> rewards_;
};

} // namespace

double exact_log_Z_small(const ModelParams& params, const FieldConfig& boundary,
                         std::span<const double> rewards) {
  params.validate();
  const BoxLattice& lat = boundary.lattice();
  const std::size_t n = lat.interior_count();
  if (n > kExactMaxInterior)
    throw DomainError("exact_log_Z_small handles at most " + std::to_string(kExactMaxInterior) +
                      " interior sites, got " + std::to_string(n));
  if (rewards.size() != lat.site_count())
    throw ContractViolation("one reward per lattice site required");

  double fixed = 0.0;
  for (SiteId s : lat.energy_window_sites()) {
    if (lat.is_interior(s))
      continue;
    const double w = site_log_weight(rewards[s], params.wall, params.window.width, boundary[s]);
    if (w == -kInf)
      return -kInf;
    fixed += w;
  }

  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(ni, ni);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(ni);
  std::vector<double> r(n);
  for (std::size_t f = 0; f < n; ++f) {
    const auto i = static_cast<Eigen::Index>(f);
    q(i, i) = 2.0 * lat.dim();
    r[f] = rewards[lat.interior_site(f)];
    for (SiteId y : lat.interior_neighbors(f)) {
      const long g = lat.flat_id(y);
      if (g >= 0)
        q(i, g) -= 1.0;
      else
        b[i] += boundary[y];
    }
  }
  const Eigen::MatrixXd cov = q.inverse();
  const Eigen::VectorXd mu = cov * b;
  std::vector<int> vars(n);
  for (std::size_t f = 0; f < n; ++f)
    vars[f] = static_cast<int>(f);
  const SmallGaussian g(params, std::move(r));
  return fixed + std::log(g.expect(mu, cov, vars));
}

double exact_log_Z_small(const ModelParams& params, const FieldConfig& boundary,
                         const DisorderField& disorder) {
  const auto r = site_rewards(params, boundary.lattice(), disorder);
  return exact_log_Z_small(params, boundary, r);
}

double exact_log_Z_small(const ModelParams& params) {
  if (params.boundary.kind != BoundaryKind::constant)
    throw DomainError("this overload needs a constant boundary");
  auto lat = params.make_lattice();
  const FieldConfig boundary(lat, params.boundary.height);
  return exact_log_Z_small(params, boundary, site_rewards(params, *lat));
}

} // namespace wetting
