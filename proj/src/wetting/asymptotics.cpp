#include "wetting/asymptotics.hpp"

#include "wetting/errors.hpp"
#include "wetting/numerics.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wetting {

namespace {

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DomainError("sigma must be a positive finite number");
}

void require_h(double h) {
  if (!(h > 0.0 && h < 1.0))
    throw DomainError("h must lie in (0, 1)");
}

} // namespace

double gaussian_mass(double a, double b) { return normal_mass(a, b); }

double jensen_lower_bound(double u, double h, double k, double sigma) {
  require_sigma(sigma);
  if (!std::isfinite(k) || k < 0.0)
    throw DomainError("jensen_lower_bound needs a finite K >= 0");
  return h * normal_mass(-u, -u + 1.0 / sigma) - k * normal_cdf(-u);
}

double jensen_offset(double k, double sigma) {
  require_sigma(sigma);
  return 1.0 / (2.0 * sigma) + sigma * std::log(4.0 * (k + 1.0));
}

double jensen_height(double h, double k, double sigma) {
  require_h(h);
  return sigma * std::log(1.0 / h) + jensen_offset(k, sigma);
}

JensenOptimum jensen_optimum(double h, double k, double sigma) {
  require_h(h);
  const double centre = jensen_height(h, k, sigma);
  // Work with the log of the bound where it is positive; it is unimodal there.
  auto neg = [&](double u) {
    const double v = jensen_lower_bound(u, h, k, sigma);
    return v > 0.0 ? -std::log(v) : 1e300;
  };
  const double lo = std::max(0.0, centre - 6.0 - 2.0 / sigma);
  const double hi = centre + 6.0 + 2.0 / sigma;
  const auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 52);
  return {r.first, jensen_lower_bound(r.first, h, k, sigma)};
}

double log_explicit_lower_bound(double h, double k, double sigma) {
  require_h(h);
  require_sigma(sigma);
  const double l = std::log(1.0 / h);
  const double r = jensen_offset(k, sigma);
  const double s2 = sigma * sigma;
  return std::log(2.0) - (0.5 + s2 * std::log(4.0 * (k + 1.0))) * l - 0.5 * r * r -
         std::log(r + sigma * l) - 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * s2 * l * l;
}

double explicit_lower_bound(double h, double k, double sigma) {
  return std::exp(log_explicit_lower_bound(h, k, sigma));
}

double explicit_bound_exponent(double h, double k, double sigma) {
  const double l = std::log(1.0 / h);
  return -log_explicit_lower_bound(h, k, sigma) / (l * l);
}

OnesiteQuantities onesite_quantities(double u, double h, double k, double sigma) {
  require_sigma(sigma);
  if (k < 0.0 || std::isnan(k))
    throw DomainError("K must be >= 0");
  const double p_le1 = normal_cdf((1.0 - u) / sigma);
  const double p_neg = normal_cdf(-u / sigma);
  const double eh1 = std::expm1(h);
  // e^-K - e^h = expm1(-K) - expm1(h)
  const double wall = (k == kInf ? -1.0 : std::expm1(-k)) - eh1;
  OnesiteQuantities q{};
  q.exact_excess = eh1 * p_le1 + wall * p_neg;
  q.exact = 1.0 + q.exact_excess;

  const double s2 = sigma * sigma;
  const double log_pref =
      std::log(sigma / (u * std::sqrt(2.0 * std::numbers::pi))) - u * u / (2.0 * s2);
  q.approx_excess = std::exp(log_pref) * onesite_bracket(u, h, k, sigma);
  q.approx = 1.0 + q.approx_excess;

  if (h > 0.0 && h < 1.0) {
    const double l = std::log(1.0 / h);
    q.predicted = 1.0 + std::exp(-0.5 * s2 * l * l);
  } else {
    q.predicted = kInf;
  }
  q.relative_gap = q.exact_excess == 0.0
                       ? (q.approx_excess == 0.0 ? 0.0 : kInf)
                       : std::abs(q.exact_excess - q.approx_excess) / std::abs(q.exact_excess);
  return q;
}

double onesite_bracket(double u, double h, double k, double sigma) {
  require_sigma(sigma);
  const double s2 = sigma * sigma;
  const double one_minus_ek = k == kInf ? 1.0 : -std::expm1(-k);
  return h * std::exp(u / s2 - 1.0 / (2.0 * s2)) - one_minus_ek;
}

double onesite_bracket_root(double h, double k, double sigma) {
  require_sigma(sigma);
  if (!(h > 0.0))
    throw DomainError("the bracket has a root only for h > 0");
  if (!(k > 0.0))
    throw DomainError("the bracket has a root only for K > 0");
  const double one_minus_ek = k == kInf ? 1.0 : -std::expm1(-k);
  return 0.5 + sigma * sigma * std::log(one_minus_ek / h);
}

double ratio_estimate(double u, double sigma) {
  require_sigma(sigma);
  if (!(u > 2.0))
    throw DomainError("ratio_estimate needs u > 2");
  return std::exp(log_normal_cdf((1.0 - u) / sigma) - log_normal_cdf(-u / sigma));
}

double normalized_ratio(double a_tilde, double h, double sigma) {
  require_h(h);
  const double l = std::log(1.0 / h);
  const double u = a_tilde * sigma * sigma * l;
  const double log_ref = a_tilde * l - 1.0 / (2.0 * sigma * sigma);
  return std::exp(log_normal_cdf((1.0 - u) / sigma) - log_normal_cdf(-u / sigma) - log_ref);
}

double contact_probability(double u, double sigma) {
  require_sigma(sigma);
  return normal_cdf((1.0 - u) / sigma);
}

double contact_probability_asymptote(double u, double sigma) {
  require_sigma(sigma);
  return sigma / (u * std::sqrt(2.0 * std::numbers::pi)) *
         std::exp(-(u - 1.0) * (u - 1.0) / (2.0 * sigma * sigma));
}

double p_over_p(double u, double a) {
  if (!(a > 0.0))
    throw DomainError("p_over_p needs a > 0");
  return std::exp(log_normal_mass(-u, -u + a) - log_normal_cdf(-u));
}

double p_over_p_asymptote(double u, double a) { return std::exp(a * u - 0.5 * a * a); }

bool p_over_p_increasing(const std::vector<double>& u_grid, double a) {
  std::vector<double> g = u_grid;
  std::sort(g.begin(), g.end());
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(p_over_p(g[i], a) > p_over_p(g[i - 1], a)))
      return false;
  return true;
}

double log_predicted_free_energy(double h, double sigma_sq, double width) {
  require_h(h);
  if (!(width > 0.0) || !(sigma_sq > 0.0))
    throw DomainError("predicted free energy needs sigma^2 > 0 and a > 0");
  const double l = std::log(1.0 / h);
  return -sigma_sq / (2.0 * width * width) * l * l;
}

double predicted_free_energy(double h, double sigma_sq, double width) {
  return std::exp(log_predicted_free_energy(h, sigma_sq, width));
}

double delta_pinning_conjecture(double j, double sigma_sq) {
  if (!(sigma_sq > 0.0))
    throw DomainError("sigma^2 must be positive");
  return std::exp(-0.5 * sigma_sq * std::exp(-2.0 * j));
}

} // namespace wetting
