#pragma once

#include <vector>

namespace wetting {

/// Standard-normal mass of (a, b).
double gaussian_mass(double a, double b);

/// Jensen lower bound on the free energy for a field repelled to standardized
/// height u: h P(-u, -u + 1/sigma) - K P(-inf, -u).
double jensen_lower_bound(double u, double h, double k, double sigma);
/// r = 1/(2 sigma) + sigma log(4 (K + 1)).
double jensen_offset(double k, double sigma);
/// The standardized height sigma log(1/h) + r used for the explicit bound.
double jensen_height(double h, double k, double sigma);
/// Numerical maximizer of jensen_lower_bound over u and the maximal value.
struct JensenOptimum {
  double u;
  double value;
};
JensenOptimum jensen_optimum(double h, double k, double sigma);

/// The closed-form lower bound obtained from the Jensen bound at jensen_height.
double explicit_lower_bound(double h, double k, double sigma);
double log_explicit_lower_bound(double h, double k, double sigma);
/// -log(bound) / (log 1/h)^2, the quantity that tends to sigma^2 / 2.
double explicit_bound_exponent(double h, double k, double sigma);

/// One-site contribution with phi ~ N(u, sigma^2) (u unstandardized here).
struct OnesiteQuantities {
  double exact;          ///< P(phi>1) + e^h P(0<=phi<=1) + e^-K P(phi<0)
  double approx;         ///< tail-asymptotic approximation
  double predicted;      ///< 1 + exp(-sigma^2 (log 1/h)^2 / 2)
  double exact_excess;   ///< exact - 1, computed without cancellation against 1
  double approx_excess;  ///< approx - 1
  double relative_gap;   ///< |exact_excess - approx_excess| / |exact_excess|
};
OnesiteQuantities onesite_quantities(double u, double h, double k, double sigma);
/// h exp(u/sigma^2 - 1/(2 sigma^2)) - (1 - e^-K): the sign of the one-site gain.
double onesite_bracket(double u, double h, double k, double sigma);
/// Closed-form zero of onesite_bracket in u.
double onesite_bracket_root(double h, double k, double sigma);

/// P(phi <= 1) / P(phi < 0) for phi ~ N(u, sigma^2). Requires u > 2.
double ratio_estimate(double u, double sigma);
/// ratio_estimate at u = a sigma^2 log(1/h), divided by h^-a exp(-1/(2 sigma^2)).
double normalized_ratio(double a_tilde, double h, double sigma);
/// P(phi <= 1) for phi ~ N(u, sigma^2) and its tail asymptote.
double contact_probability(double u, double sigma);
double contact_probability_asymptote(double u, double sigma);

/// P(-u, -u + a) / P(-inf, -u) and its large-u asymptote exp(a u - a^2/2).
double p_over_p(double u, double a);
double p_over_p_asymptote(double u, double a);
/// Whether p_over_p is increasing along the sorted grid (reported, not enforced).
bool p_over_p_increasing(const std::vector<double>& u_grid, double a);

/// exp(-(sigma^2 / (2 a^2)) (log 1/h)^2), the leading-order free energy for a
/// pinning band of width a.
double predicted_free_energy(double h, double sigma_sq, double width = 1.0);
double log_predicted_free_energy(double h, double sigma_sq, double width = 1.0);

/// exp(-(sigma^2 / 2) e^{-2J}); a conjecture for the delta-pinning limit, not a
/// theorem.
double delta_pinning_conjecture(double j, double sigma_sq);

} // namespace wetting
