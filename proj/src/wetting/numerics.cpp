#include "wetting/numerics.hpp"

#include "wetting/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wetting {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kLogSqrt2Pi = 0.91893853320467274178; // log(sqrt(2 pi))

// Asymptotic series for log P(N > x), x >= 30; relative error below 1e-14.
double log_sf_asymptotic(double x) {
  const double z = 1.0 / (x * x);
  const double series = 1.0 - z * (1.0 - 3.0 * z * (1.0 - 5.0 * z * (1.0 - 7.0 * z)));
  return -0.5 * x * x - kLogSqrt2Pi - std::log(x) + std::log(series);
}

} // namespace

double normal_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double gaussian_tail(double t) { return 0.5 * std::erfc(t / kSqrt2); }

double gaussian_tail_asymptote(double t) { return std::exp(-0.5 * t * t - kLogSqrt2Pi) / t; }

double log_normal_sf(double x) {
  if (x == -kInf)
    return 0.0;
  if (x == kInf)
    return -kInf;
  if (x > 30.0)
    return log_sf_asymptotic(x);
  if (x < -5.0)
    return std::log1p(-normal_cdf(x));
  return std::log(gaussian_tail(x));
}

double log_normal_cdf(double x) { return log_normal_sf(-x); }

double log_normal_mass(double a, double b) {
  if (!(a < b))
    return -kInf;
  if (a >= 0.0) {
    const double la = log_normal_sf(a);
    const double lb = log_normal_sf(b);
    return la + std::log1p(-std::exp(lb - la));
  }
  if (b <= 0.0) {
    const double la = log_normal_cdf(a);
    const double lb = log_normal_cdf(b);
    return lb + std::log1p(-std::exp(la - lb));
  }
  return std::log(normal_mass(a, b));
}

double normal_mass(double a, double b) {
  if (!(a < b))
    return 0.0;
  if (a >= 0.0)
    return gaussian_tail(a) - gaussian_tail(b);
  if (b <= 0.0)
    return normal_cdf(b) - normal_cdf(a);
  return 1.0 - normal_cdf(a) - gaussian_tail(b);
}

double normal_quantile(double p) {
  if (p <= 0.0)
    return -kInf;
  if (p >= 1.0)
    return kInf;
  return -kSqrt2 * boost::math::erfc_inv(2.0 * p);
}

double normal_isf_log(double log_q) {
  if (log_q >= 0.0)
    return -kInf;
  if (log_q == -kInf)
    return kInf;
  if (log_q > -690.0) {
    const double q = std::exp(log_q);
    if (q < 1.0)
      return kSqrt2 * boost::math::erfc_inv(2.0 * q);
    return -kInf;
  }
  // Deep tail: Newton on log P(N > x) = log_q, d/dx log sf(x) ~ -x - 1/x.
  double x = std::sqrt(-2.0 * log_q);
  for (int it = 0; it < 50; ++it) {
    const double g = log_sf_asymptotic(x) - log_q;
    const double slope = -(x + 1.0 / x);
    const double step = g / slope;
    x -= step;
    if (std::abs(step) < 1e-15 * x)
      break;
  }
  return x;
}

double truncated_normal_quantile(double a, double b, double u) {
  if (!(a < b))
    throw ContractViolation("truncated_normal_quantile needs a < b");
  u = std::clamp(u, 0.0, 1.0);
  double x;
  if (a >= 0.0) {
    // Upper tail: invert q = sf(a) - u (sf(a) - sf(b)) in log space.
    const double la = log_normal_sf(a);
    const double lb = log_normal_sf(b);
    const double width = -std::expm1(lb - la); // 1 - sf(b)/sf(a)
    x = normal_isf_log(la + std::log1p(-u * width));
  } else if (b <= 0.0) {
    // Lower tail: p = cdf(b) (1 - (1-u)(1 - cdf(a)/cdf(b))).
    const double la = log_normal_cdf(a);
    const double lb = log_normal_cdf(b);
    const double width = -std::expm1(la - lb);
    x = -normal_isf_log(lb + std::log1p(-(1.0 - u) * width));
  } else {
    x = normal_quantile(normal_cdf(a) + u * normal_mass(a, b));
  }
  return std::clamp(x, a, b);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol) {
  if (a == b)
    return {0.0, 0.0};
  double err = 0.0;
  double l1 = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, tol, &err, &l1);
  if (!std::isfinite(v))
    throw NumericalError("quadrature produced a non-finite value");
  return {v, err * std::max(1.0, l1)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::int64_t> tags) {
  std::uint64_t h = splitmix64(seed ^ 0x5851f42d4c957f2dULL);
  for (std::int64_t t : tags)
    h = splitmix64(h ^ (static_cast<std::uint64_t>(t) + 0x632be59bd9b4e019ULL));
  return h;
}

} // namespace wetting
