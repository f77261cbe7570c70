#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>

namespace wetting {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Standard normal distribution
// ---------------------------------------------------------------------------

double normal_pdf(double x);
double normal_cdf(double x);
/// Upper tail P(N > t), exact via erfc.
double gaussian_tail(double t);
/// exp(-t^2/2) / (t sqrt(2 pi)), the Mills-ratio asymptote of the upper tail.
double gaussian_tail_asymptote(double t);
double log_normal_cdf(double x);
double log_normal_sf(double x);
/// P(a < N < b) without cancellation in either tail.
double normal_mass(double a, double b);
double log_normal_mass(double a, double b);
double normal_quantile(double p);
/// Inverse of the upper tail given its logarithm.
double normal_isf_log(double log_q);

/// Quantile u of a standard normal restricted to (a, b); a may be -inf and b +inf.
/// Nondecreasing in u, a and b.
double truncated_normal_quantile(double a, double b, double u);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
  double value;
  double error;
};

/// Adaptive Gauss-Kronrod on [a, b]; infinite limits allowed.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-12);

// ---------------------------------------------------------------------------
// Seeding and random streams
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic child seed from a parent seed and a list of integer tags.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::int64_t> tags);

/// Uniform in the open interval (0, 1) from 64 random bits.
inline double bits_to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// A seeded random stream. One per chain or worker.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double uniform() { return bits_to_open_unit(engine_()); }
  double normal() { return normal_(engine_); }
  std::uint64_t bits() { return engine_(); }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace wetting
