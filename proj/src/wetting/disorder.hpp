#pragma once

#include "wetting/lattice.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace wetting {

enum class LawKind {
  standard_gaussian,
  symmetric_bernoulli, // +-1 with probability 1/2
  shifted_exponential, // E - 1, E standard exponential
};

/// Centered, unit-variance law of the pinning rewards, with its closed-form
/// log-moment generating function lambda(beta).
class DisorderLaw {
public:
  explicit DisorderLaw(LawKind kind = LawKind::standard_gaussian) : kind_(kind) {}

  static DisorderLaw from_name(std::string_view name);

  LawKind kind() const { return kind_; }
  std::string_view name() const;

  /// Whether lambda(beta) is finite.
  bool in_domain(double beta) const;
  /// log E[exp(beta omega)]; DomainError outside I_P.
  double lambda(double beta) const;
  /// Var(exp(beta omega - lambda(beta))); needs 2 beta in I_P.
  double xi_variance(double beta) const;

  /// Inverse CDF, nondecreasing on (0, 1).
  double from_uniform(double u) const;

  /// E[f(omega)] by quadrature against the density (exact sum for Bernoulli).
  /// `breakpoints` are points where f may fail to be smooth.
  double expectation(const std::function<double(double)>& f,
                     std::span<const double> breakpoints = {}) const;

  friend bool operator==(const DisorderLaw&, const DisorderLaw&) = default;

private:
  LawKind kind_;
};

/// exp(beta omega - lambda(beta)).
double xi(const DisorderLaw& law, double beta, double omega);
/// min(xi, H).
double xi_truncated(const DisorderLaw& law, double beta, double omega, double cap);
/// -log E[min(xi, H)], computed as -log1p(-E[(xi - H)_+]). Requires H > 1.
double h_shift_for_truncation(const DisorderLaw& law, double beta, double cap);

/// IID disorder addressed by absolute lattice coordinates: the value at a site
/// is a pure function of (seed, coordinates), so boxes of different sizes see
/// the same environment where they overlap.
class DisorderField {
public:
  DisorderField(DisorderLaw law, std::uint64_t seed) : law_(law), seed_(seed) {}

  const DisorderLaw& law() const { return law_; }
  std::uint64_t seed() const { return seed_; }

  double at(std::span<const int> coords) const;
  /// One value per site of the box (boundary included).
  std::vector<double> values_on(const BoxLattice& lattice) const;

private:
  DisorderLaw law_;
  std::uint64_t seed_;
};

} // namespace wetting
