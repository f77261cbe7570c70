#pragma once

#include "wetting/disorder.hpp"
#include "wetting/gaussian_field.hpp"
#include "wetting/lattice.hpp"
#include "wetting/numerics.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace wetting {

/// Wall penalty K per site below zero. The hard wall (K = +inf) is a flag,
/// not a large number, so samplers can drop the negative half-line exactly.
class WallStrength {
public:
  static WallStrength hard() { return WallStrength(kInf, true); }
  /// K >= 0; +inf gives the hard wall.
  static WallStrength soft(double k);

  bool is_hard() const { return hard_; }
  /// Penalty, +inf for the hard wall.
  double value() const { return k_; }

  friend bool operator==(const WallStrength&, const WallStrength&) = default;

private:
  WallStrength(double k, bool hard) : k_(k), hard_(hard) {}
  double k_;
  bool hard_;
};

/// Reward b * 1_[0, a] in place of the unit pinning band.
struct PinningWindow {
  double width = 1.0; ///< a
  double scale = 1.0; ///< b

  friend bool operator==(const PinningWindow&, const PinningWindow&) = default;
};

enum class BoundaryKind {
  constant,   ///< every boundary site at `height`
  free_field, ///< free field at mean `height`, sampled on an enclosing box
};

struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::constant;
  double height = 0.0;
  /// Extra layers of the enclosing box used by `free_field`; 0 means N.
  int margin = 0;
};

struct ModelParams {
  int dim = 3;
  int side = 2;
  OriginMode origin = OriginMode::corner;
  double beta = 0.0;
  double h = 0.0;
  WallStrength wall = WallStrength::hard();
  BoundarySpec boundary{};
  DisorderLaw law{};
  std::uint64_t disorder_seed = 0;
  PinningWindow window{};

  /// Human-readable list of every violated constraint; empty when valid.
  std::vector<std::string> violations() const;
  /// Throws DomainError listing all violations.
  void validate() const;

  std::shared_ptr<const BoxLattice> make_lattice() const;
  /// b * (beta * omega - lambda(beta) + h) for omega = `omega`.
  double reward(double omega) const;
};

/// delta = 1_[0,1], rho = 1_(-inf,0), rho_plus = 1_(-inf,1].
struct SiteIndicators {
  bool delta;
  bool rho;
  bool rho_plus;
};
SiteIndicators site_indicators(double phi);

/// b * 1_[0, a](phi). DomainError unless a > 0 and b > 0.
double generalized_indicator(double width, double scale, double phi);

/// Energy of one site of the energy window: reward if phi in [0, a], -K if
/// phi < 0 (-inf under the hard wall), 0 otherwise. `reward` already carries
/// the factor b.
double site_log_weight(double reward, const WallStrength& wall, double width, double phi);

/// Per-site rewards b * (beta * omega_x - lambda + h) on every site of the box.
std::vector<double> site_rewards(const ModelParams& params, const BoxLattice& lattice,
                                 const DisorderField& disorder);
std::vector<double> site_rewards(const ModelParams& params, const BoxLattice& lattice);

/// Sum over the energy window of the site energies; -inf if a hard wall is
/// violated.
double log_weight(const ModelParams& params, const FieldConfig& field,
                  std::span<const double> rewards);
double log_weight(const ModelParams& params, const FieldConfig& field,
                  const DisorderField& disorder);

/// Boundary condition (and a flat initial interior at the boundary mean) for
/// `params.boundary`. The free-field variant needs `rng`.
FieldConfig make_boundary(const ModelParams& params, std::shared_ptr<const BoxLattice> lattice,
                          Rng* rng = nullptr);

/// Values of a zero-boundary free field on a box enlarged by `margin` layers on
/// every side, shifted by `height`, copied onto the boundary of `lattice`.
FieldConfig sample_free_field_boundary(std::shared_ptr<const BoxLattice> lattice, double height,
                                       int margin, Rng& rng);

} // namespace wetting
