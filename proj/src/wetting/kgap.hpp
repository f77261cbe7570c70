#pragma once

#include "wetting/disorder.hpp"

#include <span>
#include <vector>

namespace wetting {

/// E log(1 + exp(-K + (beta omega - lambda + h)_-)), with (y)_- = max(-y, 0).
/// Bounds the per-site free-energy loss when the hard wall is softened to K.
double K_gap(const DisorderLaw& law, double beta, double h, double k);

struct KGapFit {
  std::vector<double> k;
  std::vector<double> value;
  /// min over the grid of -log(K_gap) / K: the largest c with K_gap <= e^{-cK}
  /// on every grid point.
  double c_bound = 0.0;
  /// least-squares slope of log(K_gap) against K
  double slope = 0.0;
  double intercept = 0.0;
};
KGapFit fit_kgap_decay(const DisorderLaw& law, double beta, double h, std::span<const double> ks);

} // namespace wetting
