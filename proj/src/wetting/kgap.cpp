#include "wetting/kgap.hpp"

#include "wetting/errors.hpp"
#include "wetting/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace wetting {

double K_gap(const DisorderLaw& law, double beta, double h, double k) {
  if (!(k > 0.0) || std::isnan(k))
    throw DomainError("K_gap needs K > 0");
  const double lam = law.lambda(beta);
  if (k == kInf)
    return 0.0;
  auto f = [&](double w) {
    const double y = beta * w - lam + h;
    const double neg = std::max(-y, 0.0);
    return std::log1p(std::exp(-k + neg));
  };
  if (beta == 0.0)
    return f(0.0);
  const double kink = (lam - h) / beta;
  return law.expectation(f, std::span<const double>(&kink, 1));
}

KGapFit fit_kgap_decay(const DisorderLaw& law, double beta, double h, std::span<const double> ks) {
  if (ks.size() < 2)
    throw DomainError("fit_kgap_decay needs at least two K values");
  KGapFit fit;
  fit.c_bound = kInf;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double k : ks) {
    const double v = K_gap(law, beta, h, k);
    fit.k.push_back(k);
    fit.value.push_back(v);
    const double y = std::log(v);
    fit.c_bound = std::min(fit.c_bound, -y / k);
    sx += k;
    sy += y;
    sxx += k * k;
    sxy += k * y;
  }
  const double n = static_cast<double>(ks.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

} // namespace wetting
