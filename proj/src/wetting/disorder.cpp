#include "wetting/disorder.hpp"

#include "wetting/errors.hpp"
#include "wetting/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wetting {

DisorderLaw DisorderLaw::from_name(std::string_view name) {
  if (name == "gaussian" || name == "standard_gaussian")
    return DisorderLaw(LawKind::standard_gaussian);
  if (name == "bernoulli" || name == "symmetric_bernoulli")
    return DisorderLaw(LawKind::symmetric_bernoulli);
  if (name == "exponential" || name == "shifted_exponential")
    return DisorderLaw(LawKind::shifted_exponential);
  throw DomainError("unknown disorder law '" + std::string(name) +
                    "' (expected gaussian, bernoulli or exponential)");
}

std::string_view DisorderLaw::name() const {
  switch (kind_) {
  case LawKind::standard_gaussian:
    return "gaussian";
  case LawKind::symmetric_bernoulli:
    return "bernoulli";
  case LawKind::shifted_exponential:
    return "exponential";
  }
  return "?";
}

bool DisorderLaw::in_domain(double beta) const {
  if (!std::isfinite(beta))
    return false;
  return kind_ != LawKind::shifted_exponential || beta < 1.0;
}

double DisorderLaw::lambda(double beta) const {
  if (!in_domain(beta))
    throw DomainError("beta = " + std::to_string(beta) + " is outside I_P for the " +
                      std::string(name()) + " law");
  switch (kind_) {
  case LawKind::standard_gaussian:
    return 0.5 * beta * beta;
  case LawKind::symmetric_bernoulli: {
    // log cosh, stable for large |beta|
    const double a = std::abs(beta);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
  }
  case LawKind::shifted_exponential:
    return -beta - std::log1p(-beta);
  }
  return 0.0;
}

double DisorderLaw::xi_variance(double beta) const {
  return std::expm1(lambda(2.0 * beta) - 2.0 * lambda(beta));
}

double DisorderLaw::from_uniform(double u) const {
  switch (kind_) {
  case LawKind::standard_gaussian:
    return normal_quantile(u);
  case LawKind::symmetric_bernoulli:
    return u < 0.5 ? -1.0 : 1.0;
  case LawKind::shifted_exponential:
    return -std::log1p(-u) - 1.0;
  }
  return 0.0;
}

double DisorderLaw::expectation(const std::function<double(double)>& f,
                                std::span<const double> breakpoints) const {
  if (kind_ == LawKind::symmetric_bernoulli)
    return 0.5 * (f(-1.0) + f(1.0));

  const bool gauss = kind_ == LawKind::standard_gaussian;
  const double lo = gauss ? -kInf : -1.0;
  std::vector<double> cuts{lo};
  for (double b : breakpoints)
    if (std::isfinite(b) && b > lo)
      cuts.push_back(b);
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(kInf);

  auto weighted = [&](double w) {
    const double dens = gauss ? normal_pdf(w) : std::exp(-(w + 1.0));
    return dens == 0.0 ? 0.0 : f(w) * dens;
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate(weighted, cuts[i], cuts[i + 1], 1e-11).value;
  return total;
}

double xi(const DisorderLaw& law, double beta, double omega) {
  return std::exp(beta * omega - law.lambda(beta));
}

double xi_truncated(const DisorderLaw& law, double beta, double omega, double cap) {
  if (!(cap > 0.0))
    throw DomainError("truncation level H must be positive");
  return std::min(xi(law, beta, omega), cap);
}

double h_shift_for_truncation(const DisorderLaw& law, double beta, double cap) {
  if (!(cap > 1.0))
    throw DomainError("h_shift_for_truncation needs H > 1");
  const double lam = law.lambda(beta);
  if (beta == 0.0)
    return 0.0;
  // xi > H  <=>  beta * omega > log H + lambda
  const double threshold = (std::log(cap) + lam) / beta;
  const double log_cap = std::log(cap);
  auto excess = [&](double w) {
    const double e = beta * w - lam;
    return e > log_cap ? std::exp(e) - cap : 0.0;
  };
  const double tail = law.expectation(excess, std::span<const double>(&threshold, 1));
  if (!(tail >= 0.0) || tail >= 1.0)
    throw NumericalError("quadrature for E[(xi - H)_+] failed");
  return -std::log1p(-tail);
}

double DisorderField::at(std::span<const int> coords) const {
  std::uint64_t h = splitmix64(seed_ ^ 0xd1b54a32d192ed03ULL);
  for (int c : coords)
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
  return law_.from_uniform(bits_to_open_unit(h));
}

std::vector<double> DisorderField::values_on(const BoxLattice& lattice) const {
  std::vector<double> out(lattice.site_count());
  for (SiteId s = 0; s < lattice.site_count(); ++s) {
    const Coords c = lattice.coords(s);
    out[s] = at(c);
  }
  return out;
}

} // namespace wetting
