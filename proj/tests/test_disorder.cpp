#include "doctest.h"

#include "approx.hpp"

#include "wetting/disorder.hpp"
#include "wetting/errors.hpp"
#include "wetting/numerics.hpp"
#include "wetting/stats.hpp"

#include <cmath>

using namespace wetting;

TEST_CASE("lambda closed forms") {
  const DisorderLaw g(LawKind::standard_gaussian), b(LawKind::symmetric_bernoulli),
      e(LawKind::shifted_exponential);
  CHECK(g.lambda(0.0) == 0.0);
  CHECK(g.lambda(1.0) == rel(0.5));
  CHECK(b.lambda(1.0) == rel(std::log(std::cosh(1.0))).epsilon(1e-14));
  CHECK(b.lambda(1.0) == rel(0.43378).epsilon(1e-5));
  CHECK(e.lambda(0.5) == rel(-std::log(0.5) - 0.5).epsilon(1e-14));
  CHECK_FALSE(e.in_domain(1.0));
  CHECK_THROWS_AS(e.lambda(1.0), DomainError);
  CHECK(DisorderLaw::from_name("bernoulli") == b);
  CHECK_THROWS(DisorderLaw::from_name("cauchy"));
}

TEST_CASE("lambda against quadrature of the moment generating function") {
  for (auto kind : {LawKind::standard_gaussian, LawKind::symmetric_bernoulli, LawKind::shifted_exponential}) {
    const DisorderLaw law(kind);
    for (double beta : {0.1, 0.3, 0.45}) {
      const double mgf = law.expectation([&](double w) { return std::exp(beta * w); });
      CHECK(std::log(mgf) == rel(law.lambda(beta)).epsilon(1e-10));
      // centered, unit variance
      CHECK(std::abs(law.expectation([](double w) { return w; })) < 1e-10);
      CHECK(law.expectation([](double w) { return w * w; }) == rel(1.0).epsilon(1e-10));
      const double v = law.expectation([&](double w) { return std::pow(xi(law, beta, w) - 1.0, 2); });
      CHECK(v == rel(law.xi_variance(beta)).epsilon(1e-9));
    }
  }
}

TEST_CASE("xi has mean one") {
  const DisorderLaw g;
  CHECK(xi(g, 0.0, 3.7) == 1.0);
  Rng rng(1);
  RunningStats st;
  for (int i = 0; i < 1000000; ++i)
    st.add(xi(g, 0.5, g.from_uniform(rng.uniform())));
  CHECK(std::abs(st.mean() - 1.0) < 4.0 * st.std_error());
}

TEST_CASE("truncation") {
  const DisorderLaw g;
  Rng rng(2);
  RunningStats st;
  for (int i = 0; i < 100000; ++i) {
    const double v = xi_truncated(g, 0.5, g.from_uniform(rng.uniform()), 1.0);
    CHECK(v <= 1.0);
    st.add(v);
  }
  CHECK(st.mean() < 1.0);
  CHECK(h_shift_for_truncation(g, 0.0, 2.0) == 0.0);
  CHECK(h_shift_for_truncation(g, 0.5, std::exp(10.0)) < 1e-6);
  CHECK(h_shift_for_truncation(g, 0.5, 2.0) > h_shift_for_truncation(g, 0.5, 8.0));
  CHECK_THROWS(h_shift_for_truncation(g, 0.5, 1.0));
}

TEST_CASE("from_uniform is a monotone inverse cdf") {
  for (auto kind : {LawKind::standard_gaussian, LawKind::symmetric_bernoulli, LawKind::shifted_exponential}) {
    const DisorderLaw law(kind);
    double prev = -kInf;
    for (int i = 1; i < 1000; ++i) {
      const double w = law.from_uniform(i / 1000.0);
      CHECK(w >= prev);
      prev = w;
    }
  }
  CHECK(DisorderLaw(LawKind::shifted_exponential).from_uniform(0.5) == rel(std::log(2.0) - 1.0));
}

TEST_CASE("disorder field depends on coordinates only") {
  const DisorderField env(DisorderLaw{}, 77);
  const BoxLattice small(3, 2), big(3, 6);
  const auto a = env.values_on(small);
  const auto b = env.values_on(big);
  for (SiteId s = 0; s < small.site_count(); ++s)
    CHECK(a[s] == b[big.site_id(small.coords(s))]);
  const DisorderField other(DisorderLaw{}, 78);
  const Coords x{1, 1, 1};
  CHECK(env.at(x) != other.at(x));
  CHECK(env.at(x) == DisorderField(DisorderLaw{}, 77).at(x));
}
