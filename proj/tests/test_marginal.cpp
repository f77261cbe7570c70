#include "doctest.h"

#include "wetting/sampler.hpp"

#include <algorithm>
#include <cmath>

using namespace wetting;

namespace {

const std::vector<int> kSides{4, 8, 12};
const std::vector<double> kT{0.5, 1.0, 1.5, 2.0, 3.0, 5.0};
const McmcSpec kSpec{.burn_in = 200, .thinning = 5, .samples = 500, .replicas = 8};

std::vector<MarginalCdf> probe(double h, std::uint64_t seed) {
  ModelParams p;
  p.dim = 3;
  p.origin = OriginMode::centered;
  p.h = h;
  p.wall = WallStrength::hard();
  p.disorder_seed = seed;
  return marginal_probe(p, Coords{0, 0, 0}, kSides, kT, kSpec, seed);
}

const std::vector<MarginalCdf>& pinned() {
  static const auto m = probe(0.5, 21);
  return m;
}

const std::vector<MarginalCdf>& depinned() {
  static const auto m = probe(-0.5, 17);
  return m;
}

} // namespace

TEST_CASE("h=0.5: center CDF decreases with N") {
  const auto& m = pinned();
  REQUIRE(m.size() == 3);
  for (std::size_t j = 0; j + 1 < m.size(); ++j)
    for (std::size_t i = 0; i < kT.size(); ++i)
      CHECK(m[j + 1].cdf[i] <= m[j].cdf[i] + 2.0 * std::hypot(m[j].std_error[i], m[j + 1].std_error[i]));
}

TEST_CASE("h=0.5: N=8 and N=12 center CDFs within 0.03") {
  const auto& m = pinned();
  double sup = 0.0;
  for (std::size_t i = 0; i < kT.size(); ++i)
    sup = std::max(sup, std::abs(m[1].cdf[i] - m[2].cdf[i]));
  MESSAGE("sup distance " << sup);
  CHECK(sup < 0.03);
}

TEST_CASE("h=-0.5: mass escapes upward") {
  const auto& m = depinned();
  // P(phi <= 2) at least halves from N=4 to N=12
  const std::size_t i = 3;
  REQUIRE(kT[i] == 2.0);
  CHECK(m[2].cdf[i] + 2.0 * m[2].std_error[i] < 0.5 * m[0].cdf[i]);
  for (std::size_t j = 0; j + 1 < m.size(); ++j)
    CHECK(m[j + 1].cdf[i] < m[j].cdf[i]);
}

TEST_CASE("h=-0.5: P(phi <= 5) at N=12 below half of N=4" * doctest::may_fail()) {
  const auto& m = depinned();
  CHECK(m[2].cdf[5] < 0.5 * m[0].cdf[5]);
}
