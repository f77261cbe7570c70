#include "doctest.h"

#include "wetting/lattice.hpp"

#include <algorithm>
#include <set>

using namespace wetting;

TEST_CASE("box counts") {
  BoxLattice a(3, 2);
  CHECK(a.site_count() == 27);
  CHECK(a.interior_count() == 1);
  CHECK(a.boundary_count() == 26);
  CHECK(a.energy_window_count() == 8);

  CHECK(BoxLattice(3, 3).interior_count() == 8);

  BoxLattice c(3, 2, OriginMode::centered);
  CHECK(c.site_count() == 125);
  CHECK(c.interior_count() == 27);
  CHECK(c.energy_window_count() == 64);
}

TEST_CASE("neighbours") {
  BoxLattice a(3, 2);
  const Coords one{1, 1, 1};
  const auto n1 = a.neighbors(one);
  CHECK(n1.size() == 6);
  CHECK(std::none_of(n1.begin(), n1.end(), [&](SiteId s) { return a.is_interior(s); }));

  BoxLattice b(3, 4);
  const Coords mid{2, 2, 2};
  const auto n2 = b.neighbors(mid);
  CHECK(n2.size() == 6);
  CHECK(std::all_of(n2.begin(), n2.end(), [&](SiteId s) { return b.is_interior(s); }));

  const Coords corner{0, 0, 0};
  CHECK(a.neighbors(corner).size() == 3);
}

TEST_CASE("ids round-trip and window membership") {
  for (auto mode : {OriginMode::corner, OriginMode::centered}) {
    BoxLattice lat(2, 3, mode);
    std::set<std::size_t> flats;
    for (SiteId s = 0; s < lat.site_count(); ++s) {
      const Coords x = lat.coords(s);
      CHECK(lat.site_id(x) == s);
      const bool interior = std::all_of(x.begin(), x.end(), [&](int v) { return v > lat.lo() && v < lat.hi(); });
      CHECK(lat.is_interior(s) == interior);
      const bool window = std::all_of(x.begin(), x.end(), [&](int v) { return v > lat.lo(); });
      CHECK(lat.in_energy_window(s) == window);
      if (interior) {
        flats.insert(static_cast<std::size_t>(lat.flat_id(s)));
        CHECK(lat.interior_site(static_cast<std::size_t>(lat.flat_id(s))) == s);
      } else {
        CHECK(lat.flat_id(s) == -1);
      }
    }
    CHECK(flats.size() == lat.interior_count());
  }
}

TEST_CASE("interior neighbour table matches neighbors()") {
  BoxLattice lat(3, 4);
  for (std::size_t f = 0; f < lat.interior_count(); ++f) {
    auto a = lat.neighbors(lat.interior_site(f));
    auto span = lat.interior_neighbors(f);
    std::vector<SiteId> b(span.begin(), span.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("origin mode names") {
  CHECK(to_string(OriginMode::centered) == "centered");
  CHECK(origin_mode_from_string("corner") == OriginMode::corner);
  CHECK_THROWS(origin_mode_from_string("middle"));
  CHECK_THROWS(BoxLattice(0, 2));
  CHECK_THROWS(BoxLattice(3, 0));
}
