#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace wetting {

enum class OriginMode {
  corner,   // {0..N}^d
  centered, // {-N..N}^d
};

std::string_view to_string(OriginMode mode);
OriginMode origin_mode_from_string(std::string_view text);

using SiteId = std::size_t;
using Coords = std::vector<int>;

/// Interior site addressed both ways.
struct SiteIndex {
  Coords coords;
  std::size_t flat_id;
};

/// Hypercubic box with its interior, internal boundary and energy window.
///
/// Every site of the box gets a SiteId (row-major over coordinates, last
/// coordinate fastest). Interior sites additionally carry a flat id in
/// [0, interior_count()). The energy window is {lo+1..hi}^d, i.e. {1..N}^d for
/// corner boxes and {-N+1..N}^d for centered ones.
///
/// Immutable after construction.
class BoxLattice {
public:
  BoxLattice(int dim, int side, OriginMode mode = OriginMode::corner);

  int dim() const { return dim_; }
  int side() const { return side_; }
  OriginMode mode() const { return mode_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int extent() const { return hi_ - lo_ + 1; }

  std::size_t site_count() const { return site_count_; }
  std::size_t interior_count() const { return interior_.size(); }
  std::size_t boundary_count() const { return boundary_.size(); }
  std::size_t energy_window_count() const { return window_.size(); }

  bool contains(std::span<const int> coords) const;
  SiteId site_id(std::span<const int> coords) const;
  Coords coords(SiteId site) const;

  bool is_interior(SiteId site) const { return flat_of_site_[site] >= 0; }
  bool in_energy_window(SiteId site) const { return window_mask_[site] != 0; }

  /// Flat interior id, or -1 for boundary sites.
  long flat_id(SiteId site) const { return flat_of_site_[site]; }
  SiteId interior_site(std::size_t flat) const { return interior_[flat]; }
  SiteIndex site_index(std::size_t flat) const;

  std::span<const SiteId> interior_sites() const { return interior_; }
  std::span<const SiteId> boundary_sites() const { return boundary_; }
  std::span<const SiteId> energy_window_sites() const { return window_; }

  /// All sites of the box at l1-distance one from `site`.
  std::vector<SiteId> neighbors(SiteId site) const;
  std::vector<SiteId> neighbors(std::span<const int> coords) const;

  /// The 2d neighbours of an interior site, by flat id.
  std::span<const SiteId> interior_neighbors(std::size_t flat) const {
    return {interior_nbrs_.data() + flat * 2 * dim_, static_cast<std::size_t>(2 * dim_)};
  }

  /// Unordered nearest-neighbour pairs with at least one interior endpoint.
  std::size_t edge_count_touching_interior() const;

  /// The site with every coordinate equal to floor((lo + hi) / 2).
  SiteId center() const;

private:
  int dim_;
  int side_;
  OriginMode mode_;
  int lo_;
  int hi_;
  std::size_t site_count_;
  std::vector<std::size_t> strides_;
  std::vector<long> flat_of_site_;
  std::vector<unsigned char> window_mask_;
  std::vector<SiteId> interior_;
  std::vector<SiteId> boundary_;
  std::vector<SiteId> window_;
  std::vector<SiteId> interior_nbrs_;
};

} // namespace wetting
