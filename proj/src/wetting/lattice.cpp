#include "wetting/lattice.hpp"

#include "wetting/errors.hpp"

#include <string>

namespace wetting {

std::string_view to_string(OriginMode mode) {
  return mode == OriginMode::corner ? "corner" : "centered";
}

OriginMode origin_mode_from_string(std::string_view text) {
  if (text == "corner")
    return OriginMode::corner;
  if (text == "centered")
    return OriginMode::centered;
  throw DomainError("origin mode must be 'corner' or 'centered', got '" + std::string(text) + "'");
}

BoxLattice::BoxLattice(int dim, int side, OriginMode mode)
    : dim_(dim), side_(side), mode_(mode) {
  if (dim < 1)
    throw DomainError("lattice dimension must be >= 1, got " + std::to_string(dim));
  if (side < 2)
    throw DomainError("lattice side N must be >= 2 (no interior otherwise), got " +
                      std::to_string(side));
  lo_ = mode == OriginMode::corner ? 0 : -side;
  hi_ = side;

  const auto ext = static_cast<std::size_t>(extent());
  strides_.assign(dim_, 1);
  for (int i = dim_ - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * ext;
  site_count_ = strides_[0] * ext;

  flat_of_site_.assign(site_count_, -1);
  window_mask_.assign(site_count_, 0);
  Coords c(dim_, lo_);
  for (SiteId s = 0; s < site_count_; ++s) {
    bool interior = true;
    bool window = true;
    for (int v : c) {
      if (v == lo_ || v == hi_)
        interior = false;
      if (v == lo_)
        window = false;
    }
    if (interior) {
      flat_of_site_[s] = static_cast<long>(interior_.size());
      interior_.push_back(s);
    } else {
      boundary_.push_back(s);
    }
    if (window) {
      window_mask_[s] = 1;
      window_.push_back(s);
    }
    for (int i = dim_ - 1; i >= 0; --i) {
      if (++c[i] <= hi_)
        break;
      c[i] = lo_;
    }
  }

  interior_nbrs_.reserve(interior_.size() * 2 * dim_);
  for (SiteId s : interior_) {
    for (int i = 0; i < dim_; ++i) {
      interior_nbrs_.push_back(s - strides_[i]);
      interior_nbrs_.push_back(s + strides_[i]);
    }
  }
}

bool BoxLattice::contains(std::span<const int> coords) const {
  if (coords.size() != static_cast<std::size_t>(dim_))
    return false;
  for (int v : coords)
    if (v < lo_ || v > hi_)
      return false;
  return true;
}

SiteId BoxLattice::site_id(std::span<const int> coords) const {
  if (!contains(coords))
    throw ContractViolation("coordinates outside the box");
  SiteId s = 0;
  for (int i = 0; i < dim_; ++i)
    s += static_cast<std::size_t>(coords[i] - lo_) * strides_[i];
  return s;
}

Coords BoxLattice::coords(SiteId site) const {
  if (site >= site_count_)
    throw ContractViolation("site id outside the box");
  Coords c(dim_);
  for (int i = 0; i < dim_; ++i) {
    c[i] = lo_ + static_cast<int>(site / strides_[i]);
    site %= strides_[i];
  }
  return c;
}

SiteIndex BoxLattice::site_index(std::size_t flat) const {
  if (flat >= interior_.size())
    throw ContractViolation("flat id outside the interior");
  return {coords(interior_[flat]), flat};
}

std::vector<SiteId> BoxLattice::neighbors(std::span<const int> coords) const {
  if (!contains(coords))
    throw ContractViolation("neighbors() called on a site outside the box");
  const SiteId s = site_id(coords);
  std::vector<SiteId> out;
  out.reserve(2 * dim_);
  for (int i = 0; i < dim_; ++i) {
    if (coords[i] > lo_)
      out.push_back(s - strides_[i]);
    if (coords[i] < hi_)
      out.push_back(s + strides_[i]);
  }
  return out;
}

std::vector<SiteId> BoxLattice::neighbors(SiteId site) const {
  const Coords c = coords(site);
  return neighbors(std::span<const int>(c));
}

std::size_t BoxLattice::edge_count_touching_interior() const {
  // Every edge touching the interior is seen from an interior endpoint; edges
  // with two interior endpoints are seen twice.
  std::size_t incident = 0;
  std::size_t both = 0;
  for (std::size_t f = 0; f < interior_.size(); ++f) {
    for (SiteId y : interior_neighbors(f)) {
      ++incident;
      if (is_interior(y))
        ++both;
    }
  }
  return incident - both / 2;
}

SiteId BoxLattice::center() const {
  int mid = lo_ + (hi_ - lo_) / 2;
  Coords c(dim_, mid);
  return site_id(c);
}

} // namespace wetting
