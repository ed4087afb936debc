#include "nrgg/spatial_grid.hpp"

#include <algorithm>
#include <cmath>

#include "nrgg/errors.hpp"
#include "nrgg/rng.hpp"

namespace nrgg {

namespace {

constexpr double kCellClamp = 4.0e18;

}  // namespace

SpatialGrid::SpatialGrid(const PointSet& points, double cell)
    : points_(&points), dim_(points.dim()), cell_(cell) {
  if (!(cell > 0.0)) throw ArgumentError("SpatialGrid: cell side must be positive");
  if (dim_ < 1) dim_ = 1;
  // 3^d offsets in lexicographic order.
  std::vector<std::int64_t> offset(dim_, -1);
  while (true) {
    offsets_.push_back(offset);
    int k = dim_ - 1;
    while (k >= 0 && offset[k] == 1) {
      offset[k] = -1;
      --k;
    }
    if (k < 0) break;
    ++offset[k];
  }
}

SpatialGrid SpatialGrid::all(const PointSet& points, double cell) {
  SpatialGrid grid(points, cell);
  grid.insert_all();
  return grid;
}

void SpatialGrid::cell_of(std::span<const double> x, std::vector<std::int64_t>& key) const {
  key.resize(dim_);
  for (int k = 0; k < dim_; ++k) {
    double c = std::floor(x[k] / cell_);
    if (!(c > -kCellClamp)) c = -kCellClamp;
    if (c > kCellClamp) c = kCellClamp;
    key[k] = static_cast<std::int64_t>(c);
  }
}

void SpatialGrid::insert(std::uint32_t index) {
  std::vector<std::int64_t> key;
  cell_of((*points_)[index], key);
  cells_[key].push_back(index);
}

void SpatialGrid::insert_all() {
  for (std::size_t i = 0; i < points_->size(); ++i) insert(static_cast<std::uint32_t>(i));
}

std::vector<std::vector<std::int64_t>> SpatialGrid::occupied_cells() const {
  std::vector<std::vector<std::int64_t>> keys;
  keys.reserve(cells_.size());
  for (const auto& [key, bucket] : cells_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

const std::vector<std::uint32_t>* SpatialGrid::bucket(const std::vector<std::int64_t>& key) const {
  auto it = cells_.find(key);
  return it == cells_.end() ? nullptr : &it->second;
}

std::size_t SpatialGrid::KeyHash::operator()(const std::vector<std::int64_t>& key) const noexcept {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::int64_t v : key) h = mix(h, static_cast<std::uint64_t>(v));
  return static_cast<std::size_t>(h);
}

}  // namespace nrgg
