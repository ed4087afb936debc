#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "nrgg/geometry.hpp"

namespace nrgg {

/// Uniform bucketing of a point set into axis-aligned cells of side `cell`.
///
/// Any two points at distance <= cell (under L1, L2 or LInf, all of which
/// dominate the per-axis difference) land in cells whose integer coordinates
/// differ by at most one on every axis, so visiting the 3^d block around a
/// query cell enumerates a superset of its cell-radius neighbourhood.
class SpatialGrid {
 public:
  SpatialGrid(const PointSet& points, double cell);

  /// Buckets all points (insert_all) or only the indices inserted later.
  static SpatialGrid all(const PointSet& points, double cell);

  void insert(std::uint32_t index);
  void insert_all();

  /// Calls f(index) for every bucketed point in the 3^d cell block around x.
  template <class F>
  void for_each_candidate(std::span<const double> x, F&& f) const {
    std::vector<std::int64_t> base;
    cell_of(x, base);
    std::vector<std::int64_t> probe(base.size());
    for (const auto& offset : offsets_) {
      for (int k = 0; k < dim_; ++k) probe[k] = base[k] + offset[k];
      auto it = cells_.find(probe);
      if (it == cells_.end()) continue;
      for (std::uint32_t idx : it->second) f(idx);
    }
  }

  double cell() const noexcept { return cell_; }
  const PointSet& points() const noexcept { return *points_; }

  /// Occupied cells, for callers that iterate cell pairs.
  std::vector<std::vector<std::int64_t>> occupied_cells() const;
  const std::vector<std::uint32_t>* bucket(const std::vector<std::int64_t>& key) const;
  const std::vector<std::vector<std::int64_t>>& neighbor_offsets() const noexcept { return offsets_; }
  void cell_of(std::span<const double> x, std::vector<std::int64_t>& key) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept;
  };

  const PointSet* points_;
  int dim_;
  double cell_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::uint32_t>, KeyHash> cells_;
  std::vector<std::vector<std::int64_t>> offsets_;
};

}  // namespace nrgg
