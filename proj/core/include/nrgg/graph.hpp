#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace nrgg {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;  // always stored with first < second

/// Immutable simple undirected graph in compressed sparse row form.
/// Neighbour lists are strictly increasing; there are no self-loops.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : offsets_(n + 1, 0) {}

  /// Builds from an edge list; duplicates and orientation are normalised,
  /// self-loops and out-of-range endpoints are rejected with ArgumentError.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  /// Adopts prebuilt CSR arrays. Each list must be strictly increasing and
  /// loop-free; symmetry is the caller's responsibility.
  static Graph from_csr(std::vector<std::size_t> offsets, std::vector<Vertex> targets);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const noexcept;

  /// Position of v inside neighbors(u), or npos.
  std::size_t slot(Vertex u, Vertex v) const noexcept;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  template <class F>
  void for_each_edge(F&& f) const {
    const auto n = static_cast<Vertex>(num_vertices());
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v : neighbors(u)) {
        if (v > u) f(u, v);
      }
    }
  }

  /// Offset of vertex v's list in the flat target array.
  std::size_t offset(Vertex v) const noexcept { return offsets_[v]; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

/// Sorted intersection of two strictly increasing lists.
std::vector<Vertex> intersect_sorted(std::span<const Vertex> a, std::span<const Vertex> b);

}  // namespace nrgg
