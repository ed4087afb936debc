#include "nrgg/graph.hpp"

#include <algorithm>
#include <string>

#include "nrgg/errors.hpp"

namespace nrgg {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : edges) {
    if (a == b) throw ArgumentError("graph: self-loop at vertex " + std::to_string(a));
    if (a >= n || b >= n) throw ArgumentError("graph: edge endpoint out of range");
    ++degree[a];
    ++degree[b];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    g.targets_[fill[a]++] = b;
    g.targets_[fill[b]++] = a;
  }
  // Sort and deduplicate each list, then compact.
  std::vector<std::size_t> new_offsets(n + 1, 0);
  std::size_t write = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    new_offsets[v] = write;
    for (auto it = first; it != last; ++it) g.targets_[write++] = *it;
  }
  new_offsets[n] = write;
  g.targets_.resize(write);
  g.targets_.shrink_to_fit();
  g.offsets_ = std::move(new_offsets);
  return g;
}

Graph Graph::from_csr(std::vector<std::size_t> offsets, std::vector<Vertex> targets) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != targets.size()) {
    throw ArgumentError("graph: malformed CSR offsets");
  }
  const std::size_t n = offsets.size() - 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets[v + 1] < offsets[v]) throw ArgumentError("graph: malformed CSR offsets");
    for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) {
      if (targets[k] >= n || targets[k] == v) throw ArgumentError("graph: bad neighbour entry");
      if (k > offsets[v] && targets[k] <= targets[k - 1]) {
        throw ArgumentError("graph: neighbour list not strictly increasing");
      }
    }
  }
  Graph g;
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(targets);
  return g;
}

std::size_t Graph::slot(Vertex u, Vertex v) const noexcept {
  auto list = neighbors(u);
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it == list.end() || *it != v) return npos;
  return static_cast<std::size_t>(it - list.begin());
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  return slot(u, v) != npos;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for_each_edge([&](Vertex u, Vertex v) { out.emplace_back(u, v); });
  return out;
}

std::vector<Vertex> intersect_sorted(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<Vertex> out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace nrgg
