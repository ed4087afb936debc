#include "nrgg/wscp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "nrgg/errors.hpp"
#include "nrgg/spatial_grid.hpp"

namespace nrgg {

PackingFamily greedy_packing_family(const PointSet& points, std::span<const Vertex> subset, double delta, Norm norm) {
  if (!(delta > 0.0)) throw ArgumentError("packing: delta must be positive");
  PackingFamily family;
  family.delta = delta;
  const std::size_t d = static_cast<std::size_t>(points.dim());
  std::vector<Vertex> uncovered(subset.begin(), subset.end());
  std::sort(uncovered.begin(), uncovered.end());
  for (Vertex v : uncovered) {
    if (v >= points.size()) throw ArgumentError("packing: index out of range");
  }

  while (!uncovered.empty()) {
    SpatialGrid grid(points, 2.0 * delta);
    std::vector<Vertex> centers;
    for (Vertex v : uncovered) {
      bool clash = false;
      grid.for_each_candidate(points[v], [&](std::uint32_t c) {
        if (!clash && distance_unchecked(points.data(v), points.data(c), d, norm) <= 2.0 * delta) clash = true;
      });
      if (!clash) {
        centers.push_back(v);
        grid.insert(v);
      }
    }
    std::vector<Vertex> still;
    for (Vertex v : uncovered) {
      bool covered = false;
      grid.for_each_candidate(points[v], [&](std::uint32_t c) {
        if (!covered && distance_unchecked(points.data(v), points.data(c), d, norm) <= delta) covered = true;
      });
      if (!covered) still.push_back(v);
    }
    family.rounds.push_back(std::move(centers));
    uncovered = std::move(still);
  }
  return family;
}

PackingFamily greedy_packing_family(const PointSet& points, double delta, Norm norm) {
  std::vector<Vertex> all(points.size());
  std::iota(all.begin(), all.end(), Vertex{0});
  return greedy_packing_family(points, all, delta, norm);
}

CliquePartitionFamily build_wscp(const GeometricGraph& g) {
  const PointSet& pts = g.cloud.points;
  const double r = g.r;
  if (!(r > 0.0)) throw ArgumentError("wscp: graph radius must be positive");
  const std::size_t d = static_cast<std::size_t>(pts.dim());
  CliquePartitionFamily family;
  family.r = r;
  const double half = 0.5 * r;
  const SpatialGrid all = SpatialGrid::all(pts, half);

  std::vector<double> best_dist(pts.size(), std::numeric_limits<double>::infinity());
  std::vector<std::int32_t> owner(pts.size(), -1);

  const PackingFamily level1 = greedy_packing_family(pts, half, g.norm);
  for (const auto& vi : level1.rounds) {
    const PackingFamily level2 = greedy_packing_family(pts, vi, r, g.norm);
    for (const auto& centers : level2.rounds) {
      // Nearest-center assignment; ties go to the lower center index.
      std::vector<Vertex> touched;
      for (std::size_t c = 0; c < centers.size(); ++c) {
        const Vertex anchor = centers[c];
        all.for_each_candidate(pts[anchor], [&](std::uint32_t v) {
          const double dist = distance_unchecked(pts.data(anchor), pts.data(v), d, g.norm);
          if (dist > half) return;
          if (owner[v] < 0) touched.push_back(v);
          if (owner[v] < 0 || dist < best_dist[v]) {
            best_dist[v] = dist;
            owner[v] = static_cast<std::int32_t>(c);
          }
        });
      }
      std::vector<CliqueBlock> part(centers.size());
      for (std::size_t c = 0; c < centers.size(); ++c) part[c].anchor = centers[c];
      for (Vertex v : touched) {
        part[static_cast<std::size_t>(owner[v])].members.push_back(v);
        owner[v] = -1;
        best_dist[v] = std::numeric_limits<double>::infinity();
      }
      for (auto& block : part) std::sort(block.members.begin(), block.members.end());
      family.parts.push_back(std::move(part));
    }
  }
  return family;
}

WscpReport verify_wscp(const CliquePartitionFamily& family, const GeometricGraph& g) {
  const PointSet& pts = g.cloud.points;
  const std::size_t n = pts.size();
  const std::size_t d = static_cast<std::size_t>(pts.dim());
  for (const auto& part : family.parts) {
    for (const auto& block : part) {
      if (block.anchor >= n) throw ArgumentError("verify_wscp: anchor outside the graph's vertex set");
      for (Vertex v : block.members) {
        if (v >= n) throw ArgumentError("verify_wscp: member outside the graph's vertex set");
      }
    }
  }
  WscpReport report;
  report.size = family.size();
  const double r = g.r;

  std::vector<bool> seen(n, false);
  for (const auto& part : family.parts) {
    for (const auto& block : part) {
      for (Vertex v : block.members) seen[v] = true;
    }
  }
  report.coverage = std::find(seen.begin(), seen.end(), false) == seen.end();

  report.clique_radius = true;
  for (const auto& part : family.parts) {
    for (const auto& block : part) {
      for (Vertex v : block.members) {
        if (distance_unchecked(pts.data(block.anchor), pts.data(v), d, g.norm) > 0.5 * r) report.clique_radius = false;
      }
    }
  }

  // Separation: within a part, any two points of different cliques are more
  // than r apart. A vertex listed in two cliques has distance 0 to itself.
  report.separation = true;
  std::vector<std::int32_t> label(n, -1);
  for (const auto& part : family.parts) {
    SpatialGrid grid(pts, r > 0.0 ? r : 1.0);
    std::vector<Vertex> listed;
    for (std::size_t c = 0; c < part.size() && report.separation; ++c) {
      for (Vertex v : part[c].members) {
        if (label[v] >= 0 && label[v] != static_cast<std::int32_t>(c)) report.separation = false;
        if (label[v] < 0) {
          label[v] = static_cast<std::int32_t>(c);
          listed.push_back(v);
          grid.insert(v);
        }
      }
    }
    for (Vertex v : listed) {
      if (!report.separation) break;
      grid.for_each_candidate(pts[v], [&](std::uint32_t w) {
        if (label[w] != label[v] && distance_unchecked(pts.data(v), pts.data(w), d, g.norm) <= r) {
          report.separation = false;
        }
      });
    }
    for (Vertex v : listed) label[v] = -1;
  }

  report.geometric_cliques = true;
  for (const auto& part : family.parts) {
    for (const auto& block : part) {
      const auto& m = block.members;
      for (std::size_t a = 0; a < m.size() && report.geometric_cliques; ++a) {
        for (std::size_t b = a + 1; b < m.size(); ++b) {
          if (!g.adjacency.has_edge(m[a], m[b])) {
            report.geometric_cliques = false;
            break;
          }
        }
      }
    }
  }
  return report;
}

std::size_t cross_clique_edges(const CliquePartitionFamily& family, const GeometricGraph& g) {
  const std::size_t n = g.n();
  std::vector<std::int32_t> label(n, -1);
  std::size_t count = 0;
  for (const auto& part : family.parts) {
    for (std::size_t c = 0; c < part.size(); ++c) {
      for (Vertex v : part[c].members) {
        if (v >= n) throw ArgumentError("cross_clique_edges: vertex outside the graph");
        label[v] = static_cast<std::int32_t>(c);
      }
    }
    for (const auto& block : part) {
      for (Vertex v : block.members) {
        for (Vertex w : g.adjacency.neighbors(v)) {
          if (w > v && label[w] >= 0 && label[w] != label[v]) ++count;
        }
      }
    }
    for (const auto& block : part) {
      for (Vertex v : block.members) label[v] = -1;
    }
  }
  return count;
}

void write_wscp(std::ostream& out, const CliquePartitionFamily& family) {
  for (std::size_t i = 0; i < family.parts.size(); ++i) {
    const auto& part = family.parts[i];
    for (std::size_t j = 0; j < part.size(); ++j) {
      out << "P " << i << " C " << j << " anchor=" << part[j].anchor << " members=";
      for (std::size_t k = 0; k < part[j].members.size(); ++k) {
        if (k) out << ',';
        out << part[j].members[k];
      }
      out << '\n';
    }
  }
}

}  // namespace nrgg
