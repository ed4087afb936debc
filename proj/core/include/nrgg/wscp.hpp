#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "nrgg/geometry.hpp"
#include "nrgg/model.hpp"

namespace nrgg {

struct PackingFamily {
  double delta = 0.0;
  std::vector<std::vector<Vertex>> rounds;  // centers per round, ascending
};

/// Greedy rounds over the uncovered points in index order: a point becomes a
/// center when it is more than 2δ from every center chosen earlier in the
/// round; after the pass every point within δ of a chosen center is covered.
PackingFamily greedy_packing_family(const PointSet& points, double delta, Norm norm);
/// Same, restricted to `subset` (indices into `points`).
PackingFamily greedy_packing_family(const PointSet& points, std::span<const Vertex> subset, double delta, Norm norm);

struct CliqueBlock {
  Vertex anchor = 0;
  std::vector<Vertex> members;  // ascending
};

struct CliquePartitionFamily {
  double r = 0.0;
  std::vector<std::vector<CliqueBlock>> parts;  // P_i as its list of cliques

  std::size_t size() const noexcept { return parts.size(); }
};

/// Two-level construction: r/2-packings of V, then r-packings of each
/// level-one center set; each level-two round gives one part whose cliques
/// are the r/2-balls around its centers.
CliquePartitionFamily build_wscp(const GeometricGraph& g);

struct WscpReport {
  bool coverage = false;
  bool clique_radius = false;
  bool separation = false;
  bool geometric_cliques = false;
  std::size_t size = 0;

  bool all_ok() const noexcept { return coverage && clique_radius && separation && geometric_cliques; }
};

/// Checks the family conditions against g. ArgumentError if the family
/// refers to vertices outside g.
WscpReport verify_wscp(const CliquePartitionFamily& family, const GeometricGraph& g);

/// Edges of g joining two different cliques of the same part.
std::size_t cross_clique_edges(const CliquePartitionFamily& family, const GeometricGraph& g);

/// Lines `P <i> C <j> anchor=<v> members=<v1,v2,...>`.
void write_wscp(std::ostream& out, const CliquePartitionFamily& family);

}  // namespace nrgg
