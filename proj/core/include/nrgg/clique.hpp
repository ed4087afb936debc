#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nrgg/graph.hpp"
#include "nrgg/model.hpp"

namespace nrgg {

struct CliqueResult {
  std::size_t size = 0;
  std::vector<Vertex> witness;  // sorted ascending
};

struct CliqueOptions {
  /// Branch-and-bound nodes allowed per call; BudgetExceeded when exhausted.
  std::uint64_t node_budget = 1'000'000'000ULL;
};

/// Exact maximum clique.
///
/// Vertices are processed in reverse degeneracy order; for each vertex v the
/// search is restricted to v plus its neighbours removed after it, solved by
/// bitset branch and bound with a greedy colouring bound (BBMC style). Only
/// vertices whose colour can still beat the incumbent are branched on.
/// The witness is the first maximum clique found in that order.
CliqueResult max_clique(const Graph& g, const CliqueOptions& options = {});

/// Maximum clique of the subgraph induced by `vertices` (any order, no duplicates).
CliqueResult max_clique_induced(const Graph& g, std::span<const Vertex> vertices,
                                const CliqueOptions& options = {});

/// True iff the induced subgraph on `vertices` contains a clique of size >= k.
bool has_clique_of_size(const Graph& g, std::span<const Vertex> vertices, std::size_t k,
                        const CliqueOptions& options = {});

/// 2 + ω(G[N(u) ∩ N(v)]). ArgumentError if (u, v) is not an edge.
std::size_t edge_clique_number(const Graph& g, Vertex u, Vertex v, const CliqueOptions& options = {});

/// ω_{u,v}(g) >= k, decided without computing the exact value.
bool edge_clique_at_least(const Graph& g, Vertex u, Vertex v, std::size_t k, const CliqueOptions& options = {});

/// Whether geometric_clique has a sweep for this (d, norm): every norm in
/// d = 1 and LInf in any dimension. Balls there are boxes, and pairwise
/// intersecting boxes share a point, so cliques are exactly the point sets
/// fitting in a closed cube of side r.
bool geometric_clique_sweep_supported(int d, Norm norm) noexcept;

/// ω of the unperturbed geometric graph. Uses the cube sweep when supported
/// (no branch and bound, exact under the same comparisons as the graph
/// builder), else max_clique on the adjacency.
CliqueResult geometric_clique(const GeometricGraph& g, const CliqueOptions& options = {});

/// Degeneracy (smallest-last) order: order[i] is the i-th vertex removed.
std::vector<Vertex> degeneracy_order(const Graph& g, std::size_t* degeneracy = nullptr);

struct DenoiseResult {
  Graph retained;
  std::vector<Edge> removed;  // sorted
  double threshold = 0.0;
};

/// Removes every edge with edge_clique_number < threshold.
DenoiseResult denoise(const Graph& g, double threshold, const CliqueOptions& options = {});

/// Threshold spec: a number or "auto".
struct DenoiseThreshold {
  bool automatic = false;
  double value = 0.0;

  static DenoiseThreshold parse(const std::string& text);
};

/// AUTO uses half of the regime lower-bound prediction for ω evaluated at g's
/// parameters; this needs `regime`, otherwise ArgumentError. The heuristic
/// nature of the choice is deliberate: the separating constants are unknown.
DenoiseResult denoise(const PerturbedGraph& g, const DenoiseThreshold& threshold,
                      const std::optional<RegimeParams>& regime, const CliqueOptions& options = {});

/// Threshold that AUTO resolves to for g under `regime`.
double auto_denoise_threshold(const PerturbedGraph& g, const RegimeParams& regime);

struct DenoiseScore {
  double precision = 1.0;
  double recall = 1.0;
  std::size_t true_positives = 0;
};

/// Scores removed edges against the long edges of g (the ground truth).
DenoiseScore score_denoise(const std::vector<Edge>& removed, const std::vector<Edge>& long_edge_set);

}  // namespace nrgg
