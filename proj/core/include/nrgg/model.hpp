#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "nrgg/geometry.hpp"
#include "nrgg/graph.hpp"
#include "nrgg/rng.hpp"

namespace nrgg {

struct PointCloud {
  PointSet points;
  double sigma = 1.0;  // maximum density of the sampling distribution
  std::uint64_t seed = 0;
  std::string domain = "uniform-cube[0,1]^d";

  int d() const noexcept { return points.dim(); }
  std::size_t n() const noexcept { return points.size(); }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

/// Pluggable sampler: fills `n` points of dimension `d` from the stream.
using PointSampler = std::function<PointSet(std::size_t n, int d, UniformStream& stream)>;

/// n i.i.d. uniform points in [0,1]^d, deterministic in `seed`; sigma = 1.
PointCloud sample_uniform_cube(std::size_t n, int d, std::uint64_t seed);

/// Generic entry for non-uniform densities; `sigma` must be the sampler's maximum density.
PointCloud sample_cloud(std::size_t n, int d, std::uint64_t seed, const PointSampler& sampler,
                        double sigma, std::string domain);

enum class Regime { Subcritical, Thermodynamic, Supercritical };

std::string to_string(Regime regime);
Regime parse_regime(const std::string& text);

/// g(n) = n r^d for the thermodynamic regime. The descriptor is one of
///   "default"      g(n) = ln n / ln ln n
///   "scale:<c>"    g(n) = c ln n / ln ln n
///   "logpow:<e>"   g(n) = (ln n)^e, 0 < e < 1
struct ThermoSchedule {
  std::string descriptor = "default";

  double operator()(double n) const;
  static ThermoSchedule parse(const std::string& descriptor);
};

/// g(n) = ln n / ln ln n evaluated at real n (requires n > e).
double thermo_default_schedule(double n);

struct RegimeParams {
  Regime regime = Regime::Supercritical;
  double alpha = 0.0;  // subcritical exponent: n r^d = n^{-alpha}
  double t = 0.0;      // supercritical limit of sigma n r^d / ln n
  ThermoSchedule schedule;
  std::size_t n = 0;
  int d = 2;
  Norm norm = Norm::L2;
  double sigma = 1.0;

  /// Throws ArgumentError when a regime parameter is out of range.
  void validate() const;
};

/// Connection radius realising the regime at the given n.
double radius_for_regime(const RegimeParams& params);

/// Checks that the thermodynamic schedule satisfies 0 < g(n) < ln n on every n
/// of a sweep and that g(n)/ln n is non-increasing along it.
bool thermo_schedule_consistent(const ThermoSchedule& schedule, const std::vector<std::size_t>& n_list);

struct GeometricGraph {
  PointCloud cloud;
  double r = 0.0;
  Norm norm = Norm::L2;
  Graph adjacency;

  std::size_t n() const noexcept { return cloud.n(); }
};

/// Exact r-neighbourhood graph via grid bucketing with cell side r.
GeometricGraph build_geometric_graph(PointCloud cloud, double r, Norm norm);

/// Graph with no geometric edges (used as the base of pure Erdős–Rényi samples).
GeometricGraph empty_geometric_graph(PointCloud cloud, Norm norm);

enum class EdgeLabel : std::uint8_t { GeometricKept, Inserted };

class PerturbedGraph {
 public:
  PerturbedGraph(std::shared_ptr<const GeometricGraph> base, double p, double q, std::uint64_t seed,
                 Graph adjacency, std::vector<EdgeLabel> labels);

  const GeometricGraph& base() const noexcept { return *base_; }
  std::shared_ptr<const GeometricGraph> base_ptr() const noexcept { return base_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const Graph& graph() const noexcept { return adjacency_; }
  std::size_t n() const noexcept { return adjacency_.num_vertices(); }

  /// Label of an existing edge; ArgumentError if (u, v) is not an edge.
  EdgeLabel label(Vertex u, Vertex v) const;
  /// Labels parallel to the CSR target array of graph().
  const std::vector<EdgeLabel>& slot_labels() const noexcept { return labels_; }

  std::size_t count(EdgeLabel which) const;

 private:
  std::shared_ptr<const GeometricGraph> base_;
  double p_;
  double q_;
  std::uint64_t seed_;
  Graph adjacency_;
  std::vector<EdgeLabel> labels_;
};

/// Largest n for which perturbation draws one uniform per unordered pair.
inline constexpr std::size_t kPairwiseDrawLimit = std::size_t{1} << 13;
/// Above kPairwiseDrawLimit, insertions use jump sampling when q <= this.
inline constexpr double kJumpSamplingMaxQ = 1e-2;

/// (p, q)-perturbation. Draw order:
///  * n <= 2^13 or q > 1e-2: one uniform per pair (i < j) in lexicographic
///    order from stream mix(seed, 0); a base edge is kept iff u >= p, a
///    non-edge is inserted iff u < q.
///  * otherwise: one uniform per base edge in sorted edge order from
///    stream mix(seed, 0) (kept iff u >= p), and geometric jumps over the
///    lexicographic non-edge index from stream mix(seed, 1).
PerturbedGraph perturb(std::shared_ptr<const GeometricGraph> base, double p, double q, std::uint64_t seed);

/// Current edges of g whose endpoints are more than 3r apart, sorted.
std::vector<Edge> long_edges(const PerturbedGraph& g);

}  // namespace nrgg
