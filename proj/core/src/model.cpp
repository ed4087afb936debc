#include "nrgg/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nrgg/errors.hpp"
#include "nrgg/spatial_grid.hpp"

namespace nrgg {

PointCloud sample_cloud(std::size_t n, int d, std::uint64_t seed, const PointSampler& sampler,
                        double sigma, std::string domain) {
  if (n == 0) throw ArgumentError("sample: n must be >= 1");
  if (d < 1) throw ArgumentError("sample: d must be >= 1");
  if (!(sigma > 0.0)) throw ArgumentError("sample: sigma must be positive");
  UniformStream stream(splitmix64(seed));
  PointCloud cloud;
  cloud.points = sampler(n, d, stream);
  if (cloud.points.size() != n || cloud.points.dim() != d) {
    throw ArgumentError("sample: sampler returned the wrong shape");
  }
  cloud.sigma = sigma;
  cloud.seed = seed;
  cloud.domain = std::move(domain);
  return cloud;
}

PointCloud sample_uniform_cube(std::size_t n, int d, std::uint64_t seed) {
  auto uniform = [](std::size_t count, int dim, UniformStream& stream) {
    std::vector<double> coords(count * static_cast<std::size_t>(dim));
    for (double& c : coords) c = stream.next();
    return PointSet(dim, std::move(coords));
  };
  return sample_cloud(n, d, seed, uniform, 1.0, "uniform-cube[0,1]^" + std::to_string(d));
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Subcritical:
      return "SUBCRITICAL";
    case Regime::Thermodynamic:
      return "THERMO";
    case Regime::Supercritical:
      return "SUPERCRITICAL";
  }
  return "SUPERCRITICAL";
}

Regime parse_regime(const std::string& text) {
  if (text == "SUBCRITICAL" || text == "I") return Regime::Subcritical;
  if (text == "THERMO" || text == "THERMODYNAMIC" || text == "II") return Regime::Thermodynamic;
  if (text == "SUPERCRITICAL" || text == "III") return Regime::Supercritical;
  throw ArgumentError("unknown regime '" + text + "'");
}

double thermo_default_schedule(double n) {
  if (!(n > std::numbers::e)) throw ArgumentError("thermodynamic schedule needs n > e");
  return std::log(n) / std::log(std::log(n));
}

ThermoSchedule ThermoSchedule::parse(const std::string& descriptor) {
  ThermoSchedule s{descriptor};
  (void)s(1000.0);  // validates the descriptor
  return s;
}

double ThermoSchedule::operator()(double n) const {
  auto tail = [&](std::string_view prefix) -> double {
    const std::string rest = descriptor.substr(prefix.size());
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) {
      throw ArgumentError("bad thermodynamic schedule '" + descriptor + "'");
    }
    return v;
  };
  if (descriptor.empty() || descriptor == "default") return thermo_default_schedule(n);
  if (descriptor.rfind("scale:", 0) == 0) {
    const double c = tail("scale:");
    if (!(c > 0.0)) throw ArgumentError("thermodynamic scale must be positive");
    return c * thermo_default_schedule(n);
  }
  if (descriptor.rfind("logpow:", 0) == 0) {
    const double e = tail("logpow:");
    if (!(e > 0.0 && e < 1.0)) throw ArgumentError("thermodynamic logpow exponent must lie in (0,1)");
    if (!(n > 1.0)) throw ArgumentError("thermodynamic schedule needs n > 1");
    return std::pow(std::log(n), e);
  }
  throw ArgumentError("bad thermodynamic schedule '" + descriptor + "'");
}

void RegimeParams::validate() const {
  if (n == 0) throw ArgumentError("regime: n must be >= 1");
  if (d < 1) throw ArgumentError("regime: d must be >= 1");
  if (!(sigma > 0.0)) throw ArgumentError("regime: sigma must be positive");
  switch (regime) {
    case Regime::Subcritical:
      if (!(alpha > 0.0)) throw ArgumentError("subcritical regime needs alpha > 0");
      break;
    case Regime::Supercritical:
      if (!(t > 0.0)) throw ArgumentError("supercritical regime needs t > 0");
      break;
    case Regime::Thermodynamic:
      break;
  }
}

double radius_for_regime(const RegimeParams& params) {
  params.validate();
  const double n = static_cast<double>(params.n);
  const double inv_d = 1.0 / params.d;
  switch (params.regime) {
    case Regime::Subcritical:
      return std::pow(n, -(1.0 + params.alpha) * inv_d);
    case Regime::Thermodynamic:
      if (params.n < 3) throw ArgumentError("thermodynamic radius needs n >= 3");
      return std::pow(params.schedule(n) / n, inv_d);
    case Regime::Supercritical:
      if (params.n < 3) throw ArgumentError("supercritical radius needs n >= 3");
      return std::pow(params.t * std::log(n) / (params.sigma * n), inv_d);
  }
  return 0.0;
}

bool thermo_schedule_consistent(const ThermoSchedule& schedule, const std::vector<std::size_t>& n_list) {
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t n : n_list) {
    if (n < 3) return false;
    const double nd = static_cast<double>(n);
    const double g = schedule(nd);
    const double ratio = g / std::log(nd);
    if (!(g > 0.0) || !(ratio < 1.0) || ratio > previous * (1.0 + 1e-12)) return false;
    previous = ratio;
  }
  return true;
}

GeometricGraph build_geometric_graph(PointCloud cloud, double r, Norm norm) {
  if (!(r > 0.0)) throw ArgumentError("build_geometric_graph: r must be positive");
  const PointSet& pts = cloud.points;
  const std::size_t n = pts.size();
  const auto d = static_cast<std::size_t>(pts.dim());

  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<Vertex> targets;
  std::vector<Vertex> row;

  // Single cell when r spans the whole bounding box.
  double extent = 0.0;
  for (std::size_t k = 0; k < d && n > 0; ++k) {
    double lo = pts.data(0)[k];
    double hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, pts.data(i)[k]);
      hi = std::max(hi, pts.data(i)[k]);
    }
    extent = std::max(extent, hi - lo);
  }

  auto emit_row = [&](std::size_t i) {
    std::sort(row.begin(), row.end());
    targets.insert(targets.end(), row.begin(), row.end());
    offsets[i + 1] = targets.size();
    row.clear();
  };

  if (r >= extent) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && distance_unchecked(pts.data(i), pts.data(j), d, norm) <= r) {
          row.push_back(static_cast<Vertex>(j));
        }
      }
      emit_row(i);
    }
  } else {
    const SpatialGrid grid = SpatialGrid::all(pts, r);
    for (std::size_t i = 0; i < n; ++i) {
      grid.for_each_candidate(pts[i], [&](std::uint32_t j) {
        if (j != i && distance_unchecked(pts.data(i), pts.data(j), d, norm) <= r) row.push_back(j);
      });
      emit_row(i);
    }
  }

  GeometricGraph g;
  g.cloud = std::move(cloud);
  g.r = r;
  g.norm = norm;
  g.adjacency = Graph::from_csr(std::move(offsets), std::move(targets));
  return g;
}

GeometricGraph empty_geometric_graph(PointCloud cloud, Norm norm) {
  GeometricGraph g;
  const std::size_t n = cloud.n();
  g.cloud = std::move(cloud);
  g.r = 0.0;
  g.norm = norm;
  g.adjacency = Graph(n);
  return g;
}

PerturbedGraph::PerturbedGraph(std::shared_ptr<const GeometricGraph> base, double p, double q,
                               std::uint64_t seed, Graph adjacency, std::vector<EdgeLabel> labels)
    : base_(std::move(base)), p_(p), q_(q), seed_(seed), adjacency_(std::move(adjacency)),
      labels_(std::move(labels)) {
  if (!base_) throw ArgumentError("PerturbedGraph: missing base graph");
  if (labels_.size() != 2 * adjacency_.num_edges()) {
    throw ArgumentError("PerturbedGraph: label array does not match adjacency");
  }
  if (adjacency_.num_vertices() != base_->n()) {
    throw ArgumentError("PerturbedGraph: vertex count differs from base graph");
  }
}

EdgeLabel PerturbedGraph::label(Vertex u, Vertex v) const {
  if (u >= n() || v >= n()) throw ArgumentError("label: vertex out of range");
  const std::size_t s = adjacency_.slot(u, v);
  if (s == Graph::npos) throw ArgumentError("label: not an edge");
  return labels_[adjacency_.offset(u) + s];
}

std::size_t PerturbedGraph::count(EdgeLabel which) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), which)) / 2;
}

namespace {

struct LabeledEdge {
  Vertex u;
  Vertex v;
  EdgeLabel label;
};

// Symmetric CSR plus slot labels from upper-triangle edges sorted by (u, v).
std::pair<Graph, std::vector<EdgeLabel>> assemble(std::size_t n, const std::vector<LabeledEdge>& edges) {
  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + degree[v];
  std::vector<Vertex> targets(offsets[n]);
  std::vector<EdgeLabel> labels(offsets[n]);
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  // Lower entries of row v come from edges (u, v) with u < v, which appear in
  // increasing u; upper entries come from (v, w) in increasing w. Writing the
  // lower pass before the upper pass keeps every row sorted.
  for (const auto& e : edges) {
    targets[fill[e.v]] = e.u;
    labels[fill[e.v]++] = e.label;
  }
  for (const auto& e : edges) {
    targets[fill[e.u]] = e.v;
    labels[fill[e.u]++] = e.label;
  }
  return {Graph::from_csr(std::move(offsets), std::move(targets)), std::move(labels)};
}

std::uint64_t geometric_skip(UniformStream& stream, double log_one_minus_q) {
  const double g = std::floor(std::log(stream.next_open_zero()) / log_one_minus_q);
  constexpr double kCap = 4.0e18;
  return g >= kCap ? static_cast<std::uint64_t>(kCap) : static_cast<std::uint64_t>(g);
}

}  // namespace

PerturbedGraph perturb(std::shared_ptr<const GeometricGraph> base, double p, double q, std::uint64_t seed) {
  if (!base) throw ArgumentError("perturb: missing base graph");
  if (!(p >= 0.0 && p < 1.0)) throw ArgumentError("perturb: p must lie in [0,1)");
  if (!(q >= 0.0 && q < 1.0)) throw ArgumentError("perturb: q must lie in [0,1)");
  const Graph& g = base->adjacency;
  const std::size_t n = g.num_vertices();
  std::vector<LabeledEdge> edges;

  if (n <= kPairwiseDrawLimit || q > kJumpSamplingMaxQ) {
    UniformStream stream(mix(seed, 0));
    for (Vertex i = 0; i < n; ++i) {
      auto nbrs = g.neighbors(i);
      auto it = std::upper_bound(nbrs.begin(), nbrs.end(), i);
      for (Vertex j = i + 1; j < n; ++j) {
        const double u = stream.next();
        const bool is_base = it != nbrs.end() && *it == j;
        if (is_base) {
          ++it;
          if (u >= p) edges.push_back({i, j, EdgeLabel::GeometricKept});
        } else if (u < q) {
          edges.push_back({i, j, EdgeLabel::Inserted});
        }
      }
    }
  } else {
    UniformStream deletions(mix(seed, 0));
    UniformStream insertions(mix(seed, 1));
    std::vector<LabeledEdge> kept;
    g.for_each_edge([&](Vertex u, Vertex v) {
      if (deletions.next() >= p) kept.push_back({u, v, EdgeLabel::GeometricKept});
    });
    std::vector<LabeledEdge> inserted;
    if (q > 0.0) {
      const double log_one_minus_q = std::log1p(-q);
      std::uint64_t skip = geometric_skip(insertions, log_one_minus_q);
      for (Vertex i = 0; i + 1 < n; ++i) {
        auto nbrs = g.neighbors(i);
        auto it = std::upper_bound(nbrs.begin(), nbrs.end(), i);
        const std::size_t upper_base = static_cast<std::size_t>(nbrs.end() - it);
        const std::size_t row_nonedges = (n - 1 - i) - upper_base;
        if (skip >= row_nonedges) {
          skip -= row_nonedges;
          continue;
        }
        std::size_t j = i + 1;
        while (j < n) {
          const std::size_t next_base = it != nbrs.end() ? *it : n;
          const std::size_t gap = next_base - j;
          if (skip < gap) {
            const auto target = static_cast<Vertex>(j + skip);
            inserted.push_back({i, target, EdgeLabel::Inserted});
            j = target + 1;
            skip = geometric_skip(insertions, log_one_minus_q);
          } else {
            skip -= gap;
            if (next_base >= n) break;
            j = next_base + 1;
            ++it;
          }
        }
      }
    }
    edges.resize(kept.size() + inserted.size());
    std::merge(kept.begin(), kept.end(), inserted.begin(), inserted.end(), edges.begin(),
               [](const LabeledEdge& a, const LabeledEdge& b) {
                 return a.u != b.u ? a.u < b.u : a.v < b.v;
               });
  }

  auto [adjacency, labels] = assemble(n, edges);
  return PerturbedGraph(std::move(base), p, q, seed, std::move(adjacency), std::move(labels));
}

std::vector<Edge> long_edges(const PerturbedGraph& g) {
  const GeometricGraph& base = g.base();
  const double limit = 3.0 * base.r;
  const auto d = static_cast<std::size_t>(base.cloud.d());
  std::vector<Edge> out;
  g.graph().for_each_edge([&](Vertex u, Vertex v) {
    if (distance_unchecked(base.cloud.points.data(u), base.cloud.points.data(v), d, base.norm) > limit) {
      out.emplace_back(u, v);
    }
  });
  return out;
}

}  // namespace nrgg
