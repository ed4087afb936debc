#include "nrgg/clique.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "nrgg/errors.hpp"
#include "nrgg/theory.hpp"

namespace nrgg {

namespace {

using Word = std::uint64_t;

// Dense adjacency over local ids 0..k-1, with a BBMC-style search.
class BitsetGraph {
 public:
  explicit BitsetGraph(std::size_t k) : k_(k), words_((k + 63) / 64), rows_(k * words_, 0) {}

  std::size_t size() const noexcept { return k_; }
  std::size_t words() const noexcept { return words_; }

  void add_edge(std::size_t a, std::size_t b) noexcept {
    rows_[a * words_ + b / 64] |= Word{1} << (b % 64);
    rows_[b * words_ + a / 64] |= Word{1} << (a % 64);
  }
  const Word* row(std::size_t a) const noexcept { return rows_.data() + a * words_; }

  /// Smallest-last order; perm[new] = old with new index 0 the last removed.
  std::vector<std::uint32_t> smallest_last() const {
    std::vector<std::uint32_t> deg(k_);
    std::uint32_t max_deg = 0;
    for (std::size_t a = 0; a < k_; ++a) {
      std::uint32_t c = 0;
      for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::uint32_t>(std::popcount(row(a)[w]));
      deg[a] = c;
      max_deg = std::max(max_deg, c);
    }
    // Bucket lists by current degree; ties leave in index order of insertion.
    std::vector<std::int32_t> head(max_deg + 1, -1), next(k_, -1), prev(k_, -1);
    auto push = [&](std::size_t a) {
      const std::int32_t h = head[deg[a]];
      next[a] = h;
      prev[a] = -1;
      if (h >= 0) prev[static_cast<std::size_t>(h)] = static_cast<std::int32_t>(a);
      head[deg[a]] = static_cast<std::int32_t>(a);
    };
    auto unlink = [&](std::size_t a) {
      if (prev[a] >= 0) {
        next[static_cast<std::size_t>(prev[a])] = next[a];
      } else {
        head[deg[a]] = next[a];
      }
      if (next[a] >= 0) prev[static_cast<std::size_t>(next[a])] = prev[a];
    };
    for (std::size_t a = k_; a-- > 0;) push(a);
    std::vector<Word> alive(words_, 0);
    for (std::size_t a = 0; a < k_; ++a) alive[a / 64] |= Word{1} << (a % 64);
    std::vector<std::uint32_t> perm(k_);
    std::uint32_t low = 0;
    for (std::size_t step = 0; step < k_; ++step) {
      while (head[low] < 0) ++low;
      const std::size_t pick = static_cast<std::size_t>(head[low]);
      unlink(pick);
      alive[pick / 64] &= ~(Word{1} << (pick % 64));
      perm[k_ - 1 - step] = static_cast<std::uint32_t>(pick);
      const Word* r = row(pick);
      for (std::size_t w = 0; w < words_; ++w) {
        Word m = r[w] & alive[w];
        while (m) {
          const std::size_t b = w * 64 + static_cast<std::size_t>(std::countr_zero(m));
          unlink(b);
          --deg[b];
          push(b);
          m &= m - 1;
        }
      }
      if (low > 0) --low;
    }
    return perm;
  }

  BitsetGraph permuted(const std::vector<std::uint32_t>& perm) const {
    std::vector<std::uint32_t> inv(k_);
    for (std::size_t i = 0; i < k_; ++i) inv[perm[i]] = static_cast<std::uint32_t>(i);
    BitsetGraph out(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      const Word* r = row(perm[i]);
      Word* dst = out.rows_.data() + i * words_;
      for (std::size_t w = 0; w < words_; ++w) {
        Word m = r[w];
        while (m) {
          const std::size_t j = inv[w * 64 + std::countr_zero(m)];
          dst[j / 64] |= Word{1} << (j % 64);
          m &= m - 1;
        }
      }
    }
    return out;
  }

 private:
  std::size_t k_;
  std::size_t words_;
  std::vector<Word> rows_;
};

class Search {
 public:
  Search(const BitsetGraph& g, std::uint64_t& nodes, std::uint64_t budget)
      : g_(g), words_(g.words()), nodes_(nodes), budget_(budget) {}

  /// Looks for a clique in `start` of size > floor - prefix (so that
  /// prefix + size > floor). Stops early once prefix + size >= target.
  /// Returns true if one was found; the largest found is in best().
  bool run(const std::vector<Word>& start, std::size_t prefix, std::size_t floor, std::size_t target) {
    prefix_ = prefix;
    best_ = floor;
    target_ = target;
    found_ = false;
    stop_ = false;
    current_.clear();
    best_set_.clear();
    bool any = false;
    for (Word w : start) any |= (w != 0);
    if (!any) return false;
    // Depth never exceeds the vertex count, so levels_ is sized once and
    // references into it stay valid during recursion.
    if (levels_.size() < g_.size() + 2) levels_.resize(g_.size() + 2);
    levels_[0].p.assign(start.begin(), start.end());
    expand(0);
    return found_;
  }

  const std::vector<std::uint32_t>& best() const noexcept { return best_set_; }

 private:
  struct Level {
    std::vector<Word> p, u, q, classes;
    std::vector<std::uint32_t> order, color;
  };

  // Searches levels_[depth].p.
  void expand(std::size_t depth) {
    if (++nodes_ > budget_) throw BudgetExceeded("clique search exceeded the node budget");
    Level& lv = levels_[depth];
    lv.u = lv.p;
    lv.order.clear();
    lv.color.clear();

    const std::size_t have = prefix_ + current_.size();
    const std::size_t kmin = best_ >= have ? best_ - have + 1 : 1;

    // Greedy sequential colouring in index order; only colours >= kmin are
    // kept. A vertex that would open a kept colour is first re-numbered into
    // a lower class when that needs at most one other vertex to move.
    std::size_t col = 0;
    std::vector<Word>& q = lv.q;
    q.resize(words_);
    const std::size_t low = kmin > 1 ? kmin - 1 : 0;  // classes that are not branched on
    lv.classes.assign(low * words_, 0);
    std::size_t first = 0;
    for (;;) {
      while (first < words_ && lv.u[first] == 0) ++first;
      if (first == words_) break;
      ++col;
      std::copy(lv.u.begin(), lv.u.end(), q.begin());
      for (std::size_t w = first; w < words_; ++w) {
        while (q[w]) {
          const std::size_t v = w * 64 + std::countr_zero(q[w]);
          const Word bit = ~(Word{1} << (v % 64));
          q[w] &= bit;
          lv.u[w] &= bit;
          if (col >= kmin && renumber(lv, v, low)) continue;
          const Word* r = g_.row(v);
          for (std::size_t x = w; x < words_; ++x) q[x] &= ~r[x];
          if (col >= kmin) {
            lv.order.push_back(static_cast<std::uint32_t>(v));
            lv.color.push_back(static_cast<std::uint32_t>(col));
          } else {
            lv.classes[(col - 1) * words_ + w] |= ~bit;
          }
        }
      }
    }

    std::vector<Word>& child = levels_[depth + 1].p;
    child.resize(words_);
    for (std::size_t i = lv.order.size(); i-- > 0;) {
      if (prefix_ + current_.size() + lv.color[i] <= best_) return;
      const std::uint32_t v = lv.order[i];
      const Word* r = g_.row(v);
      std::size_t size = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        child[w] = lv.p[w] & r[w];
        size += static_cast<std::size_t>(std::popcount(child[w]));
      }
      current_.push_back(v);
      if (size == 0) {
        if (prefix_ + current_.size() > best_) record();
      } else if (prefix_ + current_.size() + size > best_) {
        expand(depth + 1);
      }
      current_.pop_back();
      if (stop_) return;
      lv.p[v / 64] &= ~(Word{1} << (v % 64));
    }
  }

  // Moves v into some class c1 < `low` where it has at most one neighbour w,
  // relocating w to a class c2 > c1 (c2 < `low`) free of its neighbours.
  bool renumber(Level& lv, std::size_t v, std::size_t low) {
    const Word* rv = g_.row(v);
    for (std::size_t c1 = 0; c1 < low; ++c1) {
      Word* cls = lv.classes.data() + c1 * words_;
      std::size_t conflicts = 0;
      std::size_t other = 0;
      for (std::size_t x = 0; x < words_ && conflicts < 2; ++x) {
        const Word m = cls[x] & rv[x];
        if (m) {
          conflicts += static_cast<std::size_t>(std::popcount(m));
          other = x * 64 + std::countr_zero(m);
        }
      }
      if (conflicts == 0) {
        cls[v / 64] |= Word{1} << (v % 64);
        return true;
      }
      if (conflicts > 1) continue;
      const Word* rw = g_.row(other);
      for (std::size_t c2 = c1 + 1; c2 < low; ++c2) {
        Word* dst = lv.classes.data() + c2 * words_;
        bool clash = false;
        for (std::size_t x = 0; x < words_ && !clash; ++x) clash = (dst[x] & rw[x]) != 0;
        if (clash) continue;
        cls[other / 64] &= ~(Word{1} << (other % 64));
        dst[other / 64] |= Word{1} << (other % 64);
        cls[v / 64] |= Word{1} << (v % 64);
        return true;
      }
    }
    return false;
  }

  void record() {
    best_ = prefix_ + current_.size();
    best_set_ = current_;
    found_ = true;
    if (best_ >= target_) stop_ = true;
  }

  const BitsetGraph& g_;
  std::size_t words_;
  std::uint64_t& nodes_;
  std::uint64_t budget_;
  std::size_t prefix_ = 0;
  std::size_t best_ = 0;
  std::size_t target_ = std::numeric_limits<std::size_t>::max();
  bool found_ = false;
  bool stop_ = false;
  std::vector<std::uint32_t> current_;
  std::vector<std::uint32_t> best_set_;
  std::vector<Level> levels_;
};

std::vector<Word> full_set(std::size_t k) {
  std::vector<Word> s((k + 63) / 64, 0);
  for (std::size_t a = 0; a < k; ++a) s[a / 64] |= Word{1} << (a % 64);
  return s;
}

// Induced subgraph on `vertices` (local id = position), reordered smallest-last.
struct LocalGraph {
  BitsetGraph graph;
  std::vector<Vertex> global;  // local id -> vertex
};

LocalGraph build_local(const Graph& g, std::span<const Vertex> vertices, std::vector<std::int32_t>& mark) {
  const std::size_t k = vertices.size();
  BitsetGraph raw(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (vertices[i] >= g.num_vertices()) throw ArgumentError("clique: vertex out of range");
    if (mark[vertices[i]] >= 0) throw ArgumentError("clique: duplicate vertex in subset");
    mark[vertices[i]] = static_cast<std::int32_t>(i);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (Vertex w : g.neighbors(vertices[i])) {
      const std::int32_t j = mark[w];
      if (j > static_cast<std::int32_t>(i)) raw.add_edge(i, static_cast<std::size_t>(j));
    }
  }
  for (Vertex v : vertices) mark[v] = -1;
  const auto perm = raw.smallest_last();
  LocalGraph out{raw.permuted(perm), {}};
  out.global.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.global[i] = vertices[perm[i]];
  return out;
}

std::vector<Vertex> to_global(const std::vector<std::uint32_t>& local, const std::vector<Vertex>& global) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (auto l : local) out.push_back(global[l]);
  return out;
}

}  // namespace

std::vector<Vertex> degeneracy_order(const Graph& g, std::size_t* degeneracy) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // Bucket queue (Matula–Beck).
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (Vertex v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (std::size_t d = 0; d <= max_deg; ++d) {
    const std::size_t c = bin[d];
    bin[d] = start;
    start += c;
  }
  std::vector<Vertex> vert(n);
  std::vector<std::size_t> pos(n);
  for (Vertex v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg + 1; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;
  std::size_t core = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = vert[i];
    core = std::max(core, deg[v]);
    for (Vertex u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        const std::size_t du = deg[u];
        const std::size_t pu = pos[u];
        const std::size_t pw = bin[du];
        const Vertex w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  if (degeneracy) *degeneracy = core;
  return vert;
}

CliqueResult max_clique(const Graph& g, const CliqueOptions& options) {
  const std::size_t n = g.num_vertices();
  CliqueResult result;
  if (n == 0) return result;

  const auto order = degeneracy_order(g);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

  std::vector<std::int32_t> mark(n, -1);
  std::vector<Vertex> later;
  std::uint64_t nodes = 0;
  std::size_t best = 0;

  for (std::size_t idx = n; idx-- > 0;) {
    const Vertex v = order[idx];
    later.clear();
    for (Vertex w : g.neighbors(v)) {
      if (pos[w] > idx) later.push_back(w);
    }
    if (later.size() + 1 <= best) continue;
    if (later.empty()) {
      best = 1;
      result.witness = {v};
      continue;
    }
    // Later neighbours in degeneracy order, highest core first.
    std::sort(later.begin(), later.end(), [&](Vertex a, Vertex b) { return pos[a] > pos[b]; });
    const std::size_t k = later.size();
    for (std::size_t i = 0; i < k; ++i) mark[later[i]] = static_cast<std::int32_t>(i);
    BitsetGraph local(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (Vertex w : g.neighbors(later[i])) {
        const std::int32_t j = mark[w];
        if (j > static_cast<std::int32_t>(i)) local.add_edge(i, static_cast<std::size_t>(j));
      }
    }
    for (Vertex w : later) mark[w] = -1;

    const auto perm = local.smallest_last();
    const BitsetGraph ordered = local.permuted(perm);
    Search search(ordered, nodes, options.node_budget);
    if (search.run(full_set(k), 1, best, std::numeric_limits<std::size_t>::max())) {
      best = 1 + search.best().size();
      result.witness.clear();
      for (auto l : search.best()) result.witness.push_back(later[perm[l]]);
      result.witness.push_back(v);
    }
  }
  result.size = best;
  std::sort(result.witness.begin(), result.witness.end());
  return result;
}

CliqueResult max_clique_induced(const Graph& g, std::span<const Vertex> vertices, const CliqueOptions& options) {
  CliqueResult result;
  if (vertices.empty()) return result;
  std::vector<std::int32_t> mark(g.num_vertices(), -1);
  const LocalGraph local = build_local(g, vertices, mark);
  std::uint64_t nodes = 0;
  Search search(local.graph, nodes, options.node_budget);
  search.run(full_set(vertices.size()), 0, 0, std::numeric_limits<std::size_t>::max());
  result.witness = to_global(search.best(), local.global);
  result.size = result.witness.size();
  std::sort(result.witness.begin(), result.witness.end());
  return result;
}

bool has_clique_of_size(const Graph& g, std::span<const Vertex> vertices, std::size_t k,
                        const CliqueOptions& options) {
  if (k == 0) return true;
  if (vertices.size() < k) return false;
  std::vector<std::int32_t> mark(g.num_vertices(), -1);
  const LocalGraph local = build_local(g, vertices, mark);
  std::uint64_t nodes = 0;
  Search search(local.graph, nodes, options.node_budget);
  return search.run(full_set(vertices.size()), 0, k - 1, k);
}

namespace {

// Largest set of points in a closed cube of side `side`. Every candidate cube
// has a point coordinate on each lower face; membership is coord - lower <= side.
class BoxSweep {
 public:
  BoxSweep(const PointSet& pts, double side) : pts_(pts), side_(side), lower_(pts.dim(), 0.0) {}

  void run(std::vector<std::uint32_t> idx, int axis) {
    const int d = pts_.dim();
    sort_by(idx, axis);
    if (d - axis == 1) {
      last_axis(idx, axis);
      return;
    }
    std::vector<std::uint32_t> slab;
    window_lo_ = window_hi_ = 0;
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < idx.size(); ++lo) {
      const double v = coord(idx[lo], axis);
      if (lo > 0 && coord(idx[lo - 1], axis) == v) continue;
      if (hi < lo) hi = lo;
      while (hi < idx.size() && coord(idx[hi], axis) - v <= side_) ++hi;
      if (hi - lo <= best_) continue;
      lower_[axis] = v;
      if (d - axis == 2) {
        // Sliding window: keep the slab sorted on the last axis incrementally.
        sweep_pair(idx, lo, hi, axis + 1, slab);
      } else {
        slab.assign(idx.begin() + static_cast<std::ptrdiff_t>(lo), idx.begin() + static_cast<std::ptrdiff_t>(hi));
        run(slab, axis + 1);
      }
    }
  }

  std::size_t best() const noexcept { return best_; }
  const std::vector<double>& best_lower() const noexcept { return best_lower_; }

 private:
  double coord(std::uint32_t i, int axis) const { return pts_.data(i)[axis]; }

  void sort_by(std::vector<std::uint32_t>& idx, int axis) const {
    std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return coord(a, axis) < coord(b, axis); });
  }

  void last_axis(const std::vector<std::uint32_t>& sorted, int axis) {
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < sorted.size(); ++lo) {
      const double v = coord(sorted[lo], axis);
      if (hi < lo) hi = lo;
      while (hi < sorted.size() && coord(sorted[hi], axis) - v <= side_) ++hi;
      if (hi - lo > best_) {
        best_ = hi - lo;
        lower_[axis] = v;
        best_lower_ = lower_;
      }
    }
  }

  // `window` holds the slab sorted on `axis`; it is updated between slabs
  // rather than rebuilt.
  void sweep_pair(const std::vector<std::uint32_t>& idx, std::size_t lo, std::size_t hi, int axis,
                  std::vector<std::uint32_t>& window) {
    auto less = [&](std::uint32_t a, std::uint32_t b) {
      const double ca = coord(a, axis), cb = coord(b, axis);
      return ca < cb || (ca == cb && a < b);
    };
    if (window_hi_ <= lo || window_lo_ > lo) {
      window.assign(idx.begin() + static_cast<std::ptrdiff_t>(lo), idx.begin() + static_cast<std::ptrdiff_t>(hi));
      std::sort(window.begin(), window.end(), less);
    } else {
      for (std::size_t i = window_lo_; i < lo; ++i) {
        window.erase(std::lower_bound(window.begin(), window.end(), idx[i], less));
      }
      for (std::size_t i = window_hi_; i < hi; ++i) {
        window.insert(std::lower_bound(window.begin(), window.end(), idx[i], less), idx[i]);
      }
    }
    window_lo_ = lo;
    window_hi_ = hi;
    last_axis(window, axis);
  }

  const PointSet& pts_;
  double side_;
  std::vector<double> lower_;
  std::vector<double> best_lower_;
  std::size_t best_ = 0;
  std::size_t window_lo_ = 0;
  std::size_t window_hi_ = 0;
};

std::vector<Vertex> common_neighbors(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.num_vertices() || v >= g.num_vertices() || !g.has_edge(u, v)) {
    throw ArgumentError("edge clique number: (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") is not an edge");
  }
  return intersect_sorted(g.neighbors(u), g.neighbors(v));
}

}  // namespace

std::size_t edge_clique_number(const Graph& g, Vertex u, Vertex v, const CliqueOptions& options) {
  const auto common = common_neighbors(g, u, v);
  return 2 + max_clique_induced(g, common, options).size;
}

bool edge_clique_at_least(const Graph& g, Vertex u, Vertex v, std::size_t k, const CliqueOptions& options) {
  const auto common = common_neighbors(g, u, v);
  return k <= 2 || has_clique_of_size(g, common, k - 2, options);
}

bool geometric_clique_sweep_supported(int d, Norm norm) noexcept { return d == 1 || norm == Norm::LInf; }

CliqueResult geometric_clique(const GeometricGraph& g, const CliqueOptions& options) {
  const PointSet& pts = g.cloud.points;
  const int d = pts.dim();
  if (!geometric_clique_sweep_supported(d, g.norm) || !(g.r > 0.0) || pts.size() == 0) {
    return max_clique(g.adjacency, options);
  }
  std::vector<std::uint32_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0U);
  BoxSweep sweep(pts, g.r);
  sweep.run(std::move(idx), 0);
  CliqueResult out;
  const auto& lo = sweep.best_lower();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool inside = true;
    for (int k = 0; k < d && inside; ++k) {
      const double c = pts.data(i)[k];
      inside = c >= lo[k] && c - lo[k] <= g.r;
    }
    if (inside) out.witness.push_back(static_cast<Vertex>(i));
  }
  out.size = out.witness.size();
  return out;
}

DenoiseResult denoise(const Graph& g, double threshold, const CliqueOptions& options) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ArgumentError("denoise: threshold must be a positive finite number");
  }
  DenoiseResult out;
  out.threshold = threshold;
  // Keep (u, v) iff 2 + ω(common) >= threshold iff common has a clique of size need.
  const double need_real = std::ceil(threshold) - 2.0;
  const std::size_t need = need_real <= 0.0 ? 0 : static_cast<std::size_t>(need_real);
  const std::size_t n = g.num_vertices();
  std::vector<std::int32_t> mark(n, -1);
  std::vector<Edge> kept;
  std::uint64_t nodes = 0;

  for (Vertex u = 0; u < n; ++u) {
    auto nbrs = g.neighbors(u);
    if (need == 0) {
      for (Vertex v : nbrs) {
        if (v > u) kept.emplace_back(u, v);
      }
      continue;
    }
    // One local graph on N(u) serves every edge at u: the row of v inside it is N(u) ∩ N(v).
    const std::size_t k = nbrs.size();
    BitsetGraph local(k);
    for (std::size_t i = 0; i < k; ++i) mark[nbrs[i]] = static_cast<std::int32_t>(i);
    for (std::size_t i = 0; i < k; ++i) {
      for (Vertex w : g.neighbors(nbrs[i])) {
        const std::int32_t j = mark[w];
        if (j > static_cast<std::int32_t>(i)) local.add_edge(i, static_cast<std::size_t>(j));
      }
    }
    for (Vertex w : nbrs) mark[w] = -1;
    const auto perm = local.smallest_last();
    const BitsetGraph ordered = local.permuted(perm);
    std::vector<std::uint32_t> inv(k);
    for (std::size_t i = 0; i < k; ++i) inv[perm[i]] = static_cast<std::uint32_t>(i);

    Search search(ordered, nodes, options.node_budget);
    std::vector<Word> start(ordered.words());
    for (std::size_t i = 0; i < k; ++i) {
      const Vertex v = nbrs[i];
      if (v < u) continue;
      const Word* r = ordered.row(inv[i]);
      std::size_t count = 0;
      for (std::size_t w = 0; w < start.size(); ++w) {
        start[w] = r[w];
        count += std::popcount(r[w]);
      }
      const bool keep = count >= need && search.run(start, 0, need - 1, need);
      if (keep) {
        kept.emplace_back(u, v);
      } else {
        out.removed.emplace_back(u, v);
      }
    }
  }
  out.retained = Graph::from_edges(n, kept);
  return out;
}

DenoiseThreshold DenoiseThreshold::parse(const std::string& text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "auto") return {true, 0.0};
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !(v > 0.0)) {
    throw ArgumentError("threshold must be 'auto' or a positive number, got '" + text + "'");
  }
  return {false, v};
}

double auto_denoise_threshold(const PerturbedGraph& g, const RegimeParams& regime) {
  InstanceParams params;
  params.n = static_cast<double>(g.n());
  params.r = g.base().r;
  params.d = g.base().cloud.d();
  params.norm = g.base().norm;
  params.sigma = g.base().cloud.sigma;
  params.p = g.p();
  params.q = g.q();
  params.alpha = regime.alpha;
  params.t = regime.t;
  const PerturbModel model = model_for(g.p(), g.q());
  const auto prediction = predict_omega(model, infer_case(model, regime.regime, params), params);
  return 0.5 * prediction.lower;
}

DenoiseResult denoise(const PerturbedGraph& g, const DenoiseThreshold& threshold,
                      const std::optional<RegimeParams>& regime, const CliqueOptions& options) {
  if (!threshold.automatic) return denoise(g.graph(), threshold.value, options);
  if (!regime) throw ArgumentError("denoise: AUTO threshold needs regime metadata");
  return denoise(g.graph(), auto_denoise_threshold(g, *regime), options);
}

DenoiseScore score_denoise(const std::vector<Edge>& removed, const std::vector<Edge>& long_edge_set) {
  std::vector<Edge> a = removed;
  std::vector<Edge> b = long_edge_set;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Edge> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  DenoiseScore s;
  s.true_positives = both.size();
  s.precision = a.empty() ? 1.0 : static_cast<double>(both.size()) / static_cast<double>(a.size());
  s.recall = b.empty() ? 1.0 : static_cast<double>(both.size()) / static_cast<double>(b.size());
  return s;
}

}  // namespace nrgg
