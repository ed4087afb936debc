#include "nrgg/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nrgg/errors.hpp"
#include "nrgg/spatial_grid.hpp"

namespace nrgg {

std::string_view to_string(Window w) noexcept {
  switch (w) {
    case Window::Half: return "W_HALF";
    case Window::W1: return "W1";
    case Window::W3: return "W3";
  }
  return "?";
}

double window_scale(Window w) noexcept {
  switch (w) {
    case Window::Half: return 0.5;
    case Window::W1: return 1.0;
    case Window::W3: return 3.0;
  }
  return 1.0;
}

std::string_view to_string(ScanMethod m) noexcept { return m == ScanMethod::Exact ? "EXACT" : "POINT_CENTERED"; }

namespace {

void check_query(const PointSet& points, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ArgumentError("scan: radius must be positive and finite");
  if (points.empty()) throw ArgumentError("scan: empty point set");
}

double limit(double radius) { return radius * (1.0 + kScanSlack); }

// Counts via a grid whose cell (2·radius) dominates the slackened radius.
std::size_t grid_count(const SpatialGrid& grid, std::span<const double> center, Norm norm, double radius) {
  const PointSet& pts = grid.points();
  const double lim = limit(radius);
  const std::size_t d = static_cast<std::size_t>(pts.dim());
  std::size_t c = 0;
  grid.for_each_candidate(center, [&](std::uint32_t j) {
    if (distance_unchecked(center.data(), pts.data(j), d, norm) <= lim) ++c;
  });
  return c;
}

struct Best {
  std::size_t count = 0;
  std::vector<double> center;

  void offer(std::size_t c, std::span<const double> x) {
    if (c > count) {
      count = c;
      center.assign(x.begin(), x.end());
    }
  }
};

// Axis-aligned cube sweep: the optimal cube can be slid until, on every
// axis, its lower face carries a point coordinate.
void cube_sweep(const PointSet& pts, const std::vector<std::uint32_t>& idx, int axis, double side,
                std::vector<double>& lower, Best& best) {
  const int d = pts.dim();
  std::vector<std::uint32_t> order = idx;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return pts.data(a)[axis] < pts.data(b)[axis]; });
  if (axis == d - 1) {
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < order.size(); ++lo) {
      const double v = pts.data(order[lo])[axis];
      if (lo > 0 && pts.data(order[lo - 1])[axis] == v) continue;
      if (hi < lo) hi = lo;
      while (hi < order.size() && pts.data(order[hi])[axis] - v <= side) ++hi;
      if (hi - lo > best.count) {
        lower[axis] = v;
        std::vector<double> center(d);
        for (int k = 0; k < d; ++k) center[k] = lower[k] + 0.5 * side;
        best.offer(hi - lo, center);
      }
    }
    return;
  }
  std::vector<std::uint32_t> slab;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < order.size(); ++lo) {
    const double v = pts.data(order[lo])[axis];
    if (lo > 0 && pts.data(order[lo - 1])[axis] == v) continue;
    if (hi < lo) hi = lo;
    while (hi < order.size() && pts.data(order[hi])[axis] - v <= side) ++hi;
    if (hi - lo <= best.count) continue;
    slab.assign(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi));
    lower[axis] = v;
    cube_sweep(pts, slab, axis + 1, side, lower, best);
  }
}

}  // namespace

std::size_t count_in_ball(const PointSet& points, std::span<const double> center, Norm norm, double radius) {
  if (static_cast<int>(center.size()) != points.dim()) throw ArgumentError("scan: center has the wrong dimension");
  const double lim = limit(radius);
  std::size_t c = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (distance_unchecked(center.data(), points.data(i), center.size(), norm) <= lim) ++c;
  }
  return c;
}

bool scan_exact_supported(int d, Norm norm) noexcept {
  if (d == 1) return true;
  if (norm == Norm::L2) return d == 2;
  if (norm == Norm::LInf) return d >= 1 && d <= 3;
  return false;
}

ScanResult scan_exact(const PointSet& points, Norm norm, double radius) {
  check_query(points, radius);
  const int d = points.dim();
  if (!scan_exact_supported(d, norm)) {
    throw CapabilityError("scan_exact: unsupported combination d=" + std::to_string(d) + " norm=" +
                         std::string(to_string(norm)) + "; use scan_point_centered for sandwich bounds");
  }
  ScanResult out;
  out.method = ScanMethod::Exact;

  if (d == 1 || norm == Norm::LInf) {
    // In 1-D every norm is |x − y|, so balls are intervals (cubes of side 2R).
    std::vector<std::uint32_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), 0U);
    std::vector<double> lower(d, 0.0);
    Best best;
    cube_sweep(points, idx, 0, 2.0 * radius, lower, best);
    out.center = best.center;
    out.value = count_in_ball(points, out.center, norm, radius);
    return out;
  }

  // d = 2, L2: an optimal disk can be moved until it has two points on its
  // boundary, or it holds a single point.
  const SpatialGrid grid = SpatialGrid::all(points, 2.0 * radius);
  Best best;
  for (std::size_t i = 0; i < points.size(); ++i) best.offer(grid_count(grid, points[i], norm, radius), points[i]);
  const double two_r = 2.0 * radius;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double* a = points.data(i);
    std::vector<std::uint32_t> partners;
    grid.for_each_candidate(points[i], [&](std::uint32_t j) {
      if (j > i) partners.push_back(j);
    });
    std::sort(partners.begin(), partners.end());
    for (std::uint32_t j : partners) {
      const double* b = points.data(j);
      const double dx = b[0] - a[0];
      const double dy = b[1] - a[1];
      const double dist = std::hypot(dx, dy);
      if (dist == 0.0 || dist > two_r) continue;
      const double h = std::sqrt(std::max(0.0, radius * radius - 0.25 * dist * dist));
      const double mx = 0.5 * (a[0] + b[0]);
      const double my = 0.5 * (a[1] + b[1]);
      const double ux = -dy / dist;
      const double uy = dx / dist;
      for (double sign : {1.0, -1.0}) {
        const double c[2] = {mx + sign * h * ux, my + sign * h * uy};
        best.offer(grid_count(grid, c, norm, radius), c);
      }
    }
  }
  out.value = best.count;
  out.center = best.center;
  return out;
}

ScanResult scan_point_centered(const PointSet& points, Norm norm, double radius) {
  check_query(points, radius);
  const SpatialGrid grid = SpatialGrid::all(points, 2.0 * radius);
  ScanResult out;
  out.method = ScanMethod::PointCentered;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t c = grid_count(grid, points[i], norm, radius);
    if (c > out.value) {
      out.value = c;
      best_index = i;
    }
  }
  out.center.assign(points[best_index].begin(), points[best_index].end());
  return out;
}

OccupancyResult occupancy_check(const GeometricGraph& g, Window window, double bound) {
  OccupancyResult out;
  out.bound = bound;
  out.observed = scan_point_centered(g.cloud.points, g.norm, window_scale(window) * g.r).value;
  out.pass = static_cast<double>(out.observed) <= bound;
  return out;
}

}  // namespace nrgg
