#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "nrgg/geometry.hpp"
#include "nrgg/model.hpp"

namespace nrgg {

/// Ball windows W_s = B_s(0); rW_s is the ball of radius s·r.
enum class Window { Half, W1, W3 };
std::string_view to_string(Window w) noexcept;
double window_scale(Window w) noexcept;

enum class ScanMethod { Exact, PointCentered };
std::string_view to_string(ScanMethod m) noexcept;

struct ScanResult {
  std::size_t value = 0;
  std::vector<double> center;  // witness center of the maximising ball
  ScanMethod method = ScanMethod::PointCentered;
};

/// Relative slack shared by every ball-membership test of this module
/// (distance <= radius·(1 + kScanSlack)). It absorbs rounding in computed
/// centers so a witness always re-verifies.
inline constexpr double kScanSlack = 1e-9;

/// Points of `points` within radius (with slack) of `center`.
std::size_t count_in_ball(const PointSet& points, std::span<const double> center, Norm norm, double radius);

/// Whether scan_exact supports (d, norm): d = 1 any norm, d = 2 with L2, d <= 3 with LInf.
bool scan_exact_supported(int d, Norm norm) noexcept;

/// max over all x of the number of points in the closed ball B_radius(x).
/// CapabilityError for unsupported (d, norm); use scan_point_centered there.
ScanResult scan_exact(const PointSet& points, Norm norm, double radius);

/// max over data points x_i of the count in B_radius(x_i); ties → lowest index.
ScanResult scan_point_centered(const PointSet& points, Norm norm, double radius);

struct OccupancyResult {
  bool pass = true;
  std::size_t observed = 0;
  double bound = 0.0;
};

/// Point-centered count in balls of radius s·r (s = 1 for W1, 3 for W3),
/// a lower bound on M_W; passes iff it does not exceed `bound`.
OccupancyResult occupancy_check(const GeometricGraph& g, Window window, double bound);

}  // namespace nrgg
