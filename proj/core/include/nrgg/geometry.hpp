#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nrgg {

enum class Norm { L1, L2, LInf };

std::string_view to_string(Norm norm) noexcept;
/// Accepts "L1", "L2", "LINF" (case-insensitive, "Linf"/"inf" also accepted).
Norm parse_norm(std::string_view text);

/// ‖x − y‖ under `norm`. Throws ArgumentError on dimension mismatch or empty points.
double distance(std::span<const double> x, std::span<const double> y, Norm norm);

/// Same as distance() without the argument checks; callers guarantee equal sizes.
double distance_unchecked(const double* x, const double* y, std::size_t d, Norm norm) noexcept;

/// θ, the Lebesgue volume of the closed unit ball of `norm` in ℝ^d.
double unit_ball_volume(int d, Norm norm);

struct BallVolume {
  int d;
  Norm norm;
  double theta;
};

BallVolume ball_volume(int d, Norm norm);

/// Flat row-major point set; every point has dimension `dim`.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, std::vector<double> coords);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return size() == 0; }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  const double* data(std::size_t i) const noexcept { return coords_.data() + i * dim_; }
  const std::vector<double>& coords() const noexcept { return coords_; }

  void push_back(std::span<const double> p);

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

/// min over a ∈ A, b ∈ B of ‖a − b‖. Throws ArgumentError on empty input or dimension mismatch.
double min_set_distance(const PointSet& a, const PointSet& b, Norm norm);

}  // namespace nrgg
