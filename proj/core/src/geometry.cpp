#include "nrgg/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include "nrgg/errors.hpp"

namespace nrgg {

std::string_view to_string(Norm norm) noexcept {
  switch (norm) {
    case Norm::L1:
      return "L1";
    case Norm::L2:
      return "L2";
    case Norm::LInf:
      return "LINF";
  }
  return "L2";
}

Norm parse_norm(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "L1") return Norm::L1;
  if (upper == "L2") return Norm::L2;
  if (upper == "LINF" || upper == "INF" || upper == "LMAX") return Norm::LInf;
  throw ArgumentError("unknown norm '" + std::string(text) + "' (expected L1, L2 or LINF)");
}

double distance_unchecked(const double* x, const double* y, std::size_t d, Norm norm) noexcept {
  switch (norm) {
    case Norm::L1: {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += std::fabs(x[k] - y[k]);
      return s;
    }
    case Norm::L2: {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double t = x[k] - y[k];
        s += t * t;
      }
      return std::sqrt(s);
    }
    case Norm::LInf: {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s = std::max(s, std::fabs(x[k] - y[k]));
      return s;
    }
  }
  return 0.0;
}

double distance(std::span<const double> x, std::span<const double> y, Norm norm) {
  if (x.size() != y.size()) {
    throw ArgumentError("distance: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
  }
  if (x.empty()) throw ArgumentError("distance: points must have dimension >= 1");
  return distance_unchecked(x.data(), y.data(), x.size(), norm);
}

double unit_ball_volume(int d, Norm norm) {
  if (d < 1) throw ArgumentError("unit_ball_volume: d must be >= 1");
  const double dd = static_cast<double>(d);
  switch (norm) {
    case Norm::LInf:
      return std::ldexp(1.0, d);
    case Norm::L1:
      // 2^d / d!
      return std::exp(dd * std::numbers::ln2 - std::lgamma(dd + 1.0));
    case Norm::L2:
      return std::exp(0.5 * dd * std::log(std::numbers::pi) - std::lgamma(0.5 * dd + 1.0));
  }
  return 0.0;
}

BallVolume ball_volume(int d, Norm norm) { return {d, norm, unit_ball_volume(d, norm)}; }

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1) throw ArgumentError("PointSet: dimension must be >= 1");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0) {
    throw ArgumentError("PointSet: coordinate count is not a multiple of the dimension");
  }
}

void PointSet::push_back(std::span<const double> p) {
  if (dim_ == 0) {
    if (p.empty()) throw ArgumentError("PointSet: points must have dimension >= 1");
    dim_ = static_cast<int>(p.size());
  }
  if (p.size() != static_cast<std::size_t>(dim_)) throw ArgumentError("PointSet: dimension mismatch");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

double min_set_distance(const PointSet& a, const PointSet& b, Norm norm) {
  if (a.empty() || b.empty()) throw ArgumentError("min_set_distance: empty point set");
  if (a.dim() != b.dim()) throw ArgumentError("min_set_distance: dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  const auto d = static_cast<std::size_t>(a.dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      best = std::min(best, distance_unchecked(a.data(i), b.data(j), d, norm));
    }
  }
  return best;
}

}  // namespace nrgg
