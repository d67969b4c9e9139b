#pragma once

// Degree of polarization around a center x*:
//
//   P(F, x*) = A_below / (x* - min) - A_above / (max - x*) + 1
//
// where A_below and A_above are the areas under the step CDF on [min, x*)
// and [x*, max]. Both areas are finite sums over constancy intervals, so the
// index is computed exactly (no quadrature).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "polar/distribution.hpp"
#include "polar/error.hpp"

namespace polar {

struct PolarizationIndex {
  double value;
  double center;
};

namespace detail {

inline void require_interior(const PolicyScale& scale, double xstar) {
  if (!scale.interior(xstar)) {
    throw Error(ErrorCode::CenterOnBoundary,
                "center " + std::to_string(xstar) + " is not strictly inside (" +
                    std::to_string(scale.min_x()) + ", " + std::to_string(scale.max_x()) + ")");
  }
}

/// Area under the step CDF over [a, b], min <= a <= b <= max.
inline double step_area(const WeightedDistribution& dist, double a, double b) {
  const auto grid = dist.positions();
  const double hi_bound = dist.scale().max_x();
  double area = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double left = std::max(grid[i], a);
    const double right = std::min(i + 1 < grid.size() ? grid[i + 1] : hi_bound, b);
    if (right > left) area += dist.cumulative(i) * (right - left);
  }
  return area;
}

}  // namespace detail

inline double integral_below(const WeightedDistribution& dist, double xstar) {
  detail::require_interior(dist.scale(), xstar);
  return detail::step_area(dist, dist.scale().min_x(), xstar);
}

inline double integral_above(const WeightedDistribution& dist, double xstar) {
  detail::require_interior(dist.scale(), xstar);
  return detail::step_area(dist, xstar, dist.scale().max_x());
}

/// Area under the CDF over the whole scale (equals max - mean).
inline double total_area(const WeightedDistribution& dist) {
  return detail::step_area(dist, dist.scale().min_x(), dist.scale().max_x());
}

inline PolarizationIndex index(const WeightedDistribution& dist, double xstar) {
  const double below = integral_below(dist, xstar);
  const double above = integral_above(dist, xstar);
  const double lo = dist.scale().min_x();
  const double hi = dist.scale().max_x();
  double value = below / (xstar - lo) - above / (hi - xstar) + 1.0;
  // Rounding can push the extremes a few ulps outside [0, 1].
  value = std::clamp(value, 0.0, 1.0);
  return {value, xstar};
}

inline std::vector<PolarizationIndex> index_profile(const WeightedDistribution& dist,
                                                    std::span<const double> centers) {
  std::vector<PolarizationIndex> out;
  out.reserve(centers.size());
  for (double c : centers) out.push_back(index(dist, c));
  return out;
}

/// Integer instrument points strictly inside the scale bounds (1..9 on a
/// 0-10 scale, 2..6 on a 1-7 scale).
inline std::vector<double> default_centers(const PolicyScale& scale) {
  std::vector<double> out;
  for (double c = std::floor(scale.min_x()) + 1.0; c < scale.max_x(); c += 1.0) {
    if (scale.interior(c)) out.push_back(c);
  }
  return out;
}

/// Percentage change 100 * (after - before) / before.
inline double pct_change(const PolarizationIndex& before, const PolarizationIndex& after) {
  if (before.center != after.center) {
    throw Error(ErrorCode::CenterMismatch, "indices refer to different centers");
  }
  if (!(before.value > 0.0)) {
    throw Error(ErrorCode::ZeroBaseline,
                "baseline index is zero at center " + std::to_string(before.center));
  }
  return 100.0 * (after.value - before.value) / before.value;
}

struct Cleavage {
  double center;
  double change;                   // percent
  std::vector<double> centers;     // every center evaluated, in input order
  std::vector<double> changes;     // percent change at each center
};

/// Center with the largest percentage increase in P between two waves.
/// Ties go to the center nearest the scale midpoint, then the smaller one.
inline Cleavage cleavage_point(const WeightedDistribution& before,
                               const WeightedDistribution& after,
                               std::span<const double> centers) {
  if (!before.scale().same_bounds(after.scale())) {
    throw Error(ErrorCode::ScaleMismatch, "waves live on different scales");
  }
  if (centers.empty()) throw Error(ErrorCode::InvalidArgument, "no centers given");
  constexpr double kTieTolerance = 1e-12;
  const double mid = 0.5 * (before.scale().min_x() + before.scale().max_x());

  Cleavage out{centers.front(), 0.0, {centers.begin(), centers.end()}, {}};
  out.changes.reserve(centers.size());
  bool first = true;
  for (double c : centers) {
    const double change = pct_change(index(before, c), index(after, c));
    out.changes.push_back(change);
    bool take = first || change > out.change + kTieTolerance;
    if (!take && std::abs(change - out.change) <= kTieTolerance) {
      const double d_new = std::abs(c - mid);
      const double d_old = std::abs(out.center - mid);
      take = d_new < d_old || (d_new == d_old && c < out.center);
    }
    if (take) {
      out.center = c;
      out.change = change;
      first = false;
    }
  }
  return out;
}

}  // namespace polar
