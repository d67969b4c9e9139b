#pragma once

// Polarization dominance around a center x*.
//
// hat dominates base around x* when every closed interval containing x*
// carries weakly less mass under hat. For right-continuous CDFs this holds
// exactly when D(x) = F_hat(x) - F_base(x) is >= 0 for x < x* and <= 0 for
// x >= x*. dominates_at() uses the CDF condition; oracle_dominates_at()
// enumerates intervals directly and shares no code path with it beyond
// interval_mass().

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "polar/distribution.hpp"
#include "polar/error.hpp"
#include "polar/index.hpp"

namespace polar {

inline constexpr double kDominanceTolerance = 1e-12;

enum class Relation { HatDominates, BaseDominates, Equivalent, Incomparable };

constexpr std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::HatDominates: return "HatDominates";
    case Relation::BaseDominates: return "BaseDominates";
    case Relation::Equivalent: return "Equivalent";
    case Relation::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

struct DominanceVerdict {
  Relation relation;
  double center;
  std::optional<double> witness;  // first point breaking hat-dominance
};

namespace detail {

inline void require_same_scale(const WeightedDistribution& a, const WeightedDistribution& b) {
  if (!a.scale().same_bounds(b.scale())) {
    throw Error(ErrorCode::ScaleMismatch, "distributions live on different scale bounds");
  }
}

/// Sorted union of both grids; points within kGridMatchTolerance collapse.
inline std::vector<double> union_grid(const WeightedDistribution& a,
                                      const WeightedDistribution& b) {
  std::vector<double> pts(a.positions().begin(), a.positions().end());
  pts.insert(pts.end(), b.positions().begin(), b.positions().end());
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts) {
    if (out.empty() || p - out.back() > kGridMatchTolerance) out.push_back(p);
  }
  return out;
}

}  // namespace detail

/// Single-crossing test. D is evaluated at every union-grid point and at x*
/// itself (D is constant between those points).
inline DominanceVerdict dominates_at(const WeightedDistribution& base,
                                     const WeightedDistribution& hat, double xstar) {
  detail::require_same_scale(base, hat);
  detail::require_interior(base.scale(), xstar);

  std::vector<double> points = detail::union_grid(base, hat);
  points.insert(std::upper_bound(points.begin(), points.end(), xstar), xstar);

  bool hat_ok = true;
  bool base_ok = true;
  std::optional<double> witness;
  for (double x : points) {
    const double delta = cdf(hat, x) - cdf(base, x);
    const bool left = x < xstar;
    const bool hat_holds = left ? delta >= -kDominanceTolerance : delta <= kDominanceTolerance;
    const bool base_holds = left ? delta <= kDominanceTolerance : delta >= -kDominanceTolerance;
    if (!hat_holds && !witness) witness = x;
    hat_ok = hat_ok && hat_holds;
    base_ok = base_ok && base_holds;
  }

  Relation rel = Relation::Incomparable;
  if (hat_ok && base_ok) {
    rel = Relation::Equivalent;
  } else if (hat_ok) {
    rel = Relation::HatDominates;
  } else if (base_ok) {
    rel = Relation::BaseDominates;
  }
  return {rel, xstar, rel == Relation::Incomparable ? witness : std::nullopt};
}

/// Brute-force check of the interval definition: true iff hat puts weakly
/// less mass than base on every closed [lo, hi] with lo <= x* <= hi.
/// Candidate endpoints are the scale bounds, every union-grid point, the
/// midpoints between adjacent grid points, and x* itself; together these
/// realize every distinct set of atoms such an interval can cover.
inline bool oracle_dominates_at(const WeightedDistribution& base,
                                const WeightedDistribution& hat, double xstar) {
  detail::require_same_scale(base, hat);
  detail::require_interior(base.scale(), xstar);

  const std::vector<double> grid = detail::union_grid(base, hat);
  std::vector<double> cand{base.scale().min_x(), base.scale().max_x(), xstar};
  cand.insert(cand.end(), grid.begin(), grid.end());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    cand.push_back(0.5 * (grid[i] + grid[i + 1]));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  for (double lo : cand) {
    if (lo > xstar) break;
    for (double hi : cand) {
      if (hi < xstar) continue;
      if (interval_mass(hat, lo, hi) > interval_mass(base, lo, hi) + kDominanceTolerance) {
        return false;
      }
    }
  }
  return true;
}

/// Interior union-grid points at which hat dominates base.
inline std::vector<double> dominance_region(const WeightedDistribution& base,
                                            const WeightedDistribution& hat) {
  detail::require_same_scale(base, hat);
  std::vector<double> region;
  for (double x : detail::union_grid(base, hat)) {
    if (!base.scale().interior(x)) continue;
    if (dominates_at(base, hat, x).relation == Relation::HatDominates) region.push_back(x);
  }
  return region;
}

}  // namespace polar
