#pragma once

// Affective polarization between the groups on either side of a cutoff x*.
// Each voter's animosity is g(distance to the opposing group's mean), and
// the aggregate is the population average:
//
//   A(F) = sum_{x < x*} w(x) g(m_R - x) + sum_{x > x*} w(x) g(x - m_L)

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polar/distribution.hpp"
#include "polar/error.hpp"
#include "polar/index.hpp"

namespace polar {

/// An increasing function of ideological distance.
class AnimosityFunction {
 public:
  enum class Kind { Identity, Power, PiecewiseLinear, Custom };

  static AnimosityFunction identity() { return AnimosityFunction(Kind::Identity); }

  static AnimosityFunction power(double exponent) {
    if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
      throw Error(ErrorCode::InvalidArgument, "power exponent must be >= 1");
    }
    AnimosityFunction g(Kind::Power);
    g.exponent_ = exponent;
    return g;
  }

  /// Linear interpolation through (distance, value) knots with flat
  /// extension past either end. Knot distances must be strictly increasing.
  static AnimosityFunction piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.empty()) throw Error(ErrorCode::InvalidArgument, "no knots");
    for (std::size_t i = 1; i < knots.size(); ++i) {
      if (!(knots[i].first > knots[i - 1].first)) {
        throw Error(ErrorCode::InvalidArgument, "knot distances must increase");
      }
    }
    AnimosityFunction g(Kind::PiecewiseLinear);
    g.knots_ = std::move(knots);
    return g;
  }

  static AnimosityFunction custom(std::function<double(double)> fn) {
    AnimosityFunction g(Kind::Custom);
    g.custom_ = std::move(fn);
    return g;
  }

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

  double operator()(double distance) const {
    switch (kind_) {
      case Kind::Identity: return distance;
      case Kind::Power: return std::pow(distance, exponent_);
      case Kind::PiecewiseLinear: return interpolate(distance);
      case Kind::Custom: return custom_(distance);
    }
    return distance;
  }

  /// Checks monotonicity on 1,000 consecutive ordered pairs spanning
  /// [0, range]. Throws NonMonotoneG on the first decreasing pair.
  void validate(double range) const {
    constexpr int kPairs = 1000;
    double prev = (*this)(0.0);
    for (int i = 1; i <= kPairs; ++i) {
      const double t = range * static_cast<double>(i) / kPairs;
      const double cur = (*this)(t);
      if (!(cur >= prev)) {
        throw Error(ErrorCode::NonMonotoneG,
                    "animosity function decreases near distance " + std::to_string(t));
      }
      prev = cur;
    }
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Identity: return "identity";
      case Kind::Power: return "power:" + std::to_string(exponent_);
      case Kind::PiecewiseLinear: return "plf:" + std::to_string(knots_.size()) + " knots";
      case Kind::Custom: return "custom";
    }
    return "unknown";
  }

 private:
  explicit AnimosityFunction(Kind kind) : kind_(kind) {}

  double interpolate(double t) const {
    if (t <= knots_.front().first) return knots_.front().second;
    if (t >= knots_.back().first) return knots_.back().second;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const auto& k) { return v < k.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
  }

  Kind kind_;
  double exponent_ = 1.0;
  std::vector<std::pair<double, double>> knots_;
  std::function<double(double)> custom_;
};

/// What to do with mass sitting exactly at the cutoff.
enum class TiePolicy { Exclude, AssignLeft, AssignRight, Split };

constexpr std::string_view to_string(TiePolicy p) {
  switch (p) {
    case TiePolicy::Exclude: return "exclude";
    case TiePolicy::AssignLeft: return "left";
    case TiePolicy::AssignRight: return "right";
    case TiePolicy::Split: return "split";
  }
  return "unknown";
}

struct AffectiveModel {
  double cutoff;
  AnimosityFunction g = AnimosityFunction::identity();
  TiePolicy tie_policy = TiePolicy::Exclude;
};

struct AffectiveReport {
  double m_left;
  double m_right;
  double level;
  double excluded_mass;
};

inline AffectiveReport affective_level(const WeightedDistribution& dist,
                                       const AffectiveModel& model) {
  const PolicyScale& scale = dist.scale();
  detail::require_interior(scale, model.cutoff);
  model.g.validate(scale.max_x() - scale.min_x());

  // Per-atom share assigned to each group.
  const std::size_t n = dist.size();
  std::vector<double> left(n, 0.0), right(n, 0.0);
  double at_cutoff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = dist.positions()[i];
    const double w = dist.weights()[i];
    if (p < model.cutoff) {
      left[i] = w;
    } else if (p > model.cutoff) {
      right[i] = w;
    } else {
      at_cutoff += w;
      switch (model.tie_policy) {
        case TiePolicy::Exclude: break;
        case TiePolicy::AssignLeft: left[i] = w; break;
        case TiePolicy::AssignRight: right[i] = w; break;
        case TiePolicy::Split: left[i] = right[i] = 0.5 * w; break;
      }
    }
  }

  auto group_mean = [&](const std::vector<double>& share, const char* name) {
    double mass = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mass += share[i];
      moment += share[i] * dist.positions()[i];
    }
    if (!(mass > 0.0)) {
      throw Error(ErrorCode::EmptyGroup, std::string(name) + " group is empty at cutoff " +
                                             std::to_string(model.cutoff));
    }
    return moment / mass;
  };
  const double m_left = group_mean(left, "left");
  const double m_right = group_mean(right, "right");

  double level = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = dist.positions()[i];
    if (left[i] > 0.0) level += left[i] * model.g(std::abs(m_right - p));
    if (right[i] > 0.0) level += right[i] * model.g(std::abs(p - m_left));
  }
  double excluded = 0.0;
  if (model.tie_policy == TiePolicy::Exclude) {
    excluded = at_cutoff;
    level /= 1.0 - at_cutoff;
  }
  return {m_left, m_right, level, excluded};
}

/// Moves `amount` of mass away from x*, one grid step outward at a time,
/// starting with the atoms closest to x*. Mass at x* itself is split evenly
/// between its grid neighbours; mass left of x* moves one grid point left and
/// mass right of x* one grid point right. Every such move keeps
/// F_hat - F >= 0 below x* and <= 0 from x* on, so the result dominates the
/// input around x* (or equals it when amount is zero).
inline WeightedDistribution spread_outward(const WeightedDistribution& dist, double xstar,
                                           double amount) {
  detail::require_interior(dist.scale(), xstar);
  if (!(amount >= 0.0)) throw Error(ErrorCode::InvalidArgument, "amount must be >= 0");

  const auto grid = dist.positions();
  const std::size_t n = grid.size();
  std::vector<double> w(dist.weights().begin(), dist.weights().end());

  // Movable mass excludes the first and last grid points, which have no
  // outward neighbour.
  double movable = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) movable += w[i];
  if (amount > movable + 1e-15) {
    throw Error(ErrorCode::InsufficientInteriorMass,
                "cannot move " + std::to_string(amount) + "; only " + std::to_string(movable) +
                    " lies strictly inside the outermost grid points");
  }
  if (amount == 0.0) return dist;

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    const bool at_center = std::abs(grid[i] - xstar) <= kGridMatchTolerance;
    const bool has_outward = at_center ? (i > 0 || i + 1 < n)
                                       : (grid[i] < xstar ? i > 0 : i + 1 < n);
    if (has_outward && w[i] > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(grid[a] - xstar) < std::abs(grid[b] - xstar);
  });

  double remaining = amount;
  for (std::size_t i : order) {
    if (remaining <= 0.0) break;
    const double take = std::min(remaining, w[i]);
    remaining -= take;
    w[i] -= take;
    if (std::abs(grid[i] - xstar) <= kGridMatchTolerance) {
      const bool has_left = i > 0;
      const bool has_right = i + 1 < n;
      if (has_left && has_right) {
        w[i - 1] += 0.5 * take;
        w[i + 1] += 0.5 * take;
      } else {
        w[has_left ? i - 1 : i + 1] += take;
      }
    } else if (grid[i] < xstar) {
      w[i - 1] += take;
    } else {
      w[i + 1] += take;
    }
  }
  return WeightedDistribution::from_grid_weights(dist.scale(), w);
}

}  // namespace polar
