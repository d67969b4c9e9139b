#pragma once

// Bounded policy scales and weighted discrete distributions of voter
// positions on them. The CDF is right-continuous: mass sitting exactly at x
// is counted in F(x).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polar/error.hpp"

namespace polar {

/// Positions closer than this are treated as the same grid point when
/// matching user-supplied shares against a scale.
inline constexpr double kGridMatchTolerance = 1e-9;

/// A bounded real interval [min_x, max_x] with an ordered, finite support
/// grid inside it.
class PolicyScale {
 public:
  PolicyScale(double min_x, double max_x, std::vector<double> grid)
      : min_x_(min_x), max_x_(max_x), grid_(std::move(grid)) {
    if (!(std::isfinite(min_x_) && std::isfinite(max_x_) && min_x_ < max_x_)) {
      throw Error(ErrorCode::InvalidScale, "scale bounds must satisfy min < max");
    }
    if (grid_.empty()) {
      throw Error(ErrorCode::InvalidScale, "scale grid is empty");
    }
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (!(grid_[i] >= min_x_ && grid_[i] <= max_x_)) {
        throw Error(ErrorCode::InvalidScale,
                    "grid point " + std::to_string(grid_[i]) + " outside bounds");
      }
      if (i > 0 && !(grid_[i] > grid_[i - 1])) {
        throw Error(ErrorCode::InvalidScale, "grid must be strictly increasing");
      }
    }
  }

  /// Integer instrument scale {lo, lo+1, ..., hi}, e.g. 0-10 or 1-7.
  static PolicyScale integer_range(int lo, int hi) {
    std::vector<double> grid;
    for (int k = lo; k <= hi; ++k) grid.push_back(static_cast<double>(k));
    return PolicyScale(lo, hi, std::move(grid));
  }

  double min_x() const noexcept { return min_x_; }
  double max_x() const noexcept { return max_x_; }
  std::span<const double> grid() const noexcept { return grid_; }

  bool contains(double x) const noexcept { return x >= min_x_ && x <= max_x_; }
  bool interior(double x) const noexcept { return x > min_x_ && x < max_x_; }

  /// Index of the grid point within kGridMatchTolerance of x, or npos.
  std::size_t find(double x) const noexcept {
    auto it = std::lower_bound(grid_.begin(), grid_.end(), x - kGridMatchTolerance);
    if (it != grid_.end() && std::abs(*it - x) <= kGridMatchTolerance) {
      return static_cast<std::size_t>(it - grid_.begin());
    }
    return npos;
  }

  bool same_bounds(const PolicyScale& other) const noexcept {
    return min_x_ == other.min_x_ && max_x_ == other.max_x_;
  }

  friend bool operator==(const PolicyScale&, const PolicyScale&) = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  double min_x_;
  double max_x_;
  std::vector<double> grid_;
};

struct Atom {
  double position;
  double weight;
};

/// Right-continuous step CDF: F(x) = values[i] on [breakpoints[i],
/// breakpoints[i+1]), zero left of the first breakpoint.
struct StepCDF {
  std::vector<double> breakpoints;
  std::vector<double> values;

  double operator()(double x) const noexcept {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    if (it == breakpoints.begin()) return 0.0;
    return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
  }
};

/// Normalized masses on the grid points of a PolicyScale. Immutable.
class WeightedDistribution {
 public:
  /// Builds from weights aligned one-to-one with scale.grid().
  static WeightedDistribution from_grid_weights(PolicyScale scale,
                                                std::span<const double> weights) {
    if (weights.size() != scale.grid().size()) {
      throw Error(ErrorCode::InvalidArgument, "weights do not align with grid");
    }
    return WeightedDistribution(std::move(scale),
                                std::vector<double>(weights.begin(), weights.end()));
  }

  const PolicyScale& scale() const noexcept { return scale_; }
  std::span<const double> positions() const noexcept { return scale_.grid(); }
  std::span<const double> weights() const noexcept { return weights_; }
  /// Sum of the shares before normalization (e.g. 99.999 for a percent row).
  double raw_total() const noexcept { return raw_total_; }
  std::size_t size() const noexcept { return weights_.size(); }

  std::vector<Atom> atoms() const {
    std::vector<Atom> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back({positions()[i], weights_[i]});
    return out;
  }

  /// Cumulative mass at or below grid point i.
  double cumulative(std::size_t i) const noexcept { return cumulative_[i]; }

  StepCDF step_cdf() const {
    return StepCDF{std::vector<double>(positions().begin(), positions().end()), cumulative_};
  }

  friend bool operator==(const WeightedDistribution& a, const WeightedDistribution& b) {
    return a.scale_ == b.scale_ && a.weights_ == b.weights_;
  }

 private:
  friend WeightedDistribution from_shares(PolicyScale, std::span<const std::pair<double, double>>);

  WeightedDistribution(PolicyScale scale, std::vector<double> weights)
      : scale_(std::move(scale)), weights_(std::move(weights)) {
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error(ErrorCode::NegativeShare, "share " + std::to_string(w) + " is negative");
      }
      total += w;
    }
    if (!(total > 0.0)) {
      throw Error(ErrorCode::EmptyDistribution, "no positive share");
    }
    raw_total_ = total;
    // Already-normalized input is left untouched so that normalization is
    // bitwise idempotent.
    if (std::abs(total - 1.0) > 1e-15) {
      for (double& w : weights_) w /= total;
    }
    cumulative_.resize(weights_.size());
    double run = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      run += weights_[i];
      cumulative_[i] = std::min(run, 1.0);
    }
    cumulative_.back() = 1.0;
  }

  PolicyScale scale_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  double raw_total_ = 1.0;
};

/// Builds a distribution from (position, share) pairs. Shares are any
/// nonnegative reals (percents, proportions, counts); they are renormalized.
/// Repeated positions accumulate; grid points without a share get weight 0.
inline WeightedDistribution from_shares(PolicyScale scale,
                                        std::span<const std::pair<double, double>> shares) {
  std::vector<double> weights(scale.grid().size(), 0.0);
  for (const auto& [position, share] : shares) {
    if (!(share >= 0.0) || !std::isfinite(share)) {
      throw Error(ErrorCode::NegativeShare,
                  "share at position " + std::to_string(position) + " is negative");
    }
    const std::size_t i = scale.find(position);
    if (i == PolicyScale::npos) {
      throw Error(ErrorCode::PositionOffGrid,
                  "position " + std::to_string(position) + " is not on the scale grid");
    }
    weights[i] += share;
  }
  return WeightedDistribution(std::move(scale), std::move(weights));
}

inline WeightedDistribution from_shares(PolicyScale scale,
                                        std::initializer_list<std::pair<double, double>> shares) {
  return from_shares(std::move(scale), std::span<const std::pair<double, double>>(
                                           shares.begin(), shares.size()));
}

/// Re-normalizing an existing distribution (a no-op up to bits).
inline WeightedDistribution from_shares(const WeightedDistribution& dist) {
  return WeightedDistribution::from_grid_weights(dist.scale(), dist.weights());
}

inline double cdf(const WeightedDistribution& dist, double x) {
  if (!dist.scale().contains(x)) {
    throw Error(ErrorCode::OutOfScale, "x = " + std::to_string(x) + " is outside the scale");
  }
  const auto grid = dist.positions();
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  if (it == grid.begin()) return 0.0;
  return dist.cumulative(static_cast<std::size_t>(it - grid.begin()) - 1);
}

inline double mean(const WeightedDistribution& dist) {
  double m = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) m += dist.weights()[i] * dist.positions()[i];
  return m;
}

/// Population variance, computed in two passes around the mean.
inline double variance(const WeightedDistribution& dist) {
  const double m = mean(dist);
  double v = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double d = dist.positions()[i] - m;
    v += dist.weights()[i] * d * d;
  }
  return v;
}

/// Mass on the closed interval [lo, hi].
inline double interval_mass(const WeightedDistribution& dist, double lo, double hi) {
  if (lo > hi) throw Error(ErrorCode::InvertedInterval, "lo > hi");
  if (!dist.scale().contains(lo) || !dist.scale().contains(hi)) {
    throw Error(ErrorCode::OutOfScale, "interval leaves the scale");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = dist.positions()[i];
    if (p >= lo && p <= hi) mass += dist.weights()[i];
  }
  return mass;
}

enum class Side { Below, Above };

/// Mean position over atoms strictly below (or strictly above) the cutoff.
inline double conditional_mean(const WeightedDistribution& dist, Side side, double cutoff) {
  double mass = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = dist.positions()[i];
    const bool in = side == Side::Below ? p < cutoff : p > cutoff;
    if (in) {
      mass += dist.weights()[i];
      moment += dist.weights()[i] * p;
    }
  }
  if (!(mass > 0.0)) {
    throw Error(ErrorCode::EmptyGroup, std::string("no mass strictly ") +
                                           (side == Side::Below ? "below " : "above ") +
                                           std::to_string(cutoff));
  }
  return moment / mass;
}

}  // namespace polar
