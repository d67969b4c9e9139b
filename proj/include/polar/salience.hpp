#pragma once

// Positions built from two issue stances, x = (1 - alpha) c + alpha d, with
// c ~ G_c (narrow common-value issue) and d ~ G_d (divisive issue) drawn
// independently. For atomic G_c and G_d the induced distribution is the
// exact discrete convolution over the product of their supports.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polar/distribution.hpp"
#include "polar/dominance.hpp"
#include "polar/error.hpp"
#include "polar/index.hpp"

namespace polar {

/// g_d defines the policy scale X; g_c must be supported inside it.
struct SalienceModel {
  WeightedDistribution g_c;
  WeightedDistribution g_d;
  double alpha = 0.5;

  /// Extent [c_lo, c_hi] of the positive-mass support of g_c.
  std::pair<double, double> common_band() const {
    double lo = 0.0, hi = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < g_c.size(); ++i) {
      if (g_c.weights()[i] <= 0.0) continue;
      const double p = g_c.positions()[i];
      if (!seen) lo = p;
      hi = p;
      seen = true;
    }
    return {lo, hi};
  }
};

struct InducedDistribution {
  WeightedDistribution dist;
  double alpha;
  std::string support_note;
};

namespace detail {

inline void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::DegenerateAlpha, "alpha " + std::to_string(alpha) + " not in [0, 1]");
  }
}

inline void require_common_inside(const SalienceModel& model) {
  const auto [lo, hi] = model.common_band();
  if (!model.g_d.scale().contains(lo) || !model.g_d.scale().contains(hi)) {
    throw Error(ErrorCode::OutOfScale, "common-value support leaves the divisive scale");
  }
}

}  // namespace detail

inline InducedDistribution induce(const SalienceModel& model, double alpha) {
  detail::require_alpha(alpha);
  detail::require_common_inside(model);
  const PolicyScale& x_scale = model.g_d.scale();

  std::vector<Atom> product;
  std::size_t n_c = 0, n_d = 0;
  for (std::size_t i = 0; i < model.g_c.size(); ++i) {
    const double wc = model.g_c.weights()[i];
    if (wc <= 0.0) continue;
    ++n_c;
    n_d = 0;
    const double c = model.g_c.positions()[i];
    for (std::size_t j = 0; j < model.g_d.size(); ++j) {
      const double wd = model.g_d.weights()[j];
      if (wd <= 0.0) continue;
      ++n_d;
      const double d = model.g_d.positions()[j];
      const double x = std::clamp((1.0 - alpha) * c + alpha * d, x_scale.min_x(), x_scale.max_x());
      product.push_back({x, wc * wd});
    }
  }
  std::sort(product.begin(), product.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });

  // Merge runs within the grid tolerance onto the first position of the run.
  std::vector<double> grid, weights;
  double run_start = 0.0;
  for (const Atom& a : product) {
    if (grid.empty() || a.position - run_start > kGridMatchTolerance) {
      run_start = a.position;
      grid.push_back(a.position);
      weights.push_back(a.weight);
    } else {
      weights.back() += a.weight;
    }
  }
  const std::size_t merged = grid.size();
  PolicyScale scale(x_scale.min_x(), x_scale.max_x(), std::move(grid));
  std::string note = "product grid " + std::to_string(n_c) + "x" + std::to_string(n_d) + " -> " +
                     std::to_string(merged) + " atoms (merge tolerance 1e-9)";
  return {WeightedDistribution::from_grid_weights(std::move(scale), weights), alpha,
          std::move(note)};
}

inline InducedDistribution induce(const SalienceModel& model) { return induce(model, model.alpha); }

struct SalienceDominance {
  DominanceVerdict verdict;
  std::optional<double> crossing;
  std::vector<double> region;
  bool crossing_in_band = false;
};

/// Compares F at alpha_lo (base) against F at alpha_hi (hat). The reported
/// crossing is the dominance-region point closest to the middle of the
/// common-value band; it counts as in band when it lies within one
/// induced-grid step of [c_lo, c_hi].
inline SalienceDominance salience_dominance(const SalienceModel& model, double alpha_lo,
                                            double alpha_hi) {
  if (!(alpha_lo > 0.0)) {
    throw Error(ErrorCode::DegenerateAlpha, "alpha_lo must be > 0");
  }
  if (!(alpha_lo < alpha_hi) || !(alpha_hi <= 1.0)) {
    throw Error(ErrorCode::DegenerateAlpha, "need 0 < alpha_lo < alpha_hi <= 1");
  }
  const InducedDistribution base = induce(model, alpha_lo);
  const InducedDistribution hat = induce(model, alpha_hi);
  const auto [c_lo, c_hi] = model.common_band();
  const double band_mid = 0.5 * (c_lo + c_hi);

  SalienceDominance out{{Relation::Incomparable, band_mid, std::nullopt}, std::nullopt, {}, false};
  out.region = dominance_region(base.dist, hat.dist);

  if (out.region.empty()) {
    if (base.dist.scale().interior(band_mid)) {
      out.verdict = dominates_at(base.dist, hat.dist, band_mid);
    }
    return out;
  }

  const double best = *std::min_element(
      out.region.begin(), out.region.end(),
      [&](double a, double b) { return std::abs(a - band_mid) < std::abs(b - band_mid); });
  out.crossing = best;
  out.verdict = dominates_at(base.dist, hat.dist, best);

  const std::vector<double> grid = detail::union_grid(base.dist, hat.dist);
  const auto it = std::lower_bound(grid.begin(), grid.end(), best - kGridMatchTolerance);
  const std::size_t k = static_cast<std::size_t>(it - grid.begin());
  const double step_left = k > 0 ? best - grid[k - 1] : 0.0;
  const double step_right = k + 1 < grid.size() ? grid[k + 1] - best : 0.0;
  out.crossing_in_band = best >= c_lo - step_left && best <= c_hi + step_right;
  return out;
}

struct SalienceSweep {
  std::vector<double> alphas;   // ascending
  std::vector<double> centers;
  std::vector<std::vector<double>> values;  // values[row = alpha][col = center]
};

inline SalienceSweep salience_sweep(const SalienceModel& model, std::vector<double> alphas,
                                    std::vector<double> centers) {
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw Error(ErrorCode::DegenerateAlpha, "sweep alphas must lie in (0, 1]");
    }
  }
  std::sort(alphas.begin(), alphas.end());
  SalienceSweep out{std::move(alphas), std::move(centers), {}};
  for (double a : out.alphas) {
    const InducedDistribution f = induce(model, a);
    std::vector<double> row;
    row.reserve(out.centers.size());
    for (const auto& p : index_profile(f.dist, out.centers)) row.push_back(p.value);
    out.values.push_back(std::move(row));
  }
  return out;
}

}  // namespace polar
