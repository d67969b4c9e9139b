#pragma once

// Seeded randomized checks of the ordering, index and affective results.
// Each trial draws from its own generator, seeded from (master seed, trial
// number), so any single trial can be replayed in isolation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polar/affective.hpp"
#include "polar/distribution.hpp"
#include "polar/dominance.hpp"
#include "polar/index.hpp"

namespace polar::verify {

/// splitmix64 finalizer; decorrelates consecutive trial numbers.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random distribution on [0, 10] with between 1 and max_atoms grid points
/// drawn from the half-integer lattice. Weights are small integers, with
/// some zeros, and at least one positive.
inline WeightedDistribution random_distribution(Rng& rng, int max_atoms) {
  std::vector<double> lattice;
  for (int k = 0; k <= 20; ++k) lattice.push_back(0.5 * k);
  std::shuffle(lattice.begin(), lattice.end(), rng);
  const int n = uniform_int(rng, 1, max_atoms);
  std::vector<double> grid(lattice.begin(), lattice.begin() + n);
  std::sort(grid.begin(), grid.end());
  std::vector<double> w(grid.size());
  for (double& x : w) x = uniform_int(rng, 0, 3) == 0 ? 0.0 : uniform_int(rng, 1, 9);
  if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) w[0] = 1.0;
  return WeightedDistribution::from_grid_weights(PolicyScale(0.0, 10.0, grid), w);
}

/// Random interior center: a grid point half the time, otherwise uniform.
inline double random_center(Rng& rng, const WeightedDistribution& d) {
  std::vector<double> interior;
  for (double p : d.positions()) {
    if (d.scale().interior(p)) interior.push_back(p);
  }
  if (!interior.empty() && uniform_int(rng, 0, 1) == 0) {
    return interior[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(interior.size()) - 1))];
  }
  return uniform(rng, 0.25, 9.75);
}

inline double interior_mass(const WeightedDistribution& d) {
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < d.size(); ++i) m += d.weights()[i];
  return m;
}

/// Random increasing animosity function.
inline AnimosityFunction random_animosity(Rng& rng) {
  switch (uniform_int(rng, 0, 2)) {
    case 0: return AnimosityFunction::identity();
    case 1: return AnimosityFunction::power(uniform(rng, 1.0, 3.0));
    default: {
      std::vector<std::pair<double, double>> knots;
      double x = 0.0, y = uniform(rng, 0.0, 1.0);
      const int k = uniform_int(rng, 2, 6);
      for (int i = 0; i < k; ++i) {
        knots.emplace_back(x, y);
        x += uniform(rng, 0.5, 4.0);
        y += uniform(rng, 0.0, 2.0);
      }
      return AnimosityFunction::piecewise_linear(std::move(knots));
    }
  }
}

struct OracleAgreement {
  int trials = 0;
  int agreements = 0;
  int hat_dominates = 0;      // cases where the fast test said HatDominates
  int oracle_true = 0;
  std::optional<int> first_disagreement;
};

/// Fast single-crossing test vs interval enumeration on random pairs with
/// at most max_atoms grid points each. A third of the hats are built by
/// spreading the base outward, a third are copies, the rest independent.
inline OracleAgreement check_oracle_agreement(int trials, std::uint64_t seed, int max_atoms = 12) {
  OracleAgreement out;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const WeightedDistribution base = random_distribution(rng, max_atoms);
    const double xstar = random_center(rng, base);
    std::optional<WeightedDistribution> hat;
    switch (uniform_int(rng, 0, 2)) {
      case 0: {
        const double room = interior_mass(base);
        hat = spread_outward(base, xstar, room * uniform(rng, 0.0, 1.0));
        break;
      }
      case 1: hat = base; break;
      default: hat = random_distribution(rng, max_atoms); break;
    }
    const bool fast = dominates_at(base, *hat, xstar).relation == Relation::HatDominates;
    const bool fast_weak = fast || dominates_at(base, *hat, xstar).relation == Relation::Equivalent;
    const bool oracle = oracle_dominates_at(base, *hat, xstar);
    ++out.trials;
    out.hat_dominates += fast;
    out.oracle_true += oracle;
    // The oracle is the weak interval order, under which equivalent
    // distributions dominate each other.
    if (fast_weak == oracle) {
      ++out.agreements;
    } else if (!out.first_disagreement) {
      out.first_disagreement = t;
    }
  }
  return out;
}

struct IndexRange {
  int trials = 0;
  int out_of_range = 0;
  double min_value = 1.0;
  double max_value = 0.0;
};

inline IndexRange check_index_range(int trials, std::uint64_t seed, int max_atoms = 12) {
  IndexRange out;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const WeightedDistribution d = random_distribution(rng, max_atoms);
    const double c = random_center(rng, d);
    const double v = index(d, c).value;
    ++out.trials;
    out.min_value = std::min(out.min_value, v);
    out.max_value = std::max(out.max_value, v);
    if (!(v >= 0.0 && v <= 1.0)) ++out.out_of_range;
  }
  return out;
}

struct StrictIncrease {
  int trials = 0;
  int non_equivalent = 0;  // spreads that actually changed the CDF
  int strict = 0;          // of those, how many raised P strictly
  int verdict_failures = 0;  // spreads not confirmed as HatDominates/Equivalent
};

/// spread_outward must produce dominance and, when it changes the CDF, a
/// strictly higher index at the same center.
inline StrictIncrease check_strict_increase(int trials, std::uint64_t seed, int max_atoms = 12) {
  StrictIncrease out;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const WeightedDistribution base = random_distribution(rng, max_atoms);
    const double xstar = random_center(rng, base);
    const double amount = interior_mass(base) * uniform(rng, 0.0, 1.0);
    const WeightedDistribution hat = spread_outward(base, xstar, amount);
    const Relation rel = dominates_at(base, hat, xstar).relation;
    ++out.trials;
    if (rel == Relation::Equivalent) continue;
    if (rel != Relation::HatDominates) {
      ++out.verdict_failures;
      continue;
    }
    ++out.non_equivalent;
    if (index(hat, xstar).value > index(base, xstar).value) ++out.strict;
  }
  return out;
}

struct AffectiveMonotone {
  int trials = 0;  // evaluated tuples
  int level_violations = 0;
  int mean_violations = 0;
  int skipped = 0;  // draws discarded because a group was empty
};

/// Spreading outward around a cutoff with no mass on it never lowers the
/// affective level and moves both group means weakly outward. Draws that
/// leave a group empty are discarded until `trials` tuples were evaluated.
inline AffectiveMonotone check_affective_monotone(int trials, std::uint64_t seed,
                                                  int max_atoms = 12) {
  constexpr double kSlack = 1e-12;
  AffectiveMonotone out;
  for (std::uint64_t attempt = 0; out.trials < trials; ++attempt) {
    Rng rng(trial_seed(seed, attempt));
    const WeightedDistribution base = random_distribution(rng, std::max(3, max_atoms));
    const auto grid = base.positions();
    if (grid.size() < 2) {
      ++out.skipped;
      continue;
    }
    // Cutoff strictly between two grid points, so no atom sits on it.
    const int k = uniform_int(rng, 0, static_cast<int>(grid.size()) - 2);
    const double cutoff = grid[k] + uniform(rng, 0.05, 0.95) * (grid[k + 1] - grid[k]);
    AffectiveModel model{cutoff, random_animosity(rng), TiePolicy::Exclude};
    const double amount = interior_mass(base) * uniform(rng, 0.0, 1.0);
    const WeightedDistribution hat = spread_outward(base, cutoff, amount);
    AffectiveReport before{}, after{};
    try {
      before = affective_level(base, model);
      after = affective_level(hat, model);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyGroup) throw;
      ++out.skipped;
      continue;
    }
    ++out.trials;
    const double scale = std::max(1.0, std::abs(before.level));
    if (after.level < before.level - kSlack * scale) ++out.level_violations;
    if (after.m_left > before.m_left + kSlack || after.m_right < before.m_right - kSlack) {
      ++out.mean_violations;
    }
  }
  return out;
}

}  // namespace polar::verify
