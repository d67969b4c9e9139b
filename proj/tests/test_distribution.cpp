#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "polar/distribution.hpp"
#include "polar/io/survey_table.hpp"
#include "polar/verify.hpp"

namespace polar {
namespace {

PolicyScale lr_scale() { return PolicyScale::integer_range(0, 10); }

WeightedDistribution lr_2004() { return io::to_distribution(io::fixture("lr", "2004")); }

TEST(PolicyScale, RejectsBadBoundsAndGrids) {
  EXPECT_THROW(PolicyScale(1.0, 1.0, {1.0}), Error);
  EXPECT_THROW(PolicyScale(0.0, 10.0, {}), Error);
  EXPECT_THROW(PolicyScale(0.0, 10.0, {2.0, 2.0}), Error);
  EXPECT_THROW(PolicyScale(0.0, 10.0, {3.0, 1.0}), Error);
  EXPECT_THROW(PolicyScale(0.0, 10.0, {11.0}), Error);
  EXPECT_NO_THROW(PolicyScale(0.0, 10.0, {0.0, 4.9, 10.0}));
}

TEST(FromShares, TableRowNormalizes) {
  const auto d = lr_2004();
  ASSERT_EQ(d.size(), 11u);
  double total = 0.0;
  for (double w : d.weights()) total += w;
  EXPECT_NEAR(total, 1.0, 1e-9);
  EXPECT_NEAR(d.raw_total(), 99.999, 1e-9);
}

TEST(FromShares, SingleEntryIsPointMass) {
  const auto d = from_shares(lr_scale(), {{5.0, 0.37}});
  EXPECT_EQ(d.weights()[5], 1.0);
  EXPECT_EQ(cdf(d, 4.9), 0.0);
  EXPECT_EQ(cdf(d, 5.0), 1.0);
}

TEST(FromShares, SymmetricPair) {
  const auto d = from_shares(lr_scale(), {{0.0, 2.0}, {10.0, 2.0}});
  EXPECT_EQ(d.weights()[0], 0.5);
  EXPECT_EQ(d.weights()[10], 0.5);
}

TEST(FromShares, Errors) {
  try {
    from_shares(lr_scale(), {{1.0, -0.1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeShare);
  }
  try {
    from_shares(lr_scale(), {{1.0, 0.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyDistribution);
  }
  try {
    from_shares(lr_scale(), {{1.5, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PositionOffGrid);
  }
}

TEST(FromShares, RenormalizingIsIdempotent) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    verify::Rng rng(verify::trial_seed(11, t));
    const auto d = verify::random_distribution(rng, 12);
    const auto once = from_shares(d);
    EXPECT_EQ(from_shares(once), once);
  }
}

TEST(Cdf, TableAndCounting) {
  // Hand sum of the first five 2004 shares: 1.169+2.682+4.478+6.211+7.316.
  EXPECT_NEAR(cdf(lr_2004(), 4.0), 21.856 / 99.999, 1e-12);
  EXPECT_NEAR(cdf(lr_2004(), 4.0), 0.21856, 1e-5);

  std::vector<std::pair<double, double>> uniform;
  for (int k = 0; k <= 10; ++k) uniform.emplace_back(k, 1.0);
  const auto u = from_shares(lr_scale(), uniform);
  EXPECT_NEAR(cdf(u, 5.0), 6.0 / 11.0, 1e-15);
  EXPECT_EQ(cdf(u, 10.0), 1.0);
  EXPECT_THROW(cdf(u, 10.5), Error);
}

TEST(Cdf, MonotoneOnRandomPairs) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    verify::Rng rng(verify::trial_seed(12, t));
    const auto d = verify::random_distribution(rng, 12);
    const double a = verify::uniform(rng, 0.0, 10.0), b = verify::uniform(rng, 0.0, 10.0);
    EXPECT_GE(cdf(d, std::max(a, b)) - cdf(d, std::min(a, b)), 0.0);
    EXPECT_EQ(cdf(d, 10.0), 1.0);
  }
}

TEST(Moments, TableValues) {
  const auto d = lr_2004();
  EXPECT_NEAR(mean(d), 5.875, 0.005);
  EXPECT_NEAR(variance(d), 5.336, 0.005);
  const auto lc = io::to_distribution(io::fixture("lc", "2016"));
  EXPECT_NEAR(mean(lc), 4.168, 0.005);
  EXPECT_NEAR(variance(lc), 2.503, 0.005);
}

TEST(Moments, PointMass) {
  const auto d = from_shares(lr_scale(), {{7.0, 1.0}});
  EXPECT_EQ(mean(d), 7.0);
  EXPECT_EQ(variance(d), 0.0);
}

TEST(Moments, MatchBruteForceLoop) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    verify::Rng rng(verify::trial_seed(13, t));
    const auto d = verify::random_distribution(rng, 12);
    double s0 = 0, s1 = 0, s2 = 0;
    for (const Atom& a : d.atoms()) {
      s0 += a.weight;
      s1 += a.weight * a.position;
      s2 += a.weight * a.position * a.position;
    }
    EXPECT_NEAR(mean(d), s1 / s0, 1e-12);
    EXPECT_NEAR(variance(d), s2 / s0 - (s1 / s0) * (s1 / s0), 1e-12);
  }
}

TEST(IntervalMass, TableShares) {
  const auto d08 = io::to_distribution(io::fixture("lr", "2008"));
  const auto d12 = io::to_distribution(io::fixture("lr", "2012"));
  EXPECT_NEAR(interval_mass(d08, 4, 6), 0.48409, 5e-5);
  EXPECT_NEAR(interval_mass(d12, 4, 6), 0.50360, 5e-5);
  EXPECT_NEAR(interval_mass(d12, 0, 10), 1.0, 1e-12);
}

TEST(IntervalMass, Inverted) {
  try {
    interval_mass(lr_2004(), 6, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvertedInterval);
  }
}

TEST(IntervalMass, EqualsCdfDifference) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    verify::Rng rng(verify::trial_seed(14, t));
    const auto d = verify::random_distribution(rng, 12);
    // Endpoints from the half-integer lattice so they can land on atoms;
    // the left limit is taken a quarter step below (never an atom).
    double lo = 0.5 * verify::uniform_int(rng, 0, 20), hi = 0.5 * verify::uniform_int(rng, 0, 20);
    if (lo > hi) std::swap(lo, hi);
    const double left_limit = lo == 0.0 ? 0.0 : cdf(d, lo - 0.25);
    EXPECT_NEAR(interval_mass(d, lo, hi), cdf(d, hi) - left_limit, 1e-12);
  }
}

TEST(ConditionalMean, Examples) {
  const auto two = from_shares(lr_scale(), {{0.0, 0.5}, {10.0, 0.5}});
  EXPECT_EQ(conditional_mean(two, Side::Below, 5.0), 0.0);

  // Atoms 5, 6, 7 of the 2004 liberal-conservative row, weighted by hand.
  const auto lc = io::to_distribution(io::fixture("lc", "2004"));
  const double expected = (5 * 15.82 + 6 * 21.62 + 7 * 4.01) / (15.82 + 21.62 + 4.01);
  EXPECT_NEAR(conditional_mean(lc, Side::Above, 4.0), expected, 1e-12);
  EXPECT_NEAR(conditional_mean(lc, Side::Above, 4.0), 5.7151, 1e-4);

  const auto pm = from_shares(lr_scale(), {{5.0, 1.0}});
  try {
    conditional_mean(pm, Side::Below, 5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyGroup);
  }
}

}  // namespace
}  // namespace polar
