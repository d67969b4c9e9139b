#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "polar/affective.hpp"
#include "polar/dominance.hpp"
#include "polar/io/survey_table.hpp"
#include "polar/verify.hpp"

namespace polar {
namespace {

PolicyScale lr_scale() { return PolicyScale::integer_range(0, 10); }

// Two-loop reference for g = identity: every left voter against every right
// voter's group mean, written without the per-atom share vectors.
double identity_level_reference(const WeightedDistribution& d, double cutoff) {
  double wl = 0, sl = 0, wr = 0, sr = 0;
  for (const Atom& a : d.atoms()) {
    if (a.position < cutoff) {
      wl += a.weight;
      sl += a.weight * a.position;
    } else if (a.position > cutoff) {
      wr += a.weight;
      sr += a.weight * a.position;
    }
  }
  const double ml = sl / wl, mr = sr / wr;
  double level = 0;
  for (const Atom& a : d.atoms()) {
    if (a.position < cutoff) level += a.weight * (mr - a.position);
    if (a.position > cutoff) level += a.weight * (a.position - ml);
  }
  return level / (wl + wr);
}

TEST(AffectiveLevel, SymmetricExtremes) {
  const auto d = from_shares(lr_scale(), {{0.0, 0.5}, {10.0, 0.5}});
  const auto r = affective_level(d, {5.0});
  EXPECT_EQ(r.m_left, 0.0);
  EXPECT_EQ(r.m_right, 10.0);
  EXPECT_EQ(r.level, 10.0);
  EXPECT_EQ(r.excluded_mass, 0.0);
}

TEST(AffectiveLevel, AdjacentPair) {
  const auto d = from_shares(lr_scale(), {{4.0, 0.5}, {6.0, 0.5}});
  EXPECT_EQ(affective_level(d, {5.0}).level, 2.0);
}

TEST(AffectiveLevel, LibConRegression) {
  const auto d = io::to_distribution(io::fixture("lc", "2020"));
  const double expected = identity_level_reference(d, 4.0);
  const auto r = affective_level(d, {4.0});
  EXPECT_NEAR(r.level, expected, 1e-12);
  EXPECT_GT(r.excluded_mass, 0.0);
  EXPECT_NEAR(r.level, 3.642624513078, 1e-9);
}

TEST(AffectiveLevel, IdentityMatchesTwoLoopReference) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    verify::Rng rng(verify::trial_seed(41, t));
    const auto d = verify::random_distribution(rng, 12);
    const double c = verify::uniform(rng, 0.25, 9.75);
    try {
      const double got = affective_level(d, {c}).level;
      EXPECT_NEAR(got, identity_level_reference(d, c), 1e-12) << t;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::EmptyGroup);
    }
  }
}

TEST(TiePolicy, MassAtCutoff) {
  const auto d = from_shares(lr_scale(), {{2.0, 0.25}, {5.0, 0.5}, {8.0, 0.25}});
  const auto ex = affective_level(d, {5.0, AnimosityFunction::identity(), TiePolicy::Exclude});
  EXPECT_EQ(ex.m_left, 2.0);
  EXPECT_EQ(ex.m_right, 8.0);
  EXPECT_EQ(ex.excluded_mass, 0.5);
  EXPECT_DOUBLE_EQ(ex.level, 6.0);

  // Middle mass joins the left: m_L = 4, m_R = 8.
  const auto left = affective_level(d, {5.0, AnimosityFunction::identity(), TiePolicy::AssignLeft});
  EXPECT_DOUBLE_EQ(left.m_left, 4.0);
  EXPECT_DOUBLE_EQ(left.level, 0.25 * 6 + 0.5 * 3 + 0.25 * 4);

  const auto right = affective_level(d, {5.0, AnimosityFunction::identity(), TiePolicy::AssignRight});
  EXPECT_DOUBLE_EQ(right.m_right, 6.0);
  EXPECT_DOUBLE_EQ(right.level, 0.25 * 4 + 0.5 * 3 + 0.25 * 6);

  // Halves: each group holds a quarter at 5, m_L = 3.5, m_R = 6.5.
  const auto split = affective_level(d, {5.0, AnimosityFunction::identity(), TiePolicy::Split});
  EXPECT_DOUBLE_EQ(split.m_left, 3.5);
  EXPECT_DOUBLE_EQ(split.m_right, 6.5);
  EXPECT_DOUBLE_EQ(split.level, 0.25 * 4.5 + 0.25 * 1.5 + 0.25 * 1.5 + 0.25 * 4.5);
}

TEST(AffectiveLevel, EmptyGroup) {
  const auto d = from_shares(lr_scale(), {{5.0, 0.5}, {8.0, 0.5}});
  try {
    affective_level(d, {5.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyGroup);
  }
  EXPECT_NO_THROW(affective_level(d, {5.0, AnimosityFunction::identity(), TiePolicy::AssignLeft}));
}

TEST(Animosity, Shapes) {
  EXPECT_EQ(AnimosityFunction::identity()(3.5), 3.5);
  EXPECT_DOUBLE_EQ(AnimosityFunction::power(2.0)(3.0), 9.0);
  const auto plf = AnimosityFunction::piecewise_linear({{0, 0}, {2, 1}, {4, 5}});
  EXPECT_EQ(plf(-1), 0.0);
  EXPECT_EQ(plf(1), 0.5);
  EXPECT_EQ(plf(3), 3.0);
  EXPECT_EQ(plf(9), 5.0);
  EXPECT_THROW(AnimosityFunction::power(0.5), Error);
  EXPECT_THROW(AnimosityFunction::piecewise_linear({{1, 0}, {1, 2}}), Error);
}

TEST(Animosity, NonMonotoneRejected) {
  const auto d = from_shares(lr_scale(), {{0.0, 0.5}, {10.0, 0.5}});
  const auto bump = AnimosityFunction::custom([](double t) { return std::sin(t); });
  try {
    affective_level(d, {5.0, bump});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonMonotoneG);
  }
  const auto dip = AnimosityFunction::piecewise_linear({{0, 0}, {5, 2}, {6, 1}});
  EXPECT_THROW(dip.validate(10.0), Error);
}

TEST(Animosity, PowerRaisesLevel) {
  const auto d = io::to_distribution(io::fixture("lr", "2012"));
  const double lin = affective_level(d, {5.0}).level;
  const double sq = affective_level(d, {5.0, AnimosityFunction::power(2.0)}).level;
  EXPECT_GT(sq, lin);
}

TEST(SpreadOutward, CenterSplitEvenly) {
  const auto d = from_shares(lr_scale(), {{4.0, 1.0}, {5.0, 1.0}, {6.0, 1.0}});
  const auto hat = spread_outward(d, 5.0, 0.1);
  EXPECT_NEAR(hat.weights()[4], 1.0 / 3 + 0.05, 1e-15);
  EXPECT_NEAR(hat.weights()[5], 1.0 / 3 - 0.1, 1e-15);
  EXPECT_NEAR(hat.weights()[6], 1.0 / 3 + 0.05, 1e-15);
  EXPECT_EQ(dominates_at(d, hat, 5.0).relation, Relation::HatDominates);
}

TEST(SpreadOutward, ZeroIsIdentity) {
  const auto d = io::to_distribution(io::fixture("lr", "2008"));
  const auto hat = spread_outward(d, 5.0, 0.0);
  EXPECT_EQ(hat, d);
  EXPECT_EQ(dominates_at(d, hat, 5.0).relation, Relation::Equivalent);
}

TEST(SpreadOutward, Errors) {
  const auto d = from_shares(lr_scale(), {{0.0, 0.4}, {5.0, 0.2}, {10.0, 0.4}});
  try {
    spread_outward(d, 5.0, 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientInteriorMass);
  }
  EXPECT_THROW(spread_outward(d, 0.0, 0.1), Error);
  EXPECT_THROW(spread_outward(d, 5.0, -0.1), Error);
}

TEST(SpreadOutward, ConservesMassAndNeverLowersIndex) {
  for (std::uint64_t t = 0; t < 500; ++t) {
    verify::Rng rng(verify::trial_seed(42, t));
    const auto d = verify::random_distribution(rng, 12);
    const double c = verify::random_center(rng, d);
    const auto hat = spread_outward(d, c, verify::interior_mass(d) * verify::uniform(rng, 0, 1));
    double total = 0;
    for (double w : hat.weights()) total += w;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_GE(index(hat, c).value, index(d, c).value - 1e-12);
  }
}

TEST(Monotonicity, SpreadsRaiseAffectiveLevel) {
  const auto r = verify::check_affective_monotone(500, 43);
  EXPECT_EQ(r.trials, 500);
  EXPECT_EQ(r.level_violations, 0);
  EXPECT_EQ(r.mean_violations, 0);
}

}  // namespace
}  // namespace polar
