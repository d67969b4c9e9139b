#include <cmath>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "polar/salience.hpp"
#include "polar/verify.hpp"

namespace polar {
namespace {

PolicyScale lr_scale() { return PolicyScale::integer_range(0, 10); }

WeightedDistribution uniform_on(std::vector<double> pts) {
  std::vector<double> w(pts.size(), 1.0);
  return WeightedDistribution::from_grid_weights(PolicyScale(0.0, 10.0, std::move(pts)), w);
}

WeightedDistribution gd_uniform() { return uniform_on({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}); }

SalienceModel narrow_model() { return {uniform_on({4.9, 5.0, 5.1}), gd_uniform(), 0.5}; }

// Product-grid enumeration keyed on positions rounded to 1e-9.
std::map<long long, double> enumerate(const SalienceModel& m, double alpha) {
  std::map<long long, double> out;
  for (const Atom& c : m.g_c.atoms()) {
    for (const Atom& d : m.g_d.atoms()) {
      const double x = (1 - alpha) * c.position + alpha * d.position;
      out[std::llround(x * 1e9)] += c.weight * d.weight;
    }
  }
  return out;
}

TEST(Induce, EndpointsRecoverComponents) {
  const SalienceModel m = narrow_model();
  const auto at1 = induce(m, 1.0).dist;
  EXPECT_EQ(std::vector<double>(at1.positions().begin(), at1.positions().end()),
            std::vector<double>(m.g_d.positions().begin(), m.g_d.positions().end()));
  for (std::size_t i = 0; i < at1.size(); ++i) EXPECT_NEAR(at1.weights()[i], 1.0 / 11, 1e-15);

  const auto at0 = induce(m, 0.0).dist;
  ASSERT_EQ(at0.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(at0.positions()[i], m.g_c.positions()[i]);
    EXPECT_NEAR(at0.weights()[i], 1.0 / 3, 1e-15);
  }
  EXPECT_TRUE(at0.scale().same_bounds(lr_scale()));
}

TEST(Induce, PointMassHalfway) {
  const SalienceModel m{from_shares(lr_scale(), {{5.0, 1.0}}), gd_uniform(), 0.5};
  const auto d = induce(m).dist;
  ASSERT_EQ(d.size(), 11u);
  for (std::size_t k = 0; k < 11; ++k) {
    EXPECT_NEAR(d.positions()[k], 2.5 + 0.5 * k, 1e-12);
    EXPECT_NEAR(d.weights()[k], 1.0 / 11, 1e-15);
  }
}

TEST(Induce, MatchesEnumerationOracle) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    verify::Rng rng(verify::trial_seed(51, t));
    const SalienceModel m{verify::random_distribution(rng, 6), verify::random_distribution(rng, 8),
                          verify::uniform(rng, 0.0, 1.0)};
    const auto got = induce(m).dist;
    const auto want = enumerate(m, m.alpha);
    std::map<long long, double> seen;
    for (const Atom& a : got.atoms()) seen[std::llround(a.position * 1e9)] += a.weight;
    double total = 0;
    for (const auto& [k, w] : want) {
      total += w;
      EXPECT_NEAR(seen[k], w, 1e-12) << t;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(Induce, RejectsBadAlpha) {
  try {
    induce(narrow_model(), 1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateAlpha);
  }
}

TEST(Induce, MassAndMeanLinearity) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    verify::Rng rng(verify::trial_seed(52, t));
    const SalienceModel m{verify::random_distribution(rng, 8), verify::random_distribution(rng, 12),
                          verify::uniform(rng, 0.0, 1.0)};
    const auto d = induce(m).dist;
    double total = 0;
    for (double w : d.weights()) total += w;
    EXPECT_NEAR(total, 1.0, 1e-9);
    EXPECT_NEAR(mean(d), (1 - m.alpha) * mean(m.g_c) + m.alpha * mean(m.g_d), 1e-12);
  }
}

TEST(SalienceDominance, NarrowBandAgreesWithOracle) {
  // With atomic components the induced CDFs interleave inside the band, so
  // the verdict is whatever the interval definition says at every center.
  const SalienceModel m = narrow_model();
  const auto r = salience_dominance(m, 0.5, 0.8);
  const auto base = induce(m, 0.5).dist, hat = induce(m, 0.8).dist;
  std::vector<double> oracle_region;
  for (double x : detail::union_grid(base, hat)) {
    if (!base.scale().interior(x)) continue;
    if (oracle_dominates_at(base, hat, x) &&
        dominates_at(base, hat, x).relation != Relation::Equivalent) {
      oracle_region.push_back(x);
    }
  }
  EXPECT_EQ(r.region, oracle_region);
  EXPECT_EQ(r.crossing.has_value(), !oracle_region.empty());
  EXPECT_EQ(r.verdict.center, r.crossing.value_or(5.0));
}

TEST(SalienceDominance, PointMassSqueeze) {
  const SalienceModel m{from_shares(lr_scale(), {{5.0, 1.0}}), gd_uniform(), 0.5};
  for (double lo : {0.2, 0.5}) {
    const auto r = salience_dominance(m, lo, 0.9);
    EXPECT_EQ(r.verdict.relation, Relation::HatDominates);
    ASSERT_TRUE(r.crossing.has_value());
    EXPECT_EQ(*r.crossing, 5.0);
  }
}

TEST(SalienceDominance, WideBandOnlyRecorded) {
  const SalienceModel m{uniform_on({2, 3, 4, 5, 6, 7, 8}), gd_uniform(), 0.5};
  const auto r = salience_dominance(m, 0.3, 0.7);
  // Outside the narrow hypothesis any verdict is allowed; it must still be
  // consistent with the interval oracle at the reported center.
  const auto base = induce(m, 0.3).dist, hat = induce(m, 0.7).dist;
  EXPECT_EQ(r.verdict.relation == Relation::HatDominates,
            oracle_dominates_at(base, hat, r.verdict.center) &&
                dominates_at(base, hat, r.verdict.center).relation != Relation::Equivalent);
}

TEST(SalienceDominance, AlphaChecks) {
  for (auto [lo, hi] : {std::pair{0.0, 0.5}, {0.6, 0.5}, {0.5, 1.2}, {0.5, 0.5}}) {
    try {
      salience_dominance(narrow_model(), lo, hi);
      FAIL() << lo << " " << hi;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DegenerateAlpha);
    }
  }
}

TEST(Sweep, Composition) {
  const SalienceModel m = narrow_model();
  const auto one = salience_sweep(m, {0.6}, {5.0});
  ASSERT_EQ(one.values.size(), 1u);
  ASSERT_EQ(one.values[0].size(), 1u);
  EXPECT_EQ(one.values[0][0], index(induce(m, 0.6).dist, 5.0).value);

  const std::vector<double> centers{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto sw = salience_sweep(m, {1.0, 0.3}, centers);
  EXPECT_EQ(sw.alphas, (std::vector<double>{0.3, 1.0}));
  const auto prof = index_profile(m.g_d, centers);
  for (std::size_t j = 0; j < centers.size(); ++j) EXPECT_EQ(sw.values[1][j], prof[j].value);
  EXPECT_THROW(salience_sweep(m, {0.0}, centers), Error);
}

TEST(Sweep, PointMassColumnNonDecreasing) {
  const SalienceModel m{from_shares(lr_scale(), {{5.0, 1.0}}), gd_uniform(), 0.5};
  const auto sw = salience_sweep(m, {0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95, 1.0}, {5.0});
  for (std::size_t i = 1; i < sw.values.size(); ++i) {
    EXPECT_GE(sw.values[i][0], sw.values[i - 1][0] - 1e-12);
  }
}

TEST(Chain, Transitivity) {
  const std::vector<SalienceModel> models{
      narrow_model(), {from_shares(lr_scale(), {{5.0, 1.0}}), gd_uniform(), 0.5}};
  int checked = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    verify::Rng rng(verify::trial_seed(53, t));
    std::vector<double> a{verify::uniform(rng, 0.1, 0.9), verify::uniform(rng, 0.1, 0.9),
                          verify::uniform(rng, 0.1, 0.9)};
    std::sort(a.begin(), a.end());
    if (a[1] - a[0] < 0.02 || a[2] - a[1] < 0.02) continue;
    for (const SalienceModel& m : models) {
      const auto r12 = salience_dominance(m, a[0], a[1]);
      const auto r23 = salience_dominance(m, a[1], a[2]);
      if (!r12.crossing || !r23.crossing) continue;
      const auto [c_lo, c_hi] = m.common_band();
      const double lo = std::min({*r12.crossing, *r23.crossing, c_lo});
      const double hi = std::max({*r12.crossing, *r23.crossing, c_hi});
      const auto r13 = salience_dominance(m, a[0], a[2]);
      bool found = false;
      for (double x : r13.region) found = found || (x >= lo - 1e-9 && x <= hi + 1e-9);
      EXPECT_TRUE(found) << t;
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

}  // namespace
}  // namespace polar
