#include "mgs/measurement.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "stat_util.h"

using namespace mgs;
using mgs::testing::within_4_sigma;

namespace {

constexpr std::uint64_t kN = 1'000'000;

const UnitVector kZ(0, 0, 1);

UnitVector at_angle(double t) { return UnitVector::from_planar_angle(t); }

std::uint64_t count_up(const SpinUpEnsemble& ens, const UnitVector& r, std::uint64_t n) {
  std::uint64_t up = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    Mgs m = ens.generate(t);
    up += measure_single(m, r, t).j1 == 1;
  }
  return up;
}

}  // namespace

TEST(MeasureSingle, spin_up_certain_along_n) {
  const UnitVector n(2, -1, 0.5);
  const SpinUpEnsemble ens(n, kDefaultKMax, RandomStream(1));
  for (std::uint64_t t = 0; t < 100000; ++t) {
    Mgs m = ens.generate(t);
    const TrialRecord rec = measure_single(m, n, t);
    ASSERT_TRUE(rec.ok());
    ASSERT_EQ(rec.j1, 1);
  }
}

TEST(MeasureSingle, record_fields) {
  const SpinUpEnsemble ens(kZ, kDefaultKMax, RandomStream(99));
  Mgs m = ens.generate(5);
  const TrialRecord rec = measure_single(m, at_angle(1.0), 5);
  EXPECT_EQ(rec.trial, 5u);
  EXPECT_EQ(rec.master_seed, 99u);
  EXPECT_TRUE(rec.k1 && *rec.k1 >= 1);
  EXPECT_FALSE(rec.r2 || rec.j2 || rec.k2);
}

TEST(MeasureSingle, sixty_degrees) {
  const SpinUpEnsemble ens(kZ, kDefaultKMax, RandomStream(2));
  EXPECT_TRUE(within_4_sigma(count_up(ens, at_angle(std::numbers::pi / 3), kN), kN, 0.75));
}

TEST(MeasureSingle, orthogonal) {
  const SpinUpEnsemble ens(kZ, kDefaultKMax, RandomStream(3));
  EXPECT_TRUE(within_4_sigma(count_up(ens, UnitVector(0, 1, 0), kN), kN, 0.5));
}

TEST(MeasureSingle, no_active_layer_record) {
  Mgs m = Mgs::with_orientations({UnitVector(1, 0, 0)}, RandomStream(1));
  m.pin_epsilon(1, kZ, 0.0);
  const TrialRecord rec = measure_single(m, kZ);
  EXPECT_EQ(rec.status, TrialStatus::kNoActiveLayer);
  EXPECT_FALSE(rec.j1);
}

TEST(MeasurePairDirect, anticorrelated_along_common_axis) {
  const SingletEnsemble ens(kDefaultKMax, RandomStream(4));
  const UnitVector r(0.3, -0.5, 0.8);
  for (std::uint64_t t = 0; t < 200000; ++t) {
    MgsPair p = ens.generate(t);
    const TrialRecord rec = measure_pair_direct(p, r, r, t);
    ASSERT_TRUE(rec.ok());
    ASSERT_EQ(*rec.j1, -*rec.j2);
    ASSERT_EQ(rec.k1, rec.k2);
  }
}

TEST(MeasurePairDirect, orthogonal_joint_quarter) {
  const SingletEnsemble ens(kDefaultKMax, RandomStream(5));
  std::uint64_t both_up = 0;
  for (std::uint64_t t = 0; t < kN; ++t) {
    MgsPair p = ens.generate(t);
    const TrialRecord rec = measure_pair_direct(p, kZ, UnitVector(1, 0, 0), t);
    both_up += rec.j1 == 1 && rec.j2 == 1;
  }
  EXPECT_TRUE(within_4_sigma(both_up, kN, 0.25));
}

TEST(MeasurePairDirect, singlet_law_at_pi_over_3) {
  const SingletEnsemble ens(kDefaultKMax, RandomStream(6));
  const double c = std::cos(std::numbers::pi / 3);
  std::uint64_t same = 0;
  for (std::uint64_t t = 0; t < kN; ++t) {
    MgsPair p = ens.generate(t);
    const TrialRecord rec = measure_pair_direct(p, kZ, at_angle(std::numbers::pi / 3), t);
    same += rec.j1 == rec.j2;
  }
  // P(j1 = j2) = 2 * (1 - c) / 4
  EXPECT_TRUE(within_4_sigma(same, kN, (1 - c) / 2));
}

TEST(MeasurePairDelayed, identical_to_direct) {
  const SingletEnsemble ens(kDefaultKMax, RandomStream(7));
  const UnitVector r1 = at_angle(0.3), r2 = at_angle(2.1);
  for (std::uint64_t t = 0; t < 100000; ++t) {
    MgsPair a = ens.generate(t), b = ens.generate(t);
    ASSERT_EQ(measure_pair_direct(a, r1, r2, t), measure_pair_delayed(b, r1, r2, kDefaultKMax, t));
  }
}

TEST(MeasurePairDelayed, coincidence_miss_rate) {
  const SingletEnsemble ens(kDefaultKMax, RandomStream(8));
  std::uint64_t miss = 0;
  for (std::uint64_t t = 0; t < kN; ++t) {
    MgsPair p = ens.generate(t);
    const TrialRecord rec = measure_pair_delayed(p, kZ, at_angle(1.0), 3, t);
    if (rec.status == TrialStatus::kCoincidenceMiss) {
      ++miss;
      ASSERT_FALSE(rec.j1 || rec.j2);
    }
  }
  EXPECT_TRUE(within_4_sigma(miss, kN, 0.125));
}

TEST(MeasurePairDelayed, k_scan_range) {
  const SingletEnsemble ens(8, RandomStream(9));
  MgsPair p = ens.generate(0);
  EXPECT_THROW(measure_pair_delayed(p, kZ, kZ, 0, 0), std::invalid_argument);
  EXPECT_THROW(measure_pair_delayed(p, kZ, kZ, 9, 0), std::invalid_argument);
}

TEST(Audit, particle_one_reads_only_its_view) {
  const SingletEnsemble ens(kDefaultKMax, RandomStream(10));
  MgsPair p = ens.generate(1);
  measure_single(p.first, kZ);
  EXPECT_GT(p.first.audit().epsilon_reads[0], 0u);
  EXPECT_EQ(p.first.audit().epsilon_reads[1], 0u);
  EXPECT_EQ(p.first.audit().orientation_reads[1], 0u);
}

TEST(Audit, scan_reads_no_epsilon) {
  const SingletEnsemble ens(kDefaultKMax, RandomStream(11));
  MgsPair p = ens.generate(2);
  const DelayedChoiceLog log = scan_layers(p.second, kZ, 20);
  EXPECT_EQ(log.signs.size(), 20u);
  EXPECT_EQ(p.second.audit().epsilon_reads[1], 0u);
  EXPECT_EQ(p.second.audit().epsilon_reads[0], 0u);
  EXPECT_EQ(p.second.audit().orientation_reads[1], 20u);
  for (int k = 1; k <= 20; ++k) {
    ASSERT_EQ(log.signs[k - 1], dot(p.second.orientation(k), kZ) > 0 ? 1 : -1);
  }
}

TEST(EstimateExpectation, examples) {
  const UnitVector n(0, 1, 1);
  const SpinUpEnsemble ens(n, kDefaultKMax, RandomStream(12));
  const auto along_n = estimate_expectation(Observable::from_decomposition(0, 1, n), ens, 10000);
  EXPECT_NEAR(along_n.value, 1.0, 1e-15);
  const SpinUpEnsemble ens_z(UnitVector(0, 0, 1), kDefaultKMax, RandomStream(13));
  EXPECT_EQ(estimate_expectation(Observable(1, -1, 0), ens_z, 10000).value, 1.0);
  EXPECT_EQ(estimate_expectation(Observable::identity(), ens, 10).value, 1.0);

  const double c = 0.3;
  const Frame f(n);
  const UnitVector r = f.at(c, 0.7);
  const auto est = estimate_expectation(Observable::from_decomposition(0, 1, r), ens, kN);
  EXPECT_LT(std::abs(est.value - c), 4 * std::sqrt((1 - c * c) / kN));
  EXPECT_EQ(est.trials_used + est.excluded, kN);
  EXPECT_THROW(estimate_expectation(Observable::identity(), ens, 0), std::invalid_argument);
}
