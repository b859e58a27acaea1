#include "mgs/trial_farm.h"

#include <gtest/gtest.h>

using namespace mgs;

namespace {

constexpr std::uint64_t kCount = 20000;

}  // namespace

TEST(TrialFarm, single_parallel_matches_serial) {
  const SingleKernel kernel{SpinUpEnsemble(UnitVector(0, 0, 1), 8, RandomStream(1)),
                            UnitVector::from_planar_angle(1.0)};
  const Tally ref = tally_serial(kernel, 100, kCount);
  const auto records = collect_serial(kernel, 100, kCount);
  for (int threads : {1, 2, 4}) {
    EXPECT_EQ(tally_parallel(kernel, 100, kCount, threads), ref) << threads;
    EXPECT_EQ(collect_parallel(kernel, 100, kCount, threads), records) << threads;
  }
  EXPECT_EQ(ref.trials, kCount);
  EXPECT_GT(ref.no_active_layer, 0u);
}

TEST(TrialFarm, pair_parallel_matches_serial) {
  for (PairScheme scheme : {PairScheme::kDirect, PairScheme::kDelayed}) {
    const PairKernel kernel{SingletEnsemble(kDefaultKMax, RandomStream(2)), UnitVector(0, 0, 1),
                            UnitVector(1, 0, 1), scheme, 4};
    const Tally ref = tally_serial(kernel, 0, kCount);
    const auto records = collect_serial(kernel, 0, kCount);
    for (int threads : {1, 2, 4}) {
      EXPECT_EQ(tally_parallel(kernel, 0, kCount, threads), ref) << threads;
      EXPECT_EQ(collect_parallel(kernel, 0, kCount, threads), records) << threads;
    }
  }
}

TEST(Tally, merge_is_partition_independent) {
  const PairKernel kernel{SingletEnsemble(kDefaultKMax, RandomStream(3)), UnitVector(0, 1, 0),
                          UnitVector(1, 0, 0), PairScheme::kDelayed, 3};
  Tally a = tally_serial(kernel, 0, 777);
  a.merge(tally_serial(kernel, 777, kCount - 777));
  EXPECT_EQ(a, tally_serial(kernel, 0, kCount));
  EXPECT_EQ(a.ok + a.excluded(), a.trials);
  EXPECT_GT(a.coincidence_miss, 0u);
}

TEST(Tally, deeper_than_counts_unresolved) {
  Tally t(4);
  TrialRecord rec;
  rec.j1 = 1;
  rec.k1 = 2;
  t.add(rec);
  rec.k1 = 4;
  t.add(rec);
  TrialRecord miss;
  miss.status = TrialStatus::kNoActiveLayer;
  t.add(miss);
  EXPECT_EQ(t.deeper_than(1), 3u);
  EXPECT_EQ(t.deeper_than(2), 2u);
  EXPECT_EQ(t.deeper_than(4), 1u);
  EXPECT_DOUBLE_EQ(t.tail_fraction(2), 2.0 / 3.0);
}
