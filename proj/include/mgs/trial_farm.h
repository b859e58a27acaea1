#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mgs/ensembles.h"
#include "mgs/measurement.h"

namespace mgs {

enum class PairScheme { kDirect, kDelayed };

// Spin-up ensemble measured along one direction.
struct SingleKernel {
  SpinUpEnsemble ensemble;
  UnitVector r;

  TrialRecord operator()(std::uint64_t trial) const;
};

// Singlet ensemble measured along (r1, r2) by either scheme.
struct PairKernel {
  SingletEnsemble ensemble;
  UnitVector r1;
  UnitVector r2;
  PairScheme scheme = PairScheme::kDirect;
  int k_scan = kDefaultKMax;  // delayed scheme only

  TrialRecord operator()(std::uint64_t trial) const;
};

// Integer counters over a block of trials. Merging is exact, so any
// partition of the block reduces to the same tally.
struct Tally {
  explicit Tally(int k_max = kDefaultKMax) : active_layer_hist(static_cast<std::size_t>(k_max) + 1) {}

  void add(const TrialRecord& rec);
  void merge(const Tally& other);

  std::uint64_t trials = 0;
  std::uint64_t ok = 0;
  std::uint64_t no_active_layer = 0;
  std::uint64_t coincidence_miss = 0;
  std::array<std::uint64_t, 2> j1_counts{};                  // [j1 > 0]
  std::array<std::array<std::uint64_t, 2>, 2> joint_counts{};  // [j1 > 0][j2 > 0]
  std::int64_t sum_j1j2 = 0;
  std::vector<std::uint64_t> active_layer_hist;  // [k1], ok trials only

  // Trials (count, fraction) whose particle-1 active layer is deeper than k
  // (unresolved trials count as deeper than any k).
  [[nodiscard]] std::uint64_t deeper_than(int k) const;
  [[nodiscard]] double tail_fraction(int k) const;

  [[nodiscard]] std::uint64_t excluded() const { return no_active_layer + coincidence_miss; }

  friend bool operator==(const Tally&, const Tally&) = default;
};

// Serial reference implementations.
Tally tally_serial(const SingleKernel& kernel, std::uint64_t first, std::uint64_t count);
Tally tally_serial(const PairKernel& kernel, std::uint64_t first, std::uint64_t count);
std::vector<TrialRecord> collect_serial(const SingleKernel& kernel, std::uint64_t first,
                                        std::uint64_t count);
std::vector<TrialRecord> collect_serial(const PairKernel& kernel, std::uint64_t first,
                                        std::uint64_t count);

// OpenMP trial farms. `threads` <= 0 uses the OpenMP default. Results are
// identical to the serial versions for every thread count.
Tally tally_parallel(const SingleKernel& kernel, std::uint64_t first, std::uint64_t count,
                     int threads = 0);
Tally tally_parallel(const PairKernel& kernel, std::uint64_t first, std::uint64_t count,
                     int threads = 0);
std::vector<TrialRecord> collect_parallel(const SingleKernel& kernel, std::uint64_t first,
                                          std::uint64_t count, int threads = 0);
std::vector<TrialRecord> collect_parallel(const PairKernel& kernel, std::uint64_t first,
                                          std::uint64_t count, int threads = 0);

}  // namespace mgs
