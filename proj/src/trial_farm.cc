#include "mgs/trial_farm.h"

#include <omp.h>

#include <cstdint>

namespace mgs {
namespace {

template <class Kernel>
int k_max_of(const Kernel& kernel) {
  return kernel.ensemble.k_max();
}

template <class Kernel>
Tally tally_serial_impl(const Kernel& kernel, std::uint64_t first, std::uint64_t count) {
  Tally tally(k_max_of(kernel));
  for (std::uint64_t i = 0; i < count; ++i) tally.add(kernel(first + i));
  return tally;
}

template <class Kernel>
Tally tally_parallel_impl(const Kernel& kernel, std::uint64_t first, std::uint64_t count,
                          int threads) {
  const int k_max = k_max_of(kernel);
  Tally total(k_max);
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel num_threads(team)
  {
    Tally local(k_max);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      local.add(kernel(first + static_cast<std::uint64_t>(i)));
    }
#pragma omp critical(mgs_tally_merge)
    total.merge(local);
  }
  return total;
}

template <class Kernel>
std::vector<TrialRecord> collect_serial_impl(const Kernel& kernel, std::uint64_t first,
                                             std::uint64_t count) {
  std::vector<TrialRecord> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(kernel(first + i));
  return out;
}

template <class Kernel>
std::vector<TrialRecord> collect_parallel_impl(const Kernel& kernel, std::uint64_t first,
                                               std::uint64_t count, int threads) {
  std::vector<TrialRecord> out(count);
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) num_threads(team)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = kernel(first + static_cast<std::uint64_t>(i));
  }
  return out;
}

}  // namespace

TrialRecord SingleKernel::operator()(std::uint64_t trial) const {
  Mgs mgs = ensemble.generate(trial);
  return measure_single(mgs, r, trial);
}

TrialRecord PairKernel::operator()(std::uint64_t trial) const {
  MgsPair pair = ensemble.generate(trial);
  if (scheme == PairScheme::kDelayed) return measure_pair_delayed(pair, r1, r2, k_scan, trial);
  return measure_pair_direct(pair, r1, r2, trial);
}

void Tally::add(const TrialRecord& rec) {
  ++trials;
  switch (rec.status) {
    case TrialStatus::kNoActiveLayer:
      ++no_active_layer;
      return;
    case TrialStatus::kCoincidenceMiss:
      ++coincidence_miss;
      return;
    case TrialStatus::kOk:
      break;
  }
  ++ok;
  const std::size_t a = *rec.j1 > 0 ? 1 : 0;
  ++j1_counts[a];
  if (rec.j2) {
    const std::size_t b = *rec.j2 > 0 ? 1 : 0;
    ++joint_counts[a][b];
    sum_j1j2 += *rec.j1 * *rec.j2;
  }
  const auto k = static_cast<std::size_t>(*rec.k1);
  if (k < active_layer_hist.size()) ++active_layer_hist[k];
}

void Tally::merge(const Tally& other) {
  trials += other.trials;
  ok += other.ok;
  no_active_layer += other.no_active_layer;
  coincidence_miss += other.coincidence_miss;
  for (std::size_t a = 0; a < 2; ++a) {
    j1_counts[a] += other.j1_counts[a];
    for (std::size_t b = 0; b < 2; ++b) joint_counts[a][b] += other.joint_counts[a][b];
  }
  sum_j1j2 += other.sum_j1j2;
  if (active_layer_hist.size() < other.active_layer_hist.size()) {
    active_layer_hist.resize(other.active_layer_hist.size());
  }
  for (std::size_t k = 0; k < other.active_layer_hist.size(); ++k) {
    active_layer_hist[k] += other.active_layer_hist[k];
  }
}

std::uint64_t Tally::deeper_than(int k) const {
  std::uint64_t resolved_within = 0;
  for (std::size_t i = 1; i < active_layer_hist.size() && static_cast<int>(i) <= k; ++i) {
    resolved_within += active_layer_hist[i];
  }
  return trials - resolved_within;
}

double Tally::tail_fraction(int k) const {
  if (trials == 0) return 0.0;
  return static_cast<double>(deeper_than(k)) / static_cast<double>(trials);
}

Tally tally_serial(const SingleKernel& kernel, std::uint64_t first, std::uint64_t count) {
  return tally_serial_impl(kernel, first, count);
}
Tally tally_serial(const PairKernel& kernel, std::uint64_t first, std::uint64_t count) {
  return tally_serial_impl(kernel, first, count);
}
std::vector<TrialRecord> collect_serial(const SingleKernel& kernel, std::uint64_t first,
                                        std::uint64_t count) {
  return collect_serial_impl(kernel, first, count);
}
std::vector<TrialRecord> collect_serial(const PairKernel& kernel, std::uint64_t first,
                                        std::uint64_t count) {
  return collect_serial_impl(kernel, first, count);
}

Tally tally_parallel(const SingleKernel& kernel, std::uint64_t first, std::uint64_t count,
                     int threads) {
  return tally_parallel_impl(kernel, first, count, threads);
}
Tally tally_parallel(const PairKernel& kernel, std::uint64_t first, std::uint64_t count,
                     int threads) {
  return tally_parallel_impl(kernel, first, count, threads);
}
std::vector<TrialRecord> collect_parallel(const SingleKernel& kernel, std::uint64_t first,
                                          std::uint64_t count, int threads) {
  return collect_parallel_impl(kernel, first, count, threads);
}
std::vector<TrialRecord> collect_parallel(const PairKernel& kernel, std::uint64_t first,
                                          std::uint64_t count, int threads) {
  return collect_parallel_impl(kernel, first, count, threads);
}

}  // namespace mgs
