#include "mgs/measurement.h"

#include <stdexcept>

namespace mgs {

const char* to_string(TrialStatus status) {
  switch (status) {
    case TrialStatus::kOk:
      return "OK";
    case TrialStatus::kNoActiveLayer:
      return "NO_ACTIVE_LAYER";
    case TrialStatus::kCoincidenceMiss:
      return "COINCIDENCE_MISS";
  }
  return "?";
}

TrialRecord measure_single(Mgs& mgs, const UnitVector& r, std::uint64_t trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.master_seed = mgs.master_seed();
  rec.r1 = r;
  if (auto hit = find_active_layer(mgs, r)) {
    rec.j1 = hit->j;
    rec.k1 = hit->k;
  } else {
    rec.status = TrialStatus::kNoActiveLayer;
  }
  return rec;
}

TrialRecord measure_pair_direct(MgsPair& pair, const UnitVector& r1, const UnitVector& r2,
                                std::uint64_t trial) {
  TrialRecord rec = measure_single(pair.first, r1, trial);
  rec.r2 = r2;
  const auto second = find_active_layer(pair.second, -r1, r2);
  if (!rec.ok() || !second) {
    rec.j1.reset();
    rec.k1.reset();
    rec.status = TrialStatus::kNoActiveLayer;
    return rec;
  }
  rec.j2 = second->j;
  rec.k2 = second->k;
  return rec;
}

DelayedChoiceLog scan_layers(Mgs& second, const UnitVector& r2, int k_scan) {
  if (k_scan < 1 || k_scan > second.k_max()) {
    throw std::invalid_argument("scan_layers: k_scan must lie in [1, k_max]");
  }
  DelayedChoiceLog log{r2, {}};
  log.signs.reserve(static_cast<std::size_t>(k_scan));
  for (int k = 1; k <= k_scan; ++k) {
    log.signs.push_back(dot(second.orientation(k), r2) > 0.0 ? +1 : -1);
  }
  return log;
}

TrialRecord coincide(const TrialRecord& first, const DelayedChoiceLog& log) {
  TrialRecord rec = first;
  rec.r2 = log.r2;
  if (!first.ok()) return rec;
  const int k = *first.k1;
  if (k > static_cast<int>(log.signs.size())) {
    rec.j1.reset();
    rec.k1.reset();
    rec.status = TrialStatus::kCoincidenceMiss;
    return rec;
  }
  rec.j2 = log.signs[static_cast<std::size_t>(k - 1)];
  rec.k2 = k;
  return rec;
}

TrialRecord measure_pair_delayed(MgsPair& pair, const UnitVector& r1, const UnitVector& r2,
                                 int k_scan, std::uint64_t trial) {
  const TrialRecord first = measure_single(pair.first, r1, trial);
  const DelayedChoiceLog log = scan_layers(pair.second, r2, k_scan);
  return coincide(first, log);
}

ExpectationEstimate estimate_expectation(const Observable& obs, const SpinUpEnsemble& ens,
                                         std::uint64_t trials) {
  if (trials < 1) throw std::invalid_argument("estimate_expectation: trials must be >= 1");
  const Decomposition& dec = obs.decomposition();
  ExpectationEstimate out;
  if (!dec.r) {
    out.value = dec.g0;
    out.trials_used = trials;
    return out;
  }
  std::int64_t sum_j = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Mgs mgs = ens.generate(t);
    if (auto hit = find_active_layer(mgs, *dec.r)) {
      sum_j += hit->j;
      ++out.trials_used;
    } else {
      ++out.excluded;
    }
  }
  const double mean_j =
      out.trials_used ? static_cast<double>(sum_j) / static_cast<double>(out.trials_used) : 0.0;
  out.value = dec.g0 + dec.g * mean_j;
  return out;
}

}  // namespace mgs
