#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mgs/elementary_state.h"
#include "mgs/ensembles.h"
#include "mgs/geometry.h"
#include "mgs/observables.h"

namespace mgs {

enum class TrialStatus { kOk, kNoActiveLayer, kCoincidenceMiss };

const char* to_string(TrialStatus status);

// One measurement outcome. The physical spin projection is j/2. Outcome
// fields are present only for particles that were measured and resolved.
struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t master_seed = 0;
  UnitVector r1;
  std::optional<int> j1;
  std::optional<int> k1;
  std::optional<UnitVector> r2;
  std::optional<int> j2;
  std::optional<int> k2;
  TrialStatus status = TrialStatus::kOk;

  [[nodiscard]] bool ok() const { return status == TrialStatus::kOk; }
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Single-particle instrument: scans layers from the top and registers the
// first active one.
TrialRecord measure_single(Mgs& mgs, const UnitVector& r, std::uint64_t trial = 0);

// Both instruments measure their own particle. Each resolves the pair's
// active layer on its own view: particle 1 probes r1, particle 2 probes its
// mirror at -r1, which by construction selects the same layer number.
TrialRecord measure_pair_direct(MgsPair& pair, const UnitVector& r1, const UnitVector& r2,
                                std::uint64_t trial = 0);

// Per-layer record of particle 2 taken irrespective of layer activity:
// signs[k-1] = sign(R2(k).r2) for k = 1..k_scan.
struct DelayedChoiceLog {
  UnitVector r2;
  std::vector<int> signs;
};

// Observation on particle 2 only; reads orientations, never epsilon.
DelayedChoiceLog scan_layers(Mgs& second, const UnitVector& r2, int k_scan);

// Coincidence processing: picks the particle-2 sign at particle 1's active
// layer. `first` is a record from measure_single on particle 1.
TrialRecord coincide(const TrialRecord& first, const DelayedChoiceLog& log);

// Delayed-choice scheme: measure particle 1, scan particle 2, then coincide.
// k_scan must lie in [1, k_max].
TrialRecord measure_pair_delayed(MgsPair& pair, const UnitVector& r1, const UnitVector& r2,
                                 int k_scan, std::uint64_t trial = 0);

struct ExpectationEstimate {
  double value = 0.0;
  std::uint64_t trials_used = 0;
  std::uint64_t excluded = 0;
};

// Probabilistic average of evaluate(obs, .) over `trials` states of the
// spin-up ensemble; g0 exactly for multiples of the identity.
ExpectationEstimate estimate_expectation(const Observable& obs, const SpinUpEnsemble& ens,
                                         std::uint64_t trials);

}  // namespace mgs
