#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mgs/geometry.h"
#include "mgs/oracle.h"
#include "mgs/trial_farm.h"

namespace mgs {

enum class ExperimentKind { kSingle, kSinglet, kChsh, kTail, kOracleCheck };
enum class OutputFormat { kCsv, kJson };
enum class TailMode { kSingle, kSinglet };

const char* to_string(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSingle;
  std::optional<std::uint64_t> seed;  // mandatory; validate() rejects a missing seed
  std::uint64_t trials = 1'000'000;
  int k_max = kDefaultKMax;
  UnitVector n;  // spin-up quantization axis, default z
  // single/tail: measurement directions; singlet: consecutive (r1, r2) pairs;
  // chsh: exactly a, b, a', b'. Empty selects a per-experiment default.
  std::vector<UnitVector> directions;
  int k_scan = 0;  // 0 means k_max
  PairScheme scheme = PairScheme::kDirect;
  OutputFormat format = OutputFormat::kCsv;
  std::string out;  // empty writes to stdout
  int threads = 0;
  double sigma_threshold = 5.0;
  int tail_k = 6;
  TailMode tail_mode = TailMode::kSingle;
  oracle::QuadratureSpec quad{};
  double oracle_tolerance = 1e-6;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ConfigError on any violated constraint.
void validate(const ExperimentConfig& config);

// One Monte-Carlo estimate compared against its analytic value.
struct EstimateReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials_used = 0;
  std::uint64_t excluded = 0;
  double oracle = 0.0;
  double sigma_dev = 0.0;
};

// Binomial frequency estimate: stderr = sqrt(p(1-p)/N).
EstimateReport frequency_report(std::uint64_t hits, std::uint64_t used, std::uint64_t excluded,
                                double oracle);

// (estimate - oracle) / std_error. When the sample error vanishes (e.g. a
// frequency of exactly 0 or 1) the error implied by the oracle value is used
// instead; exact agreement gives 0 and an unexplained gap gives +-inf.
double sigma_deviation(double estimate, double std_error, double oracle, double oracle_error);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::kSingle;
  Table table;
  std::vector<EstimateReport> estimates;
  bool passed = true;  // no estimate beyond the sigma threshold / oracle tolerance
  double max_abs_sigma = 0.0;
};

ExperimentResult run_single(const ExperimentConfig& config);
ExperimentResult run_singlet(const ExperimentConfig& config);
ExperimentResult run_chsh(const ExperimentConfig& config);
ExperimentResult run_tail(const ExperimentConfig& config);
ExperimentResult run_oracle_check(const ExperimentConfig& config);

// Validates and dispatches on config.kind.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace mgs
