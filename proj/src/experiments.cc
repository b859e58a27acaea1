#include "mgs/experiments.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace mgs {
namespace {

constexpr double kPi = std::numbers::pi;

// Top-level stream labels; each experiment draws from its own subtree and each
// estimate (direction or direction pair) from a disjoint block below it.
constexpr std::uint64_t kSingleTag = 1;
constexpr std::uint64_t kSingletTag = 2;
constexpr std::uint64_t kChshTag = 3;
constexpr std::uint64_t kTailSingleTag = 4;
constexpr std::uint64_t kTailSingletTag = 5;

constexpr double kExactTolerance = 1e-15;

RandomStream block_stream(const ExperimentConfig& config, std::uint64_t tag, std::uint64_t block) {
  return RandomStream(*config.seed).derive(tag).derive(block);
}

int effective_k_scan(const ExperimentConfig& config) {
  return config.k_scan > 0 ? config.k_scan : config.k_max;
}

std::vector<UnitVector> angles(std::initializer_list<double> thetas) {
  std::vector<UnitVector> out;
  for (double t : thetas) out.push_back(UnitVector::from_planar_angle(t));
  return out;
}

std::vector<UnitVector> single_directions(const ExperimentConfig& config) {
  if (!config.directions.empty()) return config.directions;
  return angles({0.0, kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3, kPi});
}

std::vector<UnitVector> singlet_directions(const ExperimentConfig& config) {
  if (!config.directions.empty()) return config.directions;
  std::vector<UnitVector> out;
  for (double t : {0.0, kPi / 6, kPi / 4, kPi / 3, kPi / 2, kPi}) {
    out.push_back(UnitVector::from_planar_angle(0.0));
    out.push_back(UnitVector::from_planar_angle(t));
  }
  return out;
}

std::vector<UnitVector> chsh_directions(const ExperimentConfig& config) {
  if (!config.directions.empty()) return config.directions;
  return angles({0.0, kPi / 4, kPi / 2, 3 * kPi / 4});
}

std::vector<UnitVector> tail_directions(const ExperimentConfig& config) {
  if (!config.directions.empty()) return config.directions;
  return angles({0.0, kPi / 3});
}

Tally run_pair_block(const ExperimentConfig& config, std::uint64_t tag, std::uint64_t block,
                     const UnitVector& r1, const UnitVector& r2) {
  const PairKernel kernel{SingletEnsemble(config.k_max, block_stream(config, tag, block)), r1, r2,
                          config.scheme, effective_k_scan(config)};
  return tally_parallel(kernel, 0, config.trials, config.threads);
}

struct CorrelationEstimate {
  EstimateReport report;
  double oracle_error = 0.0;
};

CorrelationEstimate correlation_report(const Tally& tally, const UnitVector& r1,
                                       const UnitVector& r2) {
  CorrelationEstimate out;
  EstimateReport& rep = out.report;
  rep.trials_used = tally.ok;
  rep.excluded = tally.excluded();
  rep.oracle = oracle::correlation(r1, r2);
  const double n = static_cast<double>(tally.ok);
  if (tally.ok > 0) {
    const double m = static_cast<double>(tally.sum_j1j2) / n;
    rep.estimate = 0.25 * m;
    rep.std_error = 0.25 * std::sqrt(std::max(0.0, 1.0 - m * m) / n);
    const double mo = 4.0 * rep.oracle;
    out.oracle_error = 0.25 * std::sqrt(std::max(0.0, 1.0 - mo * mo) / n);
  }
  rep.sigma_dev = sigma_deviation(rep.estimate, rep.std_error, rep.oracle, out.oracle_error);
  return out;
}

void append_estimate_cells(std::vector<Cell>& row, const EstimateReport& rep) {
  row.emplace_back(rep.estimate);
  row.emplace_back(rep.std_error);
  row.emplace_back(rep.oracle);
  row.emplace_back(rep.sigma_dev);
  row.emplace_back(static_cast<std::int64_t>(rep.excluded));
}

void record(ExperimentResult& result, const ExperimentConfig& config, std::vector<Cell> key,
            const EstimateReport& rep) {
  append_estimate_cells(key, rep);
  result.table.rows.push_back(std::move(key));
  result.estimates.push_back(rep);
  const double a = std::abs(rep.sigma_dev);
  if (!(a <= config.sigma_threshold)) result.passed = false;
  if (std::isnan(a) || a > result.max_abs_sigma) result.max_abs_sigma = a;
}

const std::vector<std::string> kEstimateColumns = {"frequency", "stderr", "oracle", "sigma_dev",
                                                   "excluded"};

std::vector<std::string> columns(std::initializer_list<const char*> key) {
  std::vector<std::string> out(key.begin(), key.end());
  out.insert(out.end(), kEstimateColumns.begin(), kEstimateColumns.end());
  return out;
}

// Four joint-frequency rows plus the E row for one direction pair.
CorrelationEstimate record_pair(ExperimentResult& result, const ExperimentConfig& config,
                                std::int64_t index, const Tally& tally, const UnitVector& r1,
                                const UnitVector& r2) {
  for (int j1 : {+1, -1}) {
    for (int j2 : {+1, -1}) {
      const std::uint64_t hits = tally.joint_counts[j1 > 0 ? 1 : 0][j2 > 0 ? 1 : 0];
      record(result, config, {index, std::int64_t{j1}, std::int64_t{j2}},
             frequency_report(hits, tally.ok, tally.excluded(), oracle::p_singlet(r1, r2, j1, j2)));
    }
  }
  CorrelationEstimate e = correlation_report(tally, r1, r2);
  record(result, config, {index, std::string("E"), std::string("E")}, e.report);
  return e;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSingle:
      return "single";
    case ExperimentKind::kSinglet:
      return "singlet";
    case ExperimentKind::kChsh:
      return "chsh";
    case ExperimentKind::kTail:
      return "tail";
    case ExperimentKind::kOracleCheck:
      return "oracle-check";
  }
  return "?";
}

void validate(const ExperimentConfig& config) {
  if (!config.seed) throw ConfigError("seed is mandatory");
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.k_max < 1) throw ConfigError("kmax must be >= 1");
  if (config.k_scan < 0 || config.k_scan > config.k_max) {
    throw ConfigError("k_scan must lie in [1, kmax] (0 selects kmax)");
  }
  if (config.threads < 0) throw ConfigError("threads must be >= 0");
  if (!(config.sigma_threshold > 0.0)) throw ConfigError("sigma_threshold must be positive");
  if (config.tail_k < 1 || config.tail_k > config.k_max) {
    throw ConfigError("tail_k must lie in [1, kmax]");
  }
  if (config.quad.nodes < 2) throw ConfigError("quad_nodes must be >= 2");
  if (!(config.quad.tolerance > 0.0) || !(config.oracle_tolerance > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }
  const std::size_t nd = config.directions.size();
  switch (config.kind) {
    case ExperimentKind::kSinglet:
      if (nd % 2 != 0) throw ConfigError("singlet directions must come in (r1, r2) pairs");
      break;
    case ExperimentKind::kChsh:
      if (nd != 0 && nd != 4) throw ConfigError("chsh needs exactly four directions a, b, a', b'");
      break;
    default:
      break;
  }
}

double sigma_deviation(double estimate, double std_error, double oracle, double oracle_error) {
  const double diff = estimate - oracle;
  if (std_error > 0.0) return diff / std_error;
  if (std::abs(diff) <= kExactTolerance) return 0.0;
  if (oracle_error > 0.0) return diff / oracle_error;
  return diff > 0 ? std::numeric_limits<double>::infinity()
                  : -std::numeric_limits<double>::infinity();
}

EstimateReport frequency_report(std::uint64_t hits, std::uint64_t used, std::uint64_t excluded,
                                double oracle) {
  EstimateReport rep;
  rep.trials_used = used;
  rep.excluded = excluded;
  rep.oracle = oracle;
  double oracle_error = 0.0;
  if (used > 0) {
    const double n = static_cast<double>(used);
    rep.estimate = static_cast<double>(hits) / n;
    rep.std_error = std::sqrt(rep.estimate * (1.0 - rep.estimate) / n);
    oracle_error = std::sqrt(std::max(0.0, oracle * (1.0 - oracle)) / n);
  }
  rep.sigma_dev = sigma_deviation(rep.estimate, rep.std_error, rep.oracle, oracle_error);
  return rep;
}

ExperimentResult run_single(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  result.kind = ExperimentKind::kSingle;
  result.table.columns = columns({"direction_index", "j"});
  const auto dirs = single_directions(config);
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const SingleKernel kernel{
        SpinUpEnsemble(config.n, config.k_max, block_stream(config, kSingleTag, d)), dirs[d]};
    const Tally tally = tally_parallel(kernel, 0, config.trials, config.threads);
    for (int j : {+1, -1}) {
      record(result, config, {static_cast<std::int64_t>(d), std::int64_t{j}},
             frequency_report(tally.j1_counts[j > 0 ? 1 : 0], tally.ok, tally.excluded(),
                              oracle::p_single(config.n, dirs[d], j)));
    }
  }
  return result;
}

ExperimentResult run_singlet(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  result.kind = ExperimentKind::kSinglet;
  result.table.columns = columns({"pair_index", "j1", "j2"});
  const auto dirs = singlet_directions(config);
  for (std::size_t p = 0; p + 1 < dirs.size(); p += 2) {
    const auto index = static_cast<std::int64_t>(p / 2);
    const Tally tally = run_pair_block(config, kSingletTag, p / 2, dirs[p], dirs[p + 1]);
    record_pair(result, config, index, tally, dirs[p], dirs[p + 1]);
  }
  return result;
}

ExperimentResult run_chsh(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  result.kind = ExperimentKind::kChsh;
  result.table.columns = columns({"pair_index", "j1", "j2"});
  const auto d = chsh_directions(config);
  const UnitVector &a = d[0], &b = d[1], &a2 = d[2], &b2 = d[3];
  const std::pair<UnitVector, UnitVector> pairs[4] = {{a, b}, {a, b2}, {a2, b}, {a2, b2}};
  CorrelationEstimate e[4];
  std::uint64_t excluded = 0;
  std::uint64_t used = 0;
  for (std::size_t p = 0; p < 4; ++p) {
    const Tally tally = run_pair_block(config, kChshTag, p, pairs[p].first, pairs[p].second);
    e[p] = record_pair(result, config, static_cast<std::int64_t>(p), tally, pairs[p].first,
                       pairs[p].second);
    excluded += tally.excluded();
    used += tally.ok;
  }
  EstimateReport m;
  m.estimate = std::abs(e[0].report.estimate - e[1].report.estimate) +
               std::abs(e[2].report.estimate + e[3].report.estimate);
  double var = 0.0, oracle_var = 0.0;
  for (const auto& x : e) {
    var += x.report.std_error * x.report.std_error;
    oracle_var += x.oracle_error * x.oracle_error;
  }
  m.std_error = std::sqrt(var);
  m.oracle = oracle::chsh_M(oracle::correlation, a, b, a2, b2);
  m.trials_used = used;
  m.excluded = excluded;
  m.sigma_dev = sigma_deviation(m.estimate, m.std_error, m.oracle, std::sqrt(oracle_var));
  record(result, config, {std::string("chsh"), std::string("M"), std::string("M")}, m);
  return result;
}

ExperimentResult run_tail(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  result.kind = ExperimentKind::kTail;
  result.table.columns = columns({"direction_index", "k"});
  const auto dirs = tail_directions(config);
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    Tally tally(config.k_max);
    if (config.tail_mode == TailMode::kSingle) {
      const SingleKernel kernel{
          SpinUpEnsemble(config.n, config.k_max, block_stream(config, kTailSingleTag, d)), dirs[d]};
      tally = tally_parallel(kernel, 0, config.trials, config.threads);
    } else {
      tally = run_pair_block(config, kTailSingletTag, d, dirs[d], dirs[d]);
    }
    for (int k = 1; k <= config.tail_k; ++k) {
      // Unresolved trials are deeper than every k and stay in the denominator.
      EstimateReport rep =
          frequency_report(tally.deeper_than(k), tally.trials, 0, oracle::p_tail(k));
      rep.excluded = tally.excluded();
      record(result, config, {static_cast<std::int64_t>(d), std::int64_t{k}}, rep);
    }
  }
  return result;
}

ExperimentResult run_oracle_check(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  result.kind = ExperimentKind::kOracleCheck;
  result.table.columns = {"quantity", "value", "reference", "abs_error", "tolerance", "pass"};
  const double tol = config.oracle_tolerance;
  const auto check = [&](std::string name, double value, double reference) {
    const double err = std::abs(value - reference);
    const bool ok = err <= tol;
    if (!ok) result.passed = false;
    result.table.rows.push_back({std::move(name), value, reference, err, tol,
                                 std::string(ok ? "true" : "false")});
  };

  const auto dirs = single_directions(config);
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const std::string tag = "[" + std::to_string(d) + "]";
    for (double eps : {-0.3, 0.0, 0.2}) {
      check("normalization_single" + tag + "(eps=" + std::to_string(eps) + ")",
            oracle::derive_single_normalization(config.n, dirs[d], eps, config.quad),
            oracle::kSingleNormalization);
    }
    for (int j : {+1, -1}) {
      check("p_single_from_layers" + tag + "(j=" + std::to_string(j) + ")",
            oracle::p_single_from_layers(config.n, dirs[d], j, config.k_max, config.quad),
            oracle::p_single(config.n, dirs[d], j));
    }
  }

  const auto pairs = singlet_directions(config);
  for (std::size_t p = 0; p + 1 < pairs.size(); p += 2) {
    const std::string tag = "[" + std::to_string(p / 2) + "]";
    const UnitVector &r1 = pairs[p], &r2 = pairs[p + 1];
    for (double eps : {-0.3, 0.0, 0.2}) {
      check("normalization_pair" + tag + "(eps=" + std::to_string(eps) + ")",
            oracle::derive_pair_normalization(r1, r2, eps, config.quad),
            oracle::kPairNormalization);
    }
    for (int j1 : {+1, -1}) {
      for (int j2 : {+1, -1}) {
        const double closed = oracle::p_singlet(r1, r2, j1, j2);
        check("p_singlet_from_layers" + tag + "(j1=" + std::to_string(j1) +
                  ",j2=" + std::to_string(j2) + ")",
              oracle::p_singlet_from_layers(r1, r2, j1, j2, config.k_max, config.quad),
              closed);
      }
    }
  }

  // Layer masses up to K plus the tail beyond K exhaust the total mass.
  const UnitVector r = dirs.size() > 1 ? dirs[1] : dirs.front();
  double resolved = 0.0;
  for (int k = 1; k <= config.tail_k; ++k) {
    for (int j : {+1, -1}) resolved += oracle::layer_mass_single(config.n, r, j, k, config.quad);
    check("tail_consistency(K=" + std::to_string(k) + ")", resolved + oracle::p_tail(k), 1.0);
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::kSingle:
      return run_single(config);
    case ExperimentKind::kSinglet:
      return run_singlet(config);
    case ExperimentKind::kChsh:
      return run_chsh(config);
    case ExperimentKind::kTail:
      return run_tail(config);
    case ExperimentKind::kOracleCheck:
      return run_oracle_check(config);
  }
  throw ConfigError("unknown experiment kind");
}

}  // namespace mgs
