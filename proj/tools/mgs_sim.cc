// mgs-sim: Monte-Carlo experiments on multilayer gray-sphere elementary states.
//
//   mgs-sim <single|singlet|chsh|tail|oracle-check> [--config FILE] [--seed S] ...
//
// Exit codes: 0 pass, 2 sigma threshold (or oracle tolerance) exceeded,
// 3 configuration error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mgs/config.h"
#include "mgs/experiments.h"
#include "mgs/report.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitSigma = 2;
constexpr int kExitConfig = 3;

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilayer gray-sphere spin measurement simulator"};
  std::string experiment, config_path, seed, n, scheme, format, out, tail_mode;
  std::uint64_t trials = 0;
  int kmax = 0, k_scan = 0, threads = 0, tail_k = 0, quad_nodes = 0;
  double sigma_threshold = 0.0;
  std::vector<std::string> dirs, angles;

  app.add_option("experiment", experiment, "single | singlet | chsh | tail | oracle-check")
      ->required();
  app.add_option("--config", config_path, "flat key = value config file");
  auto* o_seed = app.add_option("--seed", seed, "master seed, decimal or 0x-hex");
  auto* o_trials = app.add_option("--trials", trials, "trials per estimate");
  auto* o_kmax = app.add_option("--kmax", kmax, "layers per sphere");
  auto* o_n = app.add_option("--n", n, "spin-up axis x,y,z");
  auto* o_dirs = app.add_option("--dirs", dirs, "directions as x,y,z (singlet: r1 r2 pairs)");
  auto* o_angles = app.add_option("--angles", angles, "planar angles in radians, e.g. pi/4");
  auto* o_kscan = app.add_option("--k-scan", k_scan, "layers scanned in delayed-choice mode");
  auto* o_scheme = app.add_option("--scheme", scheme, "direct | delayed");
  auto* o_format = app.add_option("--format", format, "csv | json");
  auto* o_out = app.add_option("--out", out, "output path (default stdout)");
  auto* o_threads = app.add_option("--threads", threads, "OpenMP threads (0 = default)");
  auto* o_sigma = app.add_option("--sigma-threshold", sigma_threshold, "alarm threshold in sigma");
  auto* o_tail_k = app.add_option("--tail-k", tail_k, "largest k in the tail table");
  auto* o_tail_mode = app.add_option("--tail-mode", tail_mode, "single | singlet");
  auto* o_quad = app.add_option("--quad-nodes", quad_nodes, "Gauss nodes per quadrature piece");
  o_dirs->excludes(o_angles);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  mgs::ExperimentConfig config;
  try {
    if (!config_path.empty()) config = mgs::load_config(config_path);
    mgs::apply_setting(config, "experiment", experiment);
    const auto set = [&](CLI::Option* opt, const char* key, const std::string& value) {
      if (opt->count() > 0) mgs::apply_setting(config, key, value);
    };
    set(o_seed, "seed", seed);
    set(o_trials, "trials", std::to_string(trials));
    set(o_kmax, "kmax", std::to_string(kmax));
    set(o_n, "n", n);
    set(o_dirs, "dirs", join(dirs, ";"));
    set(o_angles, "angles", join(angles, " "));
    set(o_kscan, "k_scan", std::to_string(k_scan));
    set(o_scheme, "scheme", scheme);
    set(o_format, "format", format);
    set(o_out, "out", out);
    set(o_threads, "threads", std::to_string(threads));
    set(o_sigma, "sigma_threshold", mgs::format_real(sigma_threshold));
    set(o_tail_k, "tail_k", std::to_string(tail_k));
    set(o_tail_mode, "tail_mode", tail_mode);
    set(o_quad, "quad_nodes", std::to_string(quad_nodes));
    mgs::validate(config);
  } catch (const mgs::ConfigError& e) {
    std::cerr << "mgs-sim: configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  mgs::ExperimentResult result;
  try {
    result = mgs::run_experiment(config);
  } catch (const mgs::ConfigError& e) {
    std::cerr << "mgs-sim: configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (config.out.empty()) {
    mgs::write_result(std::cout, config, result);
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      std::cerr << "mgs-sim: cannot open " << config.out << " for writing\n";
      return kExitConfig;
    }
    mgs::write_result(file, config, result);
  }

  if (!result.passed) {
    if (result.kind == mgs::ExperimentKind::kOracleCheck) {
      std::cerr << "mgs-sim: oracle-check: a quantity exceeds tolerance "
                << mgs::format_real(config.oracle_tolerance) << '\n';
    } else {
      std::cerr << "mgs-sim: " << mgs::to_string(result.kind) << ": max |sigma| = "
                << mgs::format_real(result.max_abs_sigma) << " exceeds threshold "
                << mgs::format_real(config.sigma_threshold) << '\n';
    }
    return kExitSigma;
  }
  return kExitPass;
}
