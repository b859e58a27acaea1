// Acceptance suite: one PASS/FAIL line per criterion at full scale
// (N = 1e6 trials per estimate, k_max = 64, fixed seed).

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mgs/experiments.h"
#include "mgs/measurement.h"
#include "mgs/observables.h"
#include "mgs/oracle.h"
#include "mgs/report.h"
#include "mgs/trial_farm.h"

using namespace mgs;

namespace {

constexpr std::uint64_t kN = 1'000'000;
constexpr std::uint64_t kSeed = 20240611;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// 4-sigma check with sigma from the expected p.
bool within_4_sigma(double freq, double p, std::uint64_t n, double* z = nullptr) {
  const double s = std::sqrt(p * (1 - p) / static_cast<double>(n));
  if (s == 0) return freq == p;
  if (z) *z = (freq - p) / s;
  return std::abs(freq - p) <= 4 * s;
}

ExperimentConfig base(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.seed = kSeed;
  c.trials = kN;
  c.k_max = kDefaultKMax;
  return c;
}

UnitVector planar(double t) { return UnitVector::from_planar_angle(t); }

Outcome single_law() {
  Outcome out;
  ExperimentConfig c = base(ExperimentKind::kSingle);
  const std::vector<double> angles{0, kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3, kPi};
  for (double t : angles) c.directions.push_back(planar(t));
  const ExperimentResult r = run_experiment(c);
  double worst = 0;
  for (std::size_t d = 0; d < angles.size(); ++d) {
    const EstimateReport& up = r.estimates[2 * d];  // j = +1 row
    const double p = (1 + std::cos(angles[d])) / 2;
    double z = 0;
    out.require(within_4_sigma(up.estimate, p, up.trials_used, &z),
                fmt("angle %.4f: %.6f vs %.6f", angles[d], up.estimate, p));
    worst = std::max(worst, std::abs(z));
  }
  if (out.pass) out.detail = fmt("max |z| = %.2f over 6 directions", worst);
  return out;
}

Outcome spin_up_certainty() {
  Outcome out;
  const UnitVector n(0, 0, 1);
  const Tally t = tally_parallel(SingleKernel{SpinUpEnsemble(n, kDefaultKMax, RandomStream(kSeed)), n},
                                 0, kN);
  out.require(t.j1_counts[1] == t.ok && t.j1_counts[0] == 0,
              fmt("%.0f of %.0f ok trials gave j = -1", double(t.j1_counts[0]), double(t.ok)));
  if (out.pass) out.detail = fmt("%.0f/%.0f ok trials gave j = +1", double(t.j1_counts[1]), double(t.ok));
  return out;
}

Outcome tail_law() {
  Outcome out;
  double worst = 0;
  for (TailMode mode : {TailMode::kSingle, TailMode::kSinglet}) {
    ExperimentConfig c = base(ExperimentKind::kTail);
    c.tail_mode = mode;
    c.tail_k = 6;
    c.directions = {planar(0), planar(kPi / 3)};
    const ExperimentResult r = run_experiment(c);
    for (std::size_t i = 0; i < r.estimates.size(); ++i) {
      const int k = static_cast<int>(i % 6) + 1;
      const double p = std::ldexp(1.0, -k);
      double z = 0;
      out.require(within_4_sigma(r.estimates[i].estimate, p, r.estimates[i].trials_used, &z),
                  fmt("mode %.0f dir %.0f k=%.0f", double(mode == TailMode::kSinglet), double(i / 6), k));
      worst = std::max(worst, std::abs(z));
    }
  }
  if (out.pass) out.detail = fmt("k = 1..6, 2 modes x 2 directions, max |z| = %.2f", worst);
  return out;
}

Outcome epr_anticorrelation() {
  Outcome out;
  const UnitVector r(0.3, -0.4, 0.866);
  const Tally t = tally_parallel(PairKernel{SingletEnsemble(kDefaultKMax, RandomStream(kSeed)), r, r}, 0, kN);
  const std::uint64_t same = t.joint_counts[1][1] + t.joint_counts[0][0];
  out.require(same == 0, fmt("%.0f same-sign coincidences", double(same)));
  // E = <j1 j2>/4; with perfect anticorrelation the sample variance is 0 and
  // the estimate must be exact.
  const double e = static_cast<double>(t.sum_j1j2) / static_cast<double>(t.ok) / 4;
  out.require(e == -0.25, fmt("E = %.6f", e));
  if (out.pass) out.detail = fmt("0 same-sign in %.0f ok trials, E = %.4f", double(t.ok), e);
  return out;
}

Outcome singlet_law() {
  Outcome out;
  ExperimentConfig c = base(ExperimentKind::kSinglet);
  const std::vector<double> angles{0, kPi / 6, kPi / 4, kPi / 3, kPi / 2, kPi};
  for (double t : angles) {
    c.directions.push_back(planar(0));
    c.directions.push_back(planar(t));
  }
  const ExperimentResult r = run_experiment(c);
  double worst = 0;
  for (std::size_t p = 0; p < angles.size(); ++p) {
    const double cs = std::cos(angles[p]);
    std::size_t i = 5 * p;
    for (int j1 : {1, -1}) {
      for (int j2 : {1, -1}) {
        const EstimateReport& f = r.estimates[i++];
        const double expect = (1 - j1 * j2 * cs) / 4;
        double z = 0;
        out.require(within_4_sigma(f.estimate, expect, f.trials_used, &z),
                    fmt("theta %.4f joint %.6f vs %.6f", angles[p], f.estimate, expect));
        worst = std::max(worst, std::abs(z));
      }
    }
    // Var(j1 j2 / 4) = (1 - cos^2) / 16
    const EstimateReport& e = r.estimates[i];
    const double sd = std::sqrt((1 - cs * cs) / 16 / static_cast<double>(e.trials_used));
    const double expect = -cs / 4;
    if (sd == 0) {
      out.require(std::abs(e.estimate - expect) < 1e-15, fmt("theta %.4f E = %.6f", angles[p], e.estimate));
    } else {
      out.require(std::abs(e.estimate - expect) <= 4 * sd,
                  fmt("theta %.4f E %.6f vs %.6f", angles[p], e.estimate, expect));
      worst = std::max(worst, std::abs(e.estimate - expect) / sd);
    }
  }
  if (out.pass) out.detail = fmt("6 angles x (4 joints + E), max |z| = %.2f", worst);
  return out;
}

Outcome chsh_violation() {
  Outcome out;
  double m[2];
  const std::vector<std::vector<double>> sets{{0, kPi / 4, kPi / 2, 3 * kPi / 4},
                                              {0, kPi / 8, kPi / 4, 3 * kPi / 8}};
  for (int s = 0; s < 2; ++s) {
    ExperimentConfig c = base(ExperimentKind::kChsh);
    for (double t : sets[s]) c.directions.push_back(planar(t));
    m[s] = run_experiment(c).estimates.back().estimate;
  }
  out.require(std::abs(m[0] - 0.7071) <= 0.005 && m[0] > 0.5, fmt("M = %.5f (want 0.7071)", m[0]));
  out.require(std::abs(m[1] - 0.597) <= 0.005, fmt("printed angles M = %.5f (want 0.597)", m[1]));
  if (out.pass) {
    out.detail = fmt("M = %.5f at 0,pi/4,pi/2,3pi/4; M = %.5f at 0,pi/8,pi/4,3pi/8", m[0], m[1]);
  }
  return out;
}

Outcome scheme_equivalence() {
  Outcome out;
  const SingletEnsemble ens(kDefaultKMax, RandomStream(kSeed));
  const UnitVector r1 = planar(0.2), r2 = planar(1.9);
  const std::uint64_t n = 100'000;
  const auto direct = collect_parallel(PairKernel{ens, r1, r2, PairScheme::kDirect}, 0, n);
  const auto delayed =
      collect_parallel(PairKernel{ens, r1, r2, PairScheme::kDelayed, kDefaultKMax}, 0, n);
  out.require(direct == delayed, "delayed records differ from direct");
  const Tally t = tally_parallel(PairKernel{ens, r1, r2, PairScheme::kDelayed, 3}, 0, kN);
  const double miss = static_cast<double>(t.coincidence_miss) / static_cast<double>(t.trials);
  double z = 0;
  out.require(within_4_sigma(miss, 0.125, t.trials, &z), fmt("miss rate %.6f vs 0.125", miss));
  if (out.pass) out.detail = fmt("1e5 records identical; k_scan = 3 miss rate %.5f (z = %.2f)", miss, z);
  return out;
}

Outcome oracle_consistency() {
  Outcome out;
  ExperimentConfig c = base(ExperimentKind::kOracleCheck);
  c.oracle_tolerance = 1e-6;
  const ExperimentResult r = run_experiment(c);
  double worst = 0;
  for (const auto& row : r.table.rows) {
    const double err = std::get<double>(row[3]);
    worst = std::max(worst, err);
    out.require(err <= 1e-6, std::get<std::string>(row[0]) + fmt(" error %.3g", err));
  }
  out.require(!r.table.rows.empty() && r.passed, "oracle-check reported failure");
  if (out.pass) out.detail = fmt("%.0f quantities, max error %.2g", double(r.table.rows.size()), worst);
  return out;
}

Outcome algebraic_layer() {
  Outcome out;
  RandomStream s(kSeed);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Observable o(uniform(s, -3, 3), uniform(s, -3, 3), {uniform(s, -3, 3), uniform(s, -3, 3)});
    const auto spec = spectrum(o);
    for (int j : {1, -1}) {
      const double v = evaluate(o, [j](const UnitVector&) { return j; });
      bool hit = false;
      for (double e : spec) hit = hit || v == e;
      out.require(hit, fmt("value %.17g not in spectrum", v));
    }
    const auto& d = o.decomposition();
    const Observable back = Observable::from_decomposition(d.g0, d.g, *d.r);
    const double err = std::max({std::abs(back.a() - o.a()), std::abs(back.d() - o.d()),
                                 std::abs(back.b() - o.b())});
    worst = std::max(worst, err);
    out.require(err <= 1e-12, fmt("round trip error %.3g", err));
    RandomStream dir = s.derive(static_cast<std::uint64_t>(i));
    const UnitVector probe = sample_sphere(dir);
    const double id = evaluate(Observable::identity(),
                               [&](const UnitVector& r) { return dot(r, probe) > 0 ? 1 : -1; });
    out.require(id == 1.0, "identity did not evaluate to 1");
  }
  if (out.pass) out.detail = fmt("1000 observables, max round-trip error %.2g", worst);
  return out;
}

Outcome determinism() {
  Outcome out;
  int runs = 0;
  for (ExperimentKind kind : {ExperimentKind::kSingle, ExperimentKind::kSinglet, ExperimentKind::kChsh,
                              ExperimentKind::kTail, ExperimentKind::kOracleCheck}) {
    for (OutputFormat format : {OutputFormat::kCsv, OutputFormat::kJson}) {
      std::string first;
      for (int threads : {1, 2, 4}) {
        ExperimentConfig c = base(kind);
        c.trials = 100'000;
        c.threads = threads;
        c.format = format;
        std::ostringstream os;
        write_result(os, c, run_experiment(c));
        ++runs;
        if (threads == 1) {
          first = os.str();
        } else {
          out.require(os.str() == first, std::string(to_string(kind)) + " output depends on threads");
        }
      }
    }
  }
  if (out.pass) out.detail = fmt("%.0f runs over 5 experiments x 2 formats x {1,2,4} threads", runs);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"single-particle law", single_law},
      {"spin-up certainty", spin_up_certainty},
      {"tail law", tail_law},
      {"EPR anticorrelation", epr_anticorrelation},
      {"singlet law", singlet_law},
      {"CHSH violation", chsh_violation},
      {"scheme equivalence", scheme_equivalence},
      {"oracle self-consistency", oracle_consistency},
      {"algebraic layer", algebraic_layer},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %-24s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
