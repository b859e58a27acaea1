#include "mgs/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace mgs {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

double parse_real(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("not a real number: " + quoted(s));
  }
  return v;
}

template <class Int>
Int parse_int(std::string_view s, int base = 10) {
  s = trim(s);
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("not an integer: " + quoted(s));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find_first_of(seps, pos);
    const auto piece = trim(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
    if (!piece.empty()) out.push_back(piece);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

ExperimentKind parse_kind(std::string_view s) {
  s = trim(s);
  if (s == "single") return ExperimentKind::kSingle;
  if (s == "singlet") return ExperimentKind::kSinglet;
  if (s == "chsh") return ExperimentKind::kChsh;
  if (s == "tail") return ExperimentKind::kTail;
  if (s == "oracle-check") return ExperimentKind::kOracleCheck;
  throw ConfigError("unknown experiment " + quoted(s));
}

std::uint64_t parse_seed(std::string_view s) {
  s = trim(s);
  if (s.starts_with("0x") || s.starts_with("0X")) return parse_int<std::uint64_t>(s.substr(2), 16);
  return parse_int<std::uint64_t>(s);
}

double parse_angle(std::string_view s) {
  s = trim(s);
  const auto pi_at = s.find("pi");
  if (pi_at == std::string_view::npos) return parse_real(s);
  // [sign][coef][*]pi[/den]
  std::string_view coef = trim(s.substr(0, pi_at));
  std::string_view rest = trim(s.substr(pi_at + 2));
  if (coef.ends_with('*')) coef = trim(coef.substr(0, coef.size() - 1));
  double c = 1.0;
  if (coef == "-") {
    c = -1.0;
  } else if (coef == "+" || coef.empty()) {
    c = 1.0;
  } else {
    c = parse_real(coef);
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("bad angle " + quoted(s));
    den = parse_real(rest.substr(1));
    if (den == 0.0) throw ConfigError("bad angle " + quoted(s));
  }
  return c * std::numbers::pi / den;
}

UnitVector parse_vector(std::string_view s) {
  const auto parts = split(s, ",");
  if (parts.size() != 3) throw ConfigError("expected x,y,z vector: " + quoted(s));
  try {
    return UnitVector(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]));
  } catch (const std::invalid_argument&) {
    throw ConfigError("cannot normalize vector " + quoted(s));
  }
}

std::vector<UnitVector> parse_angle_list(std::string_view s) {
  std::vector<UnitVector> out;
  for (auto piece : split(s, " \t,")) out.push_back(UnitVector::from_planar_angle(parse_angle(piece)));
  if (out.empty()) throw ConfigError("empty angle list");
  return out;
}

std::vector<UnitVector> parse_vector_list(std::string_view s) {
  std::vector<UnitVector> out;
  for (auto piece : split(s, ";")) out.push_back(parse_vector(piece));
  if (out.empty()) throw ConfigError("empty direction list");
  return out;
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "experiment") {
    config.kind = parse_kind(value);
  } else if (key == "seed") {
    config.seed = parse_seed(value);
  } else if (key == "trials") {
    config.trials = parse_int<std::uint64_t>(value);
  } else if (key == "kmax") {
    config.k_max = parse_int<int>(value);
  } else if (key == "n") {
    config.n = parse_vector(value);
  } else if (key == "dirs") {
    config.directions = parse_vector_list(value);
  } else if (key == "angles") {
    config.directions = parse_angle_list(value);
  } else if (key == "k_scan") {
    config.k_scan = parse_int<int>(value);
  } else if (key == "scheme") {
    if (value == "direct") {
      config.scheme = PairScheme::kDirect;
    } else if (value == "delayed") {
      config.scheme = PairScheme::kDelayed;
    } else {
      throw ConfigError("scheme must be direct or delayed, got " + quoted(value));
    }
  } else if (key == "format") {
    if (value == "csv") {
      config.format = OutputFormat::kCsv;
    } else if (value == "json") {
      config.format = OutputFormat::kJson;
    } else {
      throw ConfigError("format must be csv or json, got " + quoted(value));
    }
  } else if (key == "out") {
    config.out = std::string(value);
  } else if (key == "threads") {
    config.threads = parse_int<int>(value);
  } else if (key == "sigma_threshold") {
    config.sigma_threshold = parse_real(value);
  } else if (key == "tail_k") {
    config.tail_k = parse_int<int>(value);
  } else if (key == "tail_mode") {
    if (value == "single") {
      config.tail_mode = TailMode::kSingle;
    } else if (value == "singlet") {
      config.tail_mode = TailMode::kSinglet;
    } else {
      throw ConfigError("tail_mode must be single or singlet, got " + quoted(value));
    }
  } else if (key == "quad_nodes") {
    config.quad.nodes = parse_int<int>(value);
  } else if (key == "quad_tolerance") {
    config.quad.tolerance = parse_real(value);
  } else if (key == "oracle_tolerance") {
    config.oracle_tolerance = parse_real(value);
  } else {
    throw ConfigError("unknown config key " + quoted(key));
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  for (std::string_view rest = text; !rest.empty();) {
    const auto eol = rest.find('\n');
    std::string_view line = rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(where + "duplicate key " + quoted(key));
    }
    if ((key == "dirs" && seen.contains("angles")) || (key == "angles" && seen.contains("dirs"))) {
      throw ConfigError(where + "give either dirs or angles, not both");
    }
    try {
      apply_setting(config, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + quoted(path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace mgs
