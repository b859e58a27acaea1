#include "mgs/report.h"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace mgs {
namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
  return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) {
    // JSON has no inf/nan; keep the CSV spelling.
    if (!std::isfinite(*d)) return format_real(*d);
    return *d;
  }
  return std::get<std::string>(cell);
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell_text(row[c]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result) {
  nlohmann::ordered_json doc;
  doc["experiment"] = to_string(result.kind);
  doc["seed"] = config.seed.value_or(0);
  doc["trials"] = config.trials;
  doc["kmax"] = config.k_max;
  doc["passed"] = result.passed;
  doc["columns"] = result.table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : result.table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size() && c < result.table.columns.size(); ++c) {
      obj[result.table.columns[c]] = cell_json(row[c]);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

void write_result(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result) {
  if (config.format == OutputFormat::kJson) {
    write_json(os, config, result);
  } else {
    write_csv(os, result.table);
  }
}

}  // namespace mgs
