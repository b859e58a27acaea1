#pragma once

#include <ostream>
#include <string>

#include "mgs/experiments.h"

namespace mgs {

// Reals are printed with 17 significant digits so the text round-trips.
std::string format_real(double v);

// Header line followed by one line per row, in row order.
void write_csv(std::ostream& os, const Table& table);

// {"experiment": ..., "seed": ..., "trials": ..., "passed": ..., "columns": [...], "rows": [{...}]}
void write_json(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result);

void write_result(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace mgs
