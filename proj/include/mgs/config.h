#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mgs/experiments.h"

namespace mgs {

// Flat key/value config document:
//
//   # comment
//   experiment = chsh
//   seed = 0x2a
//   angles = 0 pi/4 pi/2 3pi/4
//
// Keys mirror ExperimentConfig; unknown or repeated keys are ConfigErrors.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Applies one key/value pair to `config`. Throws ConfigError.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

// Value parsers shared with the CLI.
ExperimentKind parse_kind(std::string_view s);
std::uint64_t parse_seed(std::string_view s);  // decimal or 0x-hex
// Radians, optionally as multiples of pi: "0.5", "pi", "pi/8", "3pi/8", "-2*pi/3".
double parse_angle(std::string_view s);
// "x,y,z"; normalized on load.
UnitVector parse_vector(std::string_view s);
// Whitespace- or comma-separated angles, lifted to the x-z plane.
std::vector<UnitVector> parse_angle_list(std::string_view s);
// Semicolon-separated "x,y,z" vectors.
std::vector<UnitVector> parse_vector_list(std::string_view s);

}  // namespace mgs
