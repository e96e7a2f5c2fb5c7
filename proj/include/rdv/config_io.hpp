#pragma once

#include "rdv/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rdv {

// Line-oriented scenario files:
//
//   [scenario]
//   N = 5
//   dynamics = double
//   ...
//
// Sections: [scenario], [graph], [guidance], [dynamics], [perturbations].
// '#' starts a comment. Lists use commas or spaces; point lists separate
// points with ';'. Edges are written "i>j" (agent i listens to agent j).

struct ParsedConfig {
  ScenarioConfig config;
  std::vector<std::string> defaulted;  ///< "[section].key = value" for every key filled from defaults
};

/// Throws ConfigError carrying the key and line number on unknown keys,
/// missing required keys, type mismatches and invalid values.
ParsedConfig parse_config(std::string_view text);
ParsedConfig load_config(const std::filesystem::path& path);

/// Writes every key that applies to the scenario; parse_config reads it back equal.
std::string serialize_config(const ScenarioConfig& config);

enum class SweepAxis { Epsilon, L, Delay, Seed };

const char* to_string(SweepAxis axis);

struct SweepSpec {
  ScenarioConfig base;
  SweepAxis axis = SweepAxis::Epsilon;
  std::vector<double> values;
  std::size_t repeats = 1;
};

/// A scenario file plus a [sweep] section with keys axis, values, repeats.
SweepSpec parse_sweep(std::string_view text);
SweepSpec load_sweep(const std::filesystem::path& path);

/// One expanded sweep run. Runs are ordered by (value, seed).
struct SweepPoint {
  double value = 0.0;
  std::uint64_t seed = 0;
  ScenarioConfig config;
};

/// Repeats use seeds base.seed, base.seed + 1, ...; the seed axis takes its values as seeds.
std::vector<SweepPoint> expand_sweep(const SweepSpec& spec);

}  // namespace rdv
