#pragma once

// Rendering of sequence reports and sweeps as text tables, JSON and CSV.
//
// JSON carries every real as a decimal string at target_digits + 5
// significant digits and is emitted with a fixed key order, so parsing and
// re-serializing a payload reproduces it byte for byte.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rpm/problem.hpp"
#include "rpm/solver.hpp"

namespace rpm::report {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "1.0.0";
/// Digits beyond target_digits kept in JSON and CSV output.
inline constexpr int kExtraOutputDigits = 5;

enum class Format { table, json, csv };

Format parse_format(std::string_view name);

/// Echo of the problem and solver settings.
Json config_json(const ProblemSpec& spec, const SolveConfig& cfg);
/// Same, for a sweep over g.
Json config_json(Preset preset, const std::vector<Rational>& g_values, const SolveConfig& cfg);

/// FNV-1a (64 bit) of the compact config JSON, as 16 hex digits.
std::string config_hash(const Json& config);

Json sequence_json(const SequenceReport& report, const Json& config, int target_digits);
Json sweep_json(const std::vector<SweepRow>& rows, const Json& config, int target_digits);

/// Pretty-printed JSON followed by a newline.
std::string json_text(const Json& payload);

std::string render_sequence(const SequenceReport& report, Format format, const Json& config,
                            int target_digits);
std::string render_sweep(const std::vector<SweepRow>& rows, Preset preset, Format format,
                         const Json& config, int target_digits);

/// Final energy truncated at min(stable digits, target_digits) per component.
std::string stable_energy_text(const SequenceReport& report, int target_digits);

/// Header of the ratio column for a preset sweep.
std::string_view ratio_header(Preset preset);

/// Placeholder for undefined cells.
inline constexpr std::string_view kUndefined = "—";

}  // namespace rpm::report
