#pragma once

#include "aigw/budget.hpp"
#include "aigw/core/config.hpp"
#include "aigw/response.hpp"
#include "aigw/sensitivity.hpp"
#include "aigw/trajectory.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace aigw::io {

inline constexpr int schema_version = 1;

// Curve files
//
//   # units: strain_per_rtHz
//   # label: <free text>          (optional)
//   # source: <free text>         (optional)
//   frequency_hz,asd
//   1.0000000000000000e+00,1.0000000000000000e-20
//
// Blank lines are ignored. Numbers are printed with 17 significant digits so
// that reading back a written curve is exact.

std::string_view units_tag(CurveUnits units);
/// Throws ParseError (line 0) for unknown tags.
CurveUnits parse_units_tag(std::string_view tag);

NoiseCurve parse_curve(std::string_view text, const std::string &source_name);
NoiseCurve read_curve(const std::filesystem::path &path);
std::string format_curve(const NoiseCurve &curve, const std::string &source = {});
void write_curve(const NoiseCurve &curve, const std::filesystem::path &path, const std::string &source = {});

/// Columns: frequency_hz, one per component, total. Overlays are not
/// included; see write_breakdown_files.
std::string format_breakdown(const SensitivityBreakdown &breakdown);
void write_breakdown(const SensitivityBreakdown &breakdown, const std::filesystem::path &path);

// Config files: `key = value` lines, `#` starts a comment, SI units with
// unit-suffixed keys. Unknown keys, malformed values and invariant
// violations are all collected into one ValidationError.

DetectorConfig parse_config(std::string_view text, const std::string &source_name);
DetectorConfig read_config(const std::filesystem::path &path);
/// Every key with its current value; parsing the result restores `config`.
std::string format_config(const DetectorConfig &config);
void write_config(const DetectorConfig &config, const std::filesystem::path &path);
/// FNV-1a of format_config, as 16 hex digits.
std::string config_hash(const DetectorConfig &config);

/// Offsets for the `budget` subcommand, same syntax as the config file.
SourceOffsets parse_offsets(std::string_view text, const std::string &source_name);
SourceOffsets read_offsets(const std::filesystem::path &path);

std::string format_response(const PhaseResponse &response);
std::string format_trajectory(const MeanTrajectory &trajectory, std::size_t points, double timing_error_phase);

std::string format_report_text(const RequirementReport &report);
std::string format_report_json(const RequirementReport &report);

/// Shortest round-trip formatting for JSON and text reports.
std::string format_number(double value);
/// Fixed 17-significant-digit scientific formatting for CSV data.
std::string format_csv_number(double value);

std::string read_text(const std::filesystem::path &path);
/// Throws IoError with the path on failure.
void write_text(const std::filesystem::path &path, std::string_view text);

} // namespace aigw::io
