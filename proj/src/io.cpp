#include "aigw/io.hpp"

#include "aigw/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace aigw::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size())
        lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty())
    return std::nullopt;
  if (s.front() == '+')
    s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

} // namespace

std::string format_number(double value) {
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_csv_number(double value) {
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

std::string read_text(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad())
    throw IoError(path.string(), "read failed");
  return ss.str();
}

void write_text(const std::filesystem::path &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError(path.string(), "cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out)
    throw IoError(path.string(), "write failed");
}

// ---------------------------------------------------------------- curves

std::string_view units_tag(CurveUnits units) {
  switch (units) {
  case CurveUnits::strain:
    return "strain_per_rtHz";
  case CurveUnits::m:
    return "m_per_rtHz";
  case CurveUnits::rad:
    return "rad_per_rtHz";
  case CurveUnits::m_per_s2:
    break;
  }
  throw UnitError("no curve-file units tag for " + std::string(to_string(units)));
}

CurveUnits parse_units_tag(std::string_view tag) {
  if (tag == "strain_per_rtHz")
    return CurveUnits::strain;
  if (tag == "m_per_rtHz")
    return CurveUnits::m;
  if (tag == "rad_per_rtHz")
    return CurveUnits::rad;
  throw ParseError("", 0, "unknown units tag '" + std::string(tag) +
                              "' (expected strain_per_rtHz, m_per_rtHz or rad_per_rtHz)");
}

NoiseCurve parse_curve(std::string_view text, const std::string &source_name) {
  std::optional<CurveUnits> units;
  std::string label;
  bool header_seen = false;
  std::vector<double> freqs, values;

  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty())
      continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos)
        continue;
      const auto key = trim(body.substr(0, colon));
      const auto value = trim(body.substr(colon + 1));
      if (key == "units") {
        if (value != "strain_per_rtHz" && value != "m_per_rtHz" && value != "rad_per_rtHz")
          throw ParseError(source_name, lineno, "unknown units tag '" + std::string(value) + "'");
        units = parse_units_tag(value);
      } else if (key == "label") {
        label = std::string(value);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "frequency_hz,asd")
        throw ParseError(source_name, lineno, "expected header 'frequency_hz,asd'");
      if (!units)
        throw ParseError(source_name, lineno, "missing '# units:' line before the header");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw ParseError(source_name, lineno, "expected two comma-separated columns");
    const auto f = to_double(line.substr(0, comma));
    const auto a = to_double(line.substr(comma + 1));
    if (!f || !a)
      throw ParseError(source_name, lineno, "malformed number");
    if (!(std::isfinite(*f) && *f > 0.0))
      throw ParseError(source_name, lineno, "frequency must be finite and > 0");
    if (!freqs.empty() && !(*f > freqs.back()))
      throw ParseError(source_name, lineno, "frequencies must be strictly increasing");
    if (!(*a >= 0.0))
      throw ParseError(source_name, lineno, "ASD values must be non-negative");
    freqs.push_back(*f);
    values.push_back(*a);
  }
  if (!header_seen)
    throw ParseError(source_name, lines.size(), "missing 'frequency_hz,asd' header");
  if (freqs.empty())
    throw ParseError(source_name, lines.size(), "curve has no data rows");
  if (label.empty())
    label = std::filesystem::path(source_name).stem().string();
  return NoiseCurve(std::move(freqs), std::move(values), *units, std::move(label));
}

NoiseCurve read_curve(const std::filesystem::path &path) {
  return parse_curve(read_text(path), path.string());
}

std::string format_curve(const NoiseCurve &curve, const std::string &source) {
  std::string out = "# units: " + std::string(units_tag(curve.units())) + "\n";
  if (!curve.label().empty())
    out += "# label: " + curve.label() + "\n";
  if (!source.empty())
    out += "# source: " + source + "\n";
  out += "frequency_hz,asd\n";
  for (std::size_t i = 0; i < curve.size(); ++i)
    out += format_csv_number(curve.frequencies()[i]) + "," + format_csv_number(curve.asd()[i]) + "\n";
  return out;
}

void write_curve(const NoiseCurve &curve, const std::filesystem::path &path, const std::string &source) {
  write_text(path, format_curve(curve, source));
}

std::string format_breakdown(const SensitivityBreakdown &breakdown) {
  if (breakdown.components.empty())
    throw InvalidParameter("a sensitivity breakdown needs at least one component");
  const auto &grid = breakdown.total.frequencies();
  for (const auto &c : breakdown.components)
    if (c.frequencies() != grid)
      throw InvalidParameter("component '" + c.label() + "' is not on the breakdown grid");

  std::string out = "# units: strain_per_rtHz\nfrequency_hz";
  for (const auto &c : breakdown.components)
    out += "," + c.label();
  out += ",total\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += format_csv_number(grid[i]);
    for (const auto &c : breakdown.components)
      out += "," + format_csv_number(c.asd()[i]);
    out += "," + format_csv_number(breakdown.total.asd()[i]) + "\n";
  }
  return out;
}

void write_breakdown(const SensitivityBreakdown &breakdown, const std::filesystem::path &path) {
  write_text(path, format_breakdown(breakdown));
}

// ---------------------------------------------------------------- key-value files

namespace {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line;
};

std::vector<KeyValue> parse_key_values(std::string_view text, const std::string &source_name,
                                       std::vector<std::string> &issues) {
  std::vector<KeyValue> out;
  std::map<std::string, std::size_t> seen;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto where = source_name + ":" + std::to_string(i + 1) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back(where + "expected 'key = value'");
      continue;
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      issues.push_back(where + "expected 'key = value'");
      continue;
    }
    if (auto [it, inserted] = seen.emplace(key, i + 1); !inserted) {
      issues.push_back(where + "duplicate key '" + key + "' (first on line " + std::to_string(it->second) + ")");
      continue;
    }
    out.push_back({std::move(key), std::move(value), i + 1});
  }
  return out;
}

using Setter = std::function<void(DetectorConfig &, const std::string &)>;
using Getter = std::function<std::string(const DetectorConfig &)>;

struct ConfigKey {
  const char *name;
  Setter set;
  Getter get;
};

double parse_number(const std::string &text) {
  const auto v = to_double(text);
  if (!v)
    throw InvalidParameter("'" + text + "' is not a number");
  return *v;
}

bool parse_bool(const std::string &text) {
  if (text == "true" || text == "1" || text == "yes")
    return true;
  if (text == "false" || text == "0" || text == "no")
    return false;
  throw InvalidParameter("'" + text + "' is not a boolean (true/false)");
}

#define AIGW_NUMBER(name, expr)                                                                              \
  ConfigKey {                                                                                                \
    name, [](DetectorConfig &c, const std::string &v) { c.expr = parse_number(v); },                         \
        [](const DetectorConfig &c) { return format_number(c.expr); }                                        \
  }

const std::vector<ConfigKey> &config_keys() {
  static const std::vector<ConfigKey> keys = {
      AIGW_NUMBER("arm_length_m", arm_length),
      AIGW_NUMBER("speed_of_light_m_per_s", constants.speed_of_light),
      AIGW_NUMBER("gravity_m_per_s2", constants.gravity),
      AIGW_NUMBER("gravity_gradient_per_s2", constants.gravity_gradient),
      AIGW_NUMBER("earth_rotation_rad_per_s", constants.earth_rotation),
      AIGW_NUMBER("photon_recoils_per_side", splitter.photon_recoils_per_side),
      AIGW_NUMBER("wavelength_m", splitter.wavelength),
      AIGW_NUMBER("atoms_per_shot", source.atoms_per_shot),
      AIGW_NUMBER("shot_rate_hz", source.shot_rate),
      AIGW_NUMBER("initial_radius_m", source.initial_radius),
      AIGW_NUMBER("expansion_rate_m_per_s", source.expansion_rate),
      AIGW_NUMBER("squeezing_db", source.squeezing_db),
      AIGW_NUMBER("source_distance_m", source.source_distance),
      {"launch_velocity_m_per_s",
       [](DetectorConfig &c, const std::string &v) {
         if (v == "auto")
           c.source.launch_velocity.reset();
         else
           c.source.launch_velocity = parse_number(v);
       },
       [](const DetectorConfig &c) {
         return c.source.launch_velocity ? format_number(*c.source.launch_velocity) : std::string("auto");
       }},
      {"geometry", [](DetectorConfig &c, const std::string &v) { c.geometry = parse_geometry(v); },
       [](const DetectorConfig &c) { return std::string(to_string(c.geometry)); }},
      AIGW_NUMBER("pulse_separation_s", pulse_separation),
      {"interleave_T_s",
       [](DetectorConfig &c, const std::string &v) {
         std::vector<double> values;
         std::string_view rest = v;
         while (true) {
           const auto comma = rest.find(',');
           values.push_back(parse_number(std::string(trim(rest.substr(0, comma)))));
           if (comma == std::string_view::npos)
             break;
           rest.remove_prefix(comma + 1);
         }
         c.interleave_T = std::move(values);
       },
       [](const DetectorConfig &c) {
         std::string out;
         for (std::size_t i = 0; i < c.interleave_T.size(); ++i)
           out += (i ? ", " : "") + format_number(c.interleave_T[i]);
         return out;
       }},
      {"resonant_loops",
       [](DetectorConfig &c, const std::string &v) {
         const double n = parse_number(v);
         if (!(n >= 1.0 && n <= 1e6 && std::floor(n) == n))
           throw InvalidParameter("'" + v + "' is not a positive integer");
         c.resonant_loops = static_cast<unsigned>(n);
       },
       [](const DetectorConfig &c) { return std::to_string(c.resonant_loops); }},
      AIGW_NUMBER("resonant_dead_time_s", resonant_dead_time),
      {"split_interleave_flux",
       [](DetectorConfig &c, const std::string &v) { c.split_interleave_flux = parse_bool(v); },
       [](const DetectorConfig &c) { return std::string(c.split_interleave_flux ? "true" : "false"); }},
      {"differential_arms", [](DetectorConfig &c, const std::string &v) { c.differential_arms = parse_bool(v); },
       [](const DetectorConfig &c) { return std::string(c.differential_arms ? "true" : "false"); }},
      AIGW_NUMBER("phase_floor_rad", phase_floor),
      AIGW_NUMBER("integration_time_s", integration_time),
      AIGW_NUMBER("gravity_difference_fraction", gravity_difference),
      AIGW_NUMBER("pointing_angle_rad", pointing_angle),
  };
  return keys;
}

#undef AIGW_NUMBER

} // namespace

DetectorConfig parse_config(std::string_view text, const std::string &source_name) {
  std::vector<std::string> issues;
  DetectorConfig config;
  for (const auto &kv : parse_key_values(text, source_name, issues)) {
    const auto &keys = config_keys();
    const auto it = std::find_if(keys.begin(), keys.end(), [&](const ConfigKey &k) { return kv.key == k.name; });
    const auto where = source_name + ":" + std::to_string(kv.line) + ": ";
    if (it == keys.end()) {
      issues.push_back(where + "unknown key '" + kv.key + "'");
      continue;
    }
    try {
      it->set(config, kv.value);
    } catch (const InvalidParameter &e) {
      issues.push_back(where + kv.key + ": " + e.what());
    }
  }
  config.collect_issues(issues);
  if (!issues.empty())
    throw ValidationError(std::move(issues));
  return config;
}

DetectorConfig read_config(const std::filesystem::path &path) {
  return parse_config(read_text(path), path.string());
}

std::string format_config(const DetectorConfig &config) {
  std::string out;
  for (const auto &k : config_keys())
    out += std::string(k.name) + " = " + k.get(config) + "\n";
  return out;
}

void write_config(const DetectorConfig &config, const std::filesystem::path &path) {
  write_text(path, format_config(config));
}

std::string config_hash(const DetectorConfig &config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : format_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SourceOffsets parse_offsets(std::string_view text, const std::string &source_name) {
  static const std::map<std::string, double SourceOffsets::*> fields = {
      {"position_m", &SourceOffsets::position},
      {"velocity_axial_m_per_s", &SourceOffsets::velocity_axial},
      {"velocity_transverse_m_per_s", &SourceOffsets::velocity_transverse},
      {"relaunch_angle_rad", &SourceOffsets::relaunch_angle},
      {"splitter_tilt_rad", &SourceOffsets::splitter_tilt},
      {"pointing_position_m", &SourceOffsets::pointing_position},
      {"pointing_velocity_m_per_s", &SourceOffsets::pointing_velocity},
  };
  std::vector<std::string> issues;
  SourceOffsets offsets;
  for (const auto &kv : parse_key_values(text, source_name, issues)) {
    const auto where = source_name + ":" + std::to_string(kv.line) + ": ";
    const auto it = fields.find(kv.key);
    if (it == fields.end()) {
      issues.push_back(where + "unknown key '" + kv.key + "'");
      continue;
    }
    const auto v = to_double(kv.value);
    if (!v || !std::isfinite(*v))
      issues.push_back(where + kv.key + ": '" + kv.value + "' is not a finite number");
    else
      offsets.*(it->second) = *v;
  }
  if (!issues.empty())
    throw ValidationError(std::move(issues));
  return offsets;
}

SourceOffsets read_offsets(const std::filesystem::path &path) {
  return parse_offsets(read_text(path), path.string());
}

// ---------------------------------------------------------------- other outputs

std::string format_response(const PhaseResponse &response) {
  std::string out = response.kind == ResponseKind::strain ? "# units: rad_per_strain\n" : "# units: rad_per_m\n";
  out += "frequency_hz,magnitude,phase_rad\n";
  for (std::size_t i = 0; i < response.frequencies.size(); ++i) {
    const auto v = response.values[i];
    out += format_csv_number(response.frequencies[i]) + "," + format_csv_number(std::abs(v)) + "," +
           format_csv_number(std::arg(v)) + "\n";
  }
  return out;
}

std::string format_trajectory(const MeanTrajectory &trajectory, std::size_t points, double timing_error_phase) {
  std::string out = "# timing_error_phase_rad: " + format_csv_number(timing_error_phase) + "\n";
  out += "t_s,y_m\n";
  for (const auto &[t, y] : trajectory.sample(points))
    out += format_csv_number(t) + "," + format_csv_number(y) + "\n";
  return out;
}

std::string format_report_text(const RequirementReport &report) {
  std::ostringstream ss;
  ss << "geometry: " << to_string(report.geometry) << "\n"
     << "phase floor: " << format_number(report.phase_floor) << " rad\n"
     << "differential factor: " << format_number(report.differential_factor) << "\n\n";

  std::size_t name_w = 4, var_w = 8, unit_w = 5;
  for (const auto &e : report.entries) {
    name_w = std::max(name_w, e.name.size());
    var_w = std::max(var_w, e.variable.size());
    unit_w = std::max(unit_w, e.units.size());
  }
  auto sci = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return std::string(buf);
  };
  ss << std::left << std::setw(static_cast<int>(name_w)) << "name" << "  " << std::setw(static_cast<int>(var_w))
     << "variable" << "  " << std::setw(10) << "tolerance" << "  " << std::setw(static_cast<int>(unit_w))
     << "units" << "  " << std::setw(10) << "reference" << "  formula\n";
  for (const auto &e : report.entries) {
    ss << std::setw(static_cast<int>(name_w)) << e.name << "  " << std::setw(static_cast<int>(var_w)) << e.variable
       << "  " << std::setw(10) << sci(e.tolerance) << "  " << std::setw(static_cast<int>(unit_w)) << e.units
       << "  " << std::setw(10) << (e.table_value ? sci(*e.table_value) : std::string("-")) << "  " << e.formula
       << "\n";
  }
  if (!report.warnings.empty()) {
    ss << "\nwarnings:\n";
    for (const auto &w : report.warnings)
      ss << "  - " << w << "\n";
  }
  ss << "\nassumptions:\n";
  for (const auto &a : report.assumptions)
    ss << "  - " << a << "\n";
  return ss.str();
}

std::string format_report_json(const RequirementReport &report) {
  nlohmann::ordered_json j;
  j["schema_version"] = schema_version;
  j["geometry"] = std::string(to_string(report.geometry));
  j["phase_floor_rad"] = report.phase_floor;
  j["differential_factor"] = report.differential_factor;
  j["cycles"] = report.cycles;
  j["atoms_per_shot"] = report.atoms_per_shot;
  auto entries = nlohmann::ordered_json::array();
  for (const auto &e : report.entries) {
    nlohmann::ordered_json row;
    row["name"] = e.name;
    row["variable"] = e.variable;
    row["tolerance"] = e.tolerance;
    row["units"] = e.units;
    row["formula"] = e.formula;
    row["reference"] = e.table_value ? nlohmann::ordered_json(*e.table_value) : nlohmann::ordered_json(nullptr);
    row["note"] = e.note;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  j["warnings"] = report.warnings;
  j["assumptions"] = report.assumptions;
  return j.dump(2) + "\n";
}

} // namespace aigw::io
