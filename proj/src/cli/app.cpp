#include "aigw/cli.hpp"

#include "aigw/budget.hpp"
#include "aigw/errors.hpp"
#include "aigw/grid.hpp"
#include "aigw/io.hpp"
#include "aigw/response.hpp"
#include "aigw/sensitivity.hpp"
#include "aigw/simd/kernels.hpp"
#include "aigw/trajectory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <optional>
#include <ostream>

namespace aigw::cli {

namespace {

struct GridFlags {
  double f_min = 0.01;
  double f_max = 10.0;
  std::size_t points = 2000;
};

struct Options {
  std::string config_path;
  std::string output = "-";
  std::string geometry;
  std::string isa;
  bool reproducible = false;
  GridFlags grid;

  // response
  std::vector<double> single_f;
  std::optional<double> T;
  unsigned loops = 0;

  // sensitivity
  bool interleave = false;
  std::vector<std::string> overlays;
  std::string isolation;
  std::string newtonian;

  // budget / requirements
  std::string offsets;
  std::string format = "text";
  std::optional<double> phase_floor;

  // trajectory
  std::size_t trajectory_points = 601;
  double y0 = 0.0, v0 = 0.0;
  double relaunch_duration = 0.015;
  double tilt1 = 0.0, tilt2 = 0.0;
  double dtau1 = 0.0, dtau2 = 0.0;

  // resonant
  bool no_rate_adjust = false;
};

DetectorConfig load_config(const Options &o) {
  DetectorConfig c = o.config_path.empty() ? DetectorConfig{} : io::read_config(o.config_path);
  if (!o.geometry.empty())
    c.geometry = parse_geometry(o.geometry);
  if (o.T)
    c.pulse_separation = *o.T;
  if (o.phase_floor)
    c.phase_floor = *o.phase_floor;
  c.validate();
  return c;
}

std::vector<double> make_grid(const GridFlags &g) {
  if (!(g.f_min < g.f_max))
    throw InvalidParameter("--f-min must be below --f-max");
  if (g.points < 2)
    throw InvalidParameter("--points must be >= 2");
  return log_grid(g.f_min, g.f_max, g.points);
}

void emit(const Options &o, std::ostream &out, const std::string &text) {
  if (o.output == "-")
    out << text;
  else
    io::write_text(o.output, text);
}

std::string timestamp(bool reproducible) {
  if (reproducible)
    return "1970-01-01T00:00:00Z";
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_metadata(const Options &o, const DetectorConfig &config, const SensitivityBreakdown &b,
                    const std::vector<std::string> &overlay_files) {
  nlohmann::ordered_json j;
  j["schema_version"] = io::schema_version;
  j["units"] = "strain_per_rtHz";
  j["config_hash"] = io::config_hash(config);
  j["timestamp"] = timestamp(o.reproducible);
  j["simd"] = std::string(simd::to_string(simd::active()));
  auto labels = nlohmann::ordered_json::array();
  for (const auto &c : b.components)
    labels.push_back(c.label());
  j["components"] = labels;
  auto overlays = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < b.overlays.size(); ++i)
    overlays.push_back({{"label", b.overlays[i].label()},
                        {"units", std::string(io::units_tag(b.overlays[i].units()))},
                        {"file", overlay_files[i]}});
  j["overlays"] = overlays;
  j["omissions"] = b.omissions;
  io::write_text(o.output + ".json", j.dump(2) + "\n");
}

PulseSequence sequence_for(const DetectorConfig &c, unsigned loops) {
  if (loops > 1)
    return build_resonant_sequence(c.pulse_separation, static_cast<int>(loops), c.splitter);
  return build_sequence(c.geometry, c.pulse_separation, c.splitter);
}

int cmd_response(const Options &o, std::ostream &out) {
  const auto c = load_config(o);
  const auto seq = sequence_for(c, o.loops);
  std::vector<double> grid = o.single_f;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty())
    grid = make_grid(o.grid);
  emit(o, out, io::format_response(strain_response(seq, c.arm_length, grid)));
  return ok;
}

int cmd_sensitivity(const Options &o, std::ostream &out, std::ostream &err) {
  const auto c = load_config(o);
  const auto grid = truncate_to_nyquist(make_grid(o.grid), c.source.shot_rate);
  if (grid.size() < 2)
    throw InvalidParameter("fewer than two grid points below the Nyquist frequency " +
                           io::format_number(0.5 * c.source.shot_rate) + " Hz");

  std::vector<NoiseCurve> components;
  std::vector<std::string> omissions;
  if (o.interleave)
    components.push_back(interleaved_strain_asd(c, c.geometry, grid));
  else if (o.loops > 1)
    components.push_back(resonant_strain_asd(c.pulse_separation, static_cast<int>(o.loops), c, grid));
  else
    components.push_back(intrinsic_strain_asd(sequence_for(c, 1), c, grid));

  if (!o.isolation.empty())
    components.push_back(
        mirror_vibration_strain_asd(sequence_for(c, o.loops), c, io::read_curve(o.isolation), grid));

  if (!o.newtonian.empty()) {
    if (std::filesystem::exists(o.newtonian)) {
      auto nn = io::read_curve(o.newtonian);
      if (nn.units() != CurveUnits::strain)
        throw UnitError("Newtonian-noise curve must be a strain ASD");
      components.push_back(nn.resample(grid).relabeled("newtonian"));
    } else {
      omissions.push_back("newtonian: file not found: " + o.newtonian);
      err << "warning: Newtonian-noise file " << o.newtonian << " not found; component omitted\n";
    }
  }

  std::vector<NoiseCurve> overlays;
  for (const auto &p : o.overlays)
    overlays.push_back(io::read_curve(p));

  auto breakdown = assemble_breakdown(components, overlays);
  breakdown.omissions = omissions;
  emit(o, out, io::format_breakdown(breakdown));

  std::vector<std::string> overlay_files;
  for (std::size_t i = 0; i < breakdown.overlays.size(); ++i) {
    if (o.output == "-") {
      overlay_files.emplace_back();
      continue;
    }
    const std::string path = o.output + ".overlay" + std::to_string(i + 1) + ".csv";
    io::write_curve(breakdown.overlays[i], path, o.overlays[i]);
    overlay_files.push_back(path);
  }
  if (o.output != "-")
    write_metadata(o, c, breakdown, overlay_files);
  return ok;
}

int cmd_budget(const Options &o, std::ostream &out) {
  const auto c = load_config(o);
  const auto offsets = io::read_offsets(o.offsets);
  const auto ctx = BudgetContext::from(c, c.geometry);
  const auto phases = c.geometry == Geometry::single_loop ? sl_coupling_phases(ctx, offsets)
                                                          : ftl_coupling_phases(ctx, offsets);
  std::string text = "coupling,variable,value,units,phase_rad\n";
  for (const auto &term : coupling_terms(c.geometry)) {
    const double phase = phases.at(term.name);
    text += term.name + "," + term.variable + "," + io::format_csv_number(offsets.*(term.offset)) + "," +
            term.units + "," + io::format_csv_number(phase) + "\n";
  }
  emit(o, out, text);
  return ok;
}

int cmd_requirements(const Options &o, std::ostream &out) {
  const auto c = load_config(o);
  if (o.format != "text" && o.format != "json")
    throw InvalidParameter("--format must be text or json");
  const auto report = full_requirement_report(c, c.phase_floor, c.geometry);
  emit(o, out, o.format == "json" ? io::format_report_json(report) : io::format_report_text(report));
  return ok;
}

int cmd_trajectory(const Options &o, std::ostream &out) {
  const auto c = load_config(o);
  const double T = c.pulse_separation;
  const double g = c.constants.gravity;
  const auto r1 = RelaunchSpec::folded(T, g, o.relaunch_duration, o.tilt1, o.dtau1);
  const auto r2 = RelaunchSpec::folded(T, g, o.relaunch_duration, o.tilt2, o.dtau2);
  const auto traj = build_mean_trajectory(o.y0, o.v0, {r1, r2}, T);
  const double k = c.splitter.wave_number();
  const double phase = timing_error_phase(k, r1.acceleration, r1.duration, o.dtau1 + o.dtau2, o.dtau2 - o.dtau1,
                                          o.tilt1, o.tilt2);
  std::string text = io::format_trajectory(traj, o.trajectory_points, phase);
  text.insert(0, "# trajectory_phase_rad: " + io::format_csv_number(ftl_phase_from_trajectory(traj, k, T)) + "\n");
  emit(o, out, text);
  return ok;
}

int cmd_resonant(const Options &o, std::ostream &out) {
  const auto c = load_config(o);
  const unsigned n = o.loops ? o.loops : c.resonant_loops;
  const auto grid = truncate_to_nyquist(make_grid(o.grid), c.source.shot_rate);
  if (grid.size() < 2)
    throw InvalidParameter("fewer than two grid points below the Nyquist frequency");
  const auto curve = resonant_strain_asd(c.pulse_separation, static_cast<int>(n), c, grid, !o.no_rate_adjust);
  const auto seq = build_resonant_sequence(c.pulse_separation, static_cast<int>(n), c.splitter);
  const auto peak = find_resonance(seq, c.arm_length, grid.front(), grid.back());
  std::string text = "# resonance_frequency_hz: " + io::format_csv_number(peak.frequency) + "\n" +
                     "# resonance_response_rad_per_strain: " + io::format_csv_number(peak.magnitude) + "\n" +
                     io::format_curve(curve);
  emit(o, out, text);
  if (o.output != "-")
    out << "resonance_frequency_hz = " << io::format_number(peak.frequency) << "\n";
  return ok;
}

void add_common(CLI::App *sub, Options &o, bool with_grid) {
  sub->add_option("--config", o.config_path, "Detector config file (key = value, SI units)");
  sub->add_option("--output,-o", o.output, "Output file, '-' for stdout")->capture_default_str();
  sub->add_option("--geometry", o.geometry, "Interferometer geometry: sl or ftl (overrides config)")
      ->check(CLI::IsMember({"sl", "ftl", "single_loop", "folded_triple_loop"}));
  sub->add_option("--T", o.T, "Pulse separation T [s] (overrides config)");
  sub->add_option("--isa", o.isa, "SIMD kernel variant: scalar or avx2")->check(CLI::IsMember({"scalar", "avx2"}));
  if (with_grid) {
    sub->add_option("--f-min", o.grid.f_min, "Lowest grid frequency [Hz]")->capture_default_str();
    sub->add_option("--f-max", o.grid.f_max, "Highest grid frequency [Hz]")->capture_default_str();
    sub->add_option("--points", o.grid.points, "Number of log-spaced grid points")->capture_default_str();
  }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Atom-interferometric gravitational-wave detector toolkit", "aigw"};
  app.require_subcommand(1);

  auto *response = app.add_subcommand("response", "Strain response magnitude and phase [rad/strain] as CSV");
  add_common(response, o, true);
  response->add_option("--f", o.single_f, "Evaluate at these frequencies [Hz] instead of the grid");
  response->add_option("--loops", o.loops, "Use the 3n-loop resonant sequence with n loops");

  auto *sensitivity = app.add_subcommand("sensitivity", "Strain sensitivity breakdown [1/sqrt(Hz)] as CSV");
  add_common(sensitivity, o, true);
  sensitivity->add_flag("--interleave", o.interleave, "Combine interleaved T values from interleave_T_s");
  sensitivity->add_option("--loops", o.loops, "Resonant mode with n loops (rate-adjusted)");
  sensitivity->add_option("--overlay", o.overlays, "Overlay curve file, passed through unchanged (repeatable)");
  sensitivity->add_option("--isolation", o.isolation, "Mirror displacement ASD file [m/sqrt(Hz)]");
  sensitivity->add_option("--newtonian", o.newtonian, "Newtonian-noise strain ASD file [1/sqrt(Hz)]");
  sensitivity->add_flag("--reproducible", o.reproducible, "Zero the timestamp in the JSON metadata");

  auto *budget = app.add_subcommand("budget", "Spurious phase [rad] of every coupling for given offsets");
  add_common(budget, o, false);
  budget->add_option("--offsets", o.offsets, "Offsets file (position_m, velocity_axial_m_per_s, ...)")
      ->required();

  auto *requirements = app.add_subcommand("requirements", "Tolerance of every coupling at the phase floor");
  add_common(requirements, o, false);
  requirements->add_option("--phase-floor", o.phase_floor, "Phase noise floor [rad] (overrides config)");
  requirements->add_option("--format", o.format, "Report format: text or json")->capture_default_str();

  auto *trajectory = app.add_subcommand("trajectory", "Folded triple-loop mean trajectory y(t) [m] as CSV");
  add_common(trajectory, o, false);
  trajectory->add_option("--samples", o.trajectory_points, "Number of (t, y) samples")->capture_default_str();
  trajectory->add_option("--y0", o.y0, "Initial position along the beam axis [m]")->capture_default_str();
  trajectory->add_option("--v0", o.v0, "Initial velocity along the beam axis [m/s]")->capture_default_str();
  trajectory->add_option("--relaunch-duration", o.relaunch_duration, "Relaunch duration tau [s]")
      ->capture_default_str();
  trajectory->add_option("--tilt1", o.tilt1, "First relaunch tilt [rad]")->capture_default_str();
  trajectory->add_option("--tilt2", o.tilt2, "Second relaunch tilt [rad]")->capture_default_str();
  trajectory->add_option("--dtau1", o.dtau1, "First relaunch timing offset [s]")->capture_default_str();
  trajectory->add_option("--dtau2", o.dtau2, "Second relaunch timing offset [s]")->capture_default_str();

  auto *resonant = app.add_subcommand("resonant", "Resonant 3n-loop strain ASD [1/sqrt(Hz)] and its peak [Hz]");
  add_common(resonant, o, true);
  resonant->add_option("--loops", o.loops, "Number of loops n (default: resonant_loops from config)");
  resonant->add_flag("--no-rate-adjust", o.no_rate_adjust, "Keep the full shot rate for every n");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  struct IsaGuard {
    simd::Isa saved = simd::active();
    ~IsaGuard() { simd::select(saved); }
  } guard;
  try {
    if (!o.isa.empty())
      simd::select(simd::parse_isa(o.isa));
    if (response->parsed())
      return cmd_response(o, out);
    if (sensitivity->parsed())
      return cmd_sensitivity(o, out, err);
    if (budget->parsed())
      return cmd_budget(o, out);
    if (requirements->parsed())
      return cmd_requirements(o, out);
    if (trajectory->parsed())
      return cmd_trajectory(o, out);
    if (resonant->parsed())
      return cmd_resonant(o, out);
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return io_error;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return validation_error;
  }
  return usage_error;
}

} // namespace aigw::cli
