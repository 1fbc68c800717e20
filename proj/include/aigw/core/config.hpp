#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aigw {

/// Interferometer geometry families.
enum class Geometry { single_loop, folded_triple_loop };

std::string_view to_string(Geometry g) noexcept;
/// Accepts "sl"/"single_loop" and "ftl"/"folded_triple_loop".
Geometry parse_geometry(std::string_view text);

/// Environment constants shared by every calculation. All SI.
struct PhysicalConstants {
  double speed_of_light = 299792458.0; // m/s
  double gravity = 9.81;               // m/s^2
  double gravity_gradient = 1.5e-6;    // 1/s^2
  double earth_rotation = 5.75e-5;     // rad/s

  /// Appends one message per violated invariant.
  void collect_issues(std::vector<std::string> &issues) const;
};

/// Symmetric large-momentum-transfer beam splitter.
struct BeamSplitterSpec {
  double photon_recoils_per_side = 1000.0;
  double wavelength = 780e-9; // m

  /// Effective wave number of the differential momentum between both paths.
  /// Each path receives `photon_recoils_per_side` recoils in opposite
  /// directions, so the differential transfer counts twice that number.
  double wave_number() const noexcept;

  void collect_issues(std::vector<std::string> &issues) const;
};

struct AtomSource {
  double atoms_per_shot = 1e9;
  double shot_rate = 10.0;        // Hz
  double initial_radius = 4.3e-5; // m
  double expansion_rate = 1e-4;   // m/s
  double squeezing_db = 20.0;     // dB below the atom shot-noise limit
  double source_distance = 0.3;   // m, source to beam-splitting zone
  /// Upward launch velocity. Unset means the geometry default: g*T for the
  /// single loop, g*T/2 for the folded triple loop.
  std::optional<double> launch_velocity;

  void collect_issues(std::vector<std::string> &issues) const;
};

/// Full detector description. Every field has a documented default so an
/// empty configuration file reproduces the reference design.
struct DetectorConfig {
  double arm_length = 1e4; // m
  PhysicalConstants constants;
  BeamSplitterSpec splitter;
  AtomSource source;

  Geometry geometry = Geometry::folded_triple_loop;
  double pulse_separation = 0.26; // s
  std::vector<double> interleave_T{0.182, 0.234, 0.260};

  unsigned resonant_loops = 1;
  double resonant_dead_time = 0.1; // s between resonant-mode measurements
  bool split_interleave_flux = false;
  /// Treat the two arms as uncorrelated: phase noise grows by sqrt(2).
  bool differential_arms = true;

  double phase_floor = 1e-6;          // rad, per integration time
  double integration_time = 1.0;      // s
  double gravity_difference = 1e-7;   // delta-g between the two interferometers, in units of g
  double pointing_angle = 1e-10;      // rad, beam-splitter pointing instability scale

  /// Throws ValidationError listing every violated invariant.
  void validate() const;
  void collect_issues(std::vector<std::string> &issues) const;

  double launch_velocity_for(Geometry g) const noexcept;
  /// Interferometer cycles averaged within `integration_time`.
  double cycles() const noexcept { return source.shot_rate * integration_time; }
};

} // namespace aigw
