#include "aigw/core/config.hpp"

#include "aigw/errors.hpp"

#include <cmath>
#include <numbers>

namespace aigw {

namespace {

void require_positive(std::vector<std::string> &issues, const char *name, double v) {
  if (!(std::isfinite(v) && v > 0.0))
    issues.push_back(std::string(name) + " must be finite and > 0 (got " + std::to_string(v) + ")");
}

} // namespace

std::string_view to_string(Geometry g) noexcept {
  return g == Geometry::single_loop ? "sl" : "ftl";
}

Geometry parse_geometry(std::string_view text) {
  if (text == "sl" || text == "single_loop")
    return Geometry::single_loop;
  if (text == "ftl" || text == "folded_triple_loop")
    return Geometry::folded_triple_loop;
  throw InvalidParameter("unknown geometry '" + std::string(text) + "' (expected sl or ftl)");
}

void PhysicalConstants::collect_issues(std::vector<std::string> &issues) const {
  require_positive(issues, "speed_of_light_m_per_s", speed_of_light);
  require_positive(issues, "gravity_m_per_s2", gravity);
  require_positive(issues, "gravity_gradient_per_s2", gravity_gradient);
  require_positive(issues, "earth_rotation_rad_per_s", earth_rotation);
}

double BeamSplitterSpec::wave_number() const noexcept {
  return 2.0 * photon_recoils_per_side * 2.0 * std::numbers::pi / wavelength;
}

void BeamSplitterSpec::collect_issues(std::vector<std::string> &issues) const {
  require_positive(issues, "photon_recoils_per_side", photon_recoils_per_side);
  require_positive(issues, "wavelength_m", wavelength);
}

void AtomSource::collect_issues(std::vector<std::string> &issues) const {
  if (!(std::isfinite(atoms_per_shot) && atoms_per_shot >= 1.0))
    issues.push_back("atoms_per_shot must be >= 1 (got " + std::to_string(atoms_per_shot) + ")");
  require_positive(issues, "shot_rate_hz", shot_rate);
  require_positive(issues, "initial_radius_m", initial_radius);
  require_positive(issues, "expansion_rate_m_per_s", expansion_rate);
  if (!(std::isfinite(squeezing_db) && squeezing_db >= 0.0))
    issues.push_back("squeezing_db must be >= 0 (got " + std::to_string(squeezing_db) + ")");
  require_positive(issues, "source_distance_m", source_distance);
  if (launch_velocity)
    require_positive(issues, "launch_velocity_m_per_s", *launch_velocity);
}

void DetectorConfig::collect_issues(std::vector<std::string> &issues) const {
  require_positive(issues, "arm_length_m", arm_length);
  constants.collect_issues(issues);
  splitter.collect_issues(issues);
  source.collect_issues(issues);
  require_positive(issues, "pulse_separation_s", pulse_separation);
  if (interleave_T.empty())
    issues.push_back("interleave_T_s must list at least one value");
  for (double t : interleave_T)
    require_positive(issues, "interleave_T_s entry", t);
  if (resonant_loops < 1)
    issues.push_back("resonant_loops must be >= 1");
  if (!(std::isfinite(resonant_dead_time) && resonant_dead_time >= 0.0))
    issues.push_back("resonant_dead_time_s must be >= 0");
  require_positive(issues, "phase_floor_rad", phase_floor);
  require_positive(issues, "integration_time_s", integration_time);
  require_positive(issues, "gravity_difference_fraction", gravity_difference);
  require_positive(issues, "pointing_angle_rad", pointing_angle);
}

void DetectorConfig::validate() const {
  std::vector<std::string> issues;
  collect_issues(issues);
  if (!issues.empty())
    throw ValidationError(std::move(issues));
}

double DetectorConfig::launch_velocity_for(Geometry g) const noexcept {
  if (source.launch_velocity)
    return *source.launch_velocity;
  const double gT = constants.gravity * pulse_separation;
  return g == Geometry::single_loop ? gT : 0.5 * gT;
}

} // namespace aigw
