#pragma once

#include "aigw/core/config.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aigw {

/// Everything a coupling formula may depend on, resolved from a
/// DetectorConfig for one geometry.
struct BudgetContext {
  double wave_number;
  double T;
  double gravity;
  double gravity_gradient;
  double earth_rotation;
  double gravity_difference; // m/s^2, absolute delta-g between the interferometers
  double source_distance;    // m
  double launch_velocity;    // m/s
  double relaunch_impulse;   // m/s, a*tau of one relaunch
  double atoms_per_shot;
  double cycles;             // interferometer cycles per integration time
  double pointing_angle;     // rad, scale of beam-splitter angle assignments
  bool differential = true;  // uncorrelated arms add sqrt(2)

  static BudgetContext from(const DetectorConfig &config, Geometry geometry);
  double differential_factor() const noexcept;
};

/// Offsets of the source and optics, one per tolerance variable.
struct SourceOffsets {
  double position = 0.0;            // m, mean position along the beam axis
  double velocity_axial = 0.0;      // m/s, mean velocity along the beam axis
  double velocity_transverse = 0.0; // m/s, mean horizontal velocity across the beam axis
  double relaunch_angle = 0.0;      // rad, relaunch pointing jitter
  double splitter_tilt = 0.0;       // rad, scale of beam-splitter tilt jitter
  double pointing_position = 0.0;   // m, initial position offset under splitter pointing jitter
  double pointing_velocity = 0.0;   // m/s, initial velocity offset under splitter pointing jitter
};

/// How a tolerance converts into launch and ensemble requirements.
enum class SourceQuantity { none, position, velocity };

/// One spurious-phase coupling. Every coupling is linear in its tolerance
/// variable: phase = differential_factor * slope(ctx) * variable.
struct CouplingTerm {
  std::string name;
  std::string formula;
  Geometry geometry;
  std::string variable;
  std::string units;
  double SourceOffsets::*offset;
  std::function<double(const BudgetContext &)> slope; // rad per unit variable, per arm
  SourceQuantity quantity = SourceQuantity::none;
  std::optional<double> table_value; // reference tolerance, for comparison only
  std::string note;

  double phase(const BudgetContext &ctx, double value) const;
};

/// All couplings of one geometry, in report order.
const std::vector<CouplingTerm> &coupling_terms(Geometry geometry);
/// Throws InvalidParameter for unknown names.
const CouplingTerm &coupling_term(const std::string &name);

/// Phase of every single-loop coupling, keyed by coupling name.
std::map<std::string, double> sl_coupling_phases(const BudgetContext &ctx, const SourceOffsets &offsets);
/// Phase of every folded-triple-loop coupling, keyed by coupling name.
std::map<std::string, double> ftl_coupling_phases(const BudgetContext &ctx, const SourceOffsets &offsets);

/// Value of the tolerance variable at which |phase| reaches `phase_floor`.
/// Throws DegenerateCoupling when the slope vanishes at `ctx`.
double invert_requirement(const CouplingTerm &term, double phase_floor, const BudgetContext &ctx);

struct SourceStatistics {
  double position; // m, instability of the mean position
  double velocity; // m/s, instability of the mean velocity
};

/// Shot-noise-limited instabilities sigma / sqrt(cycles * atoms).
SourceStatistics source_statistics(double initial_radius, double expansion_rate, double atoms,
                                   double cycles);

/// Detection-limited phase noise (1/sqrt(N)) 10^(-dB/20) / sqrt(rate), rad/sqrt(Hz).
double detection_phase_asd(double atoms, double shot_rate, double squeezing_db);

/// Kinetic temperature m v^2 / k_B of a rubidium-87 ensemble.
double rubidium_kinetic_temperature(double velocity_spread);

struct RequirementEntry {
  std::string name;
  std::string formula;
  std::string variable;
  std::string units;
  double tolerance;
  double phase_floor;
  std::optional<double> table_value;
  std::string note;
};

struct RequirementReport {
  Geometry geometry;
  double phase_floor;
  double differential_factor;
  double cycles;
  double atoms_per_shot;
  std::vector<RequirementEntry> entries;
  std::vector<std::string> warnings;
  std::vector<std::string> assumptions;

  /// Throws InvalidParameter for unknown names.
  const RequirementEntry &at(const std::string &name) const;
};

/// Inverts every coupling of `geometry` and adds the derived launch-angle,
/// initial-radius / expansion-rate and temperature entries. Tolerances that
/// differ from their reference value by more than 20% produce a warning.
RequirementReport full_requirement_report(const DetectorConfig &config, double phase_floor,
                                          Geometry geometry);

} // namespace aigw
