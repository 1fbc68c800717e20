#pragma once

#include <array>
#include <utility>
#include <vector>

namespace aigw {

/// A vertical relaunch of finite duration. Its tilt projects part of the
/// vertical impulse onto the beam-splitting axis.
struct RelaunchSpec {
  double duration;      // s
  double acceleration;  // m/s^2 during the relaunch window
  double tilt = 0.0;    // rad, deviation from orthogonality to the beam axis
  double timing_offset = 0.0; // s, shift of the window centre from the trajectory crossing

  /// Relaunch whose impulse a*duration = (5/2) g T restores the folded geometry.
  static RelaunchSpec folded(double T, double gravity, double duration = 0.015, double tilt = 0.0,
                             double timing_offset = 0.0);
  double impulse() const noexcept { return acceleration * duration; }
};

/// Position along the beam-splitting axis on [start, end]:
///   y(t) = c0 + c1 (t - start) + c2 (t - start)^2
/// Extended precision: the interferometer phase is a weighted difference of
/// positions that agree to many more digits than double carries.
struct TrajectorySegment {
  long double start;
  long double end;
  std::array<long double, 3> coeffs;

  long double position(long double t) const noexcept {
    const long double dt = t - start;
    return coeffs[0] + dt * (coeffs[1] + dt * coeffs[2]);
  }
  long double velocity(long double t) const noexcept { return coeffs[1] + 2.0L * (t - start) * coeffs[2]; }
};

/// Piecewise ballistic mean trajectory of the folded triple loop: free flight,
/// first relaunch, free flight, second relaunch, free flight. Tiles [0, 6T].
class MeanTrajectory {
public:
  explicit MeanTrajectory(std::vector<TrajectorySegment> segments);

  const std::vector<TrajectorySegment> &segments() const noexcept { return segments_; }
  long double start() const noexcept { return segments_.front().start; }
  long double end() const noexcept { return segments_.back().end; }
  /// Throws InvalidParameter outside [start(), end()].
  long double position(long double t) const;

  /// Evenly spaced (t, y) samples covering the whole trajectory.
  std::vector<std::pair<double, double>> sample(std::size_t points) const;

private:
  std::vector<TrajectorySegment> segments_;
};

/// Builds the mean trajectory for initial position y0 and velocity v0 along
/// the beam axis. Relaunch windows are centred at 9T/5 and 21T/5 plus their
/// timing offsets. Each relaunch adds the horizontal velocity
/// tilt * acceleration * duration, accumulated quadratically across its window.
/// Throws InvalidParameter when the windows overlap, leave [0, 6T], or T <= 0.
MeanTrajectory build_mean_trajectory(double y0, double v0,
                                     const std::pair<RelaunchSpec, RelaunchSpec> &relaunches,
                                     double T);

/// k [y(0) - 9/4 y(T) + 5/2 y(3T) - 9/4 y(5T) + y(6T)].
double ftl_phase_from_trajectory(const MeanTrajectory &trajectory, double wave_number, double T);

/// Closed-form relaunch timing-error phase for equal relaunches
/// (impulse a*tau), common offset sum_tau = dtau1 + dtau2 and differential
/// offset delta_tau = dtau2 - dtau1:
///   (5/4) k a tau (sum_tau (alpha2 - alpha1)/2 + delta_tau (alpha2 + alpha1)/2)
double timing_error_phase(double wave_number, double acceleration, double duration, double sum_tau,
                          double delta_tau, double alpha1, double alpha2);

} // namespace aigw
