#include "aigw/trajectory.hpp"

#include "aigw/errors.hpp"

#include <cmath>
#include <string>

namespace aigw {

RelaunchSpec RelaunchSpec::folded(double T, double gravity, double duration, double tilt,
                                  double timing_offset) {
  if (!(duration > 0.0))
    throw InvalidParameter("relaunch duration must be > 0");
  return {duration, 2.5 * gravity * T / duration, tilt, timing_offset};
}

MeanTrajectory::MeanTrajectory(std::vector<TrajectorySegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty())
    throw InvalidParameter("trajectory needs at least one segment");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (!(segments_[i].start < segments_[i].end))
      throw InvalidParameter("trajectory segment with non-positive duration");
    if (i > 0 && segments_[i].start != segments_[i - 1].end)
      throw InvalidParameter("trajectory segments must tile time without gaps");
  }
}

long double MeanTrajectory::position(long double t) const {
  if (!(t >= start() && t <= end()))
    throw InvalidParameter("trajectory does not cover t = " + std::to_string(static_cast<double>(t)) + " s");
  for (const auto &s : segments_)
    if (t <= s.end)
      return s.position(t);
  return segments_.back().position(t);
}

std::vector<std::pair<double, double>> MeanTrajectory::sample(std::size_t points) const {
  if (points < 2)
    throw InvalidParameter("trajectory sampling needs at least 2 points");
  std::vector<std::pair<double, double>> out;
  out.reserve(points);
  const long double span = end() - start();
  for (std::size_t i = 0; i < points; ++i) {
    const long double t = i + 1 == points ? end() : start() + span * i / static_cast<long double>(points - 1);
    out.emplace_back(static_cast<double>(t), static_cast<double>(position(t)));
  }
  return out;
}

MeanTrajectory build_mean_trajectory(double y0, double v0,
                                     const std::pair<RelaunchSpec, RelaunchSpec> &relaunches,
                                     double T) {
  if (!(std::isfinite(T) && T > 0.0))
    throw InvalidParameter("pulse separation T must be > 0");
  const auto &[r1, r2] = relaunches;
  for (const auto *r : {&r1, &r2})
    if (!(r->duration > 0.0) || !std::isfinite(r->acceleration) || !std::isfinite(r->tilt) ||
        !std::isfinite(r->timing_offset))
      throw InvalidParameter("relaunch needs a positive duration and finite parameters");

  const long double LT = T;
  const long double t1 = 1.8L * LT - 0.5L * r1.duration + r1.timing_offset;
  const long double t2 = t1 + r1.duration;
  const long double t3 = 4.2L * LT - 0.5L * r2.duration + r2.timing_offset;
  const long double t4 = t3 + r2.duration;
  const long double t_end = 6.0L * LT;
  if (!(t1 > 0.0L && t2 < t3 && t4 < t_end))
    throw InvalidParameter("relaunch windows must be ordered, non-overlapping and inside (0, 6T)");

  // Horizontal acceleration of each tilted relaunch.
  const long double acc1 = static_cast<long double>(r1.tilt) * r1.acceleration;
  const long double acc2 = static_cast<long double>(r2.tilt) * r2.acceleration;

  std::vector<TrajectorySegment> seg;
  seg.reserve(5);
  auto add = [&](long double start, long double end, long double accel) {
    long double y, v;
    if (seg.empty()) {
      y = y0;
      v = v0;
    } else {
      const auto &prev = seg.back();
      y = prev.position(start);
      v = prev.velocity(start);
    }
    seg.push_back({start, end, {y, v, 0.5L * accel}});
  };
  add(0.0L, t1, 0.0L);
  add(t1, t2, acc1);
  add(t2, t3, 0.0L);
  add(t3, t4, acc2);
  add(t4, t_end, 0.0L);
  return MeanTrajectory(std::move(seg));
}

double ftl_phase_from_trajectory(const MeanTrajectory &trajectory, double wave_number, double T) {
  const long double LT = T;
  const long double phase = trajectory.position(0.0L) - 2.25L * trajectory.position(LT) +
                            2.5L * trajectory.position(3.0L * LT) -
                            2.25L * trajectory.position(5.0L * LT) + trajectory.position(6.0L * LT);
  return static_cast<double>(wave_number * phase);
}

double timing_error_phase(double wave_number, double acceleration, double duration, double sum_tau,
                          double delta_tau, double alpha1, double alpha2) {
  if (!(duration > 0.0))
    throw InvalidParameter("relaunch duration must be > 0");
  return 1.25 * wave_number * acceleration * duration *
         (0.5 * sum_tau * (alpha2 - alpha1) + 0.5 * delta_tau * (alpha2 + alpha1));
}

} // namespace aigw
