#include "aigw/core/config.hpp"
#include "aigw/errors.hpp"
#include "aigw/trajectory.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace aigw;

namespace {

constexpr double T = 0.26;
constexpr double g = 9.81;
const double k = BeamSplitterSpec{}.wave_number();

// Independent integration of y'' = a_h(t) with a fixed-step midpoint rule,
// stepping exactly onto the window edges.
double integrate_position(double y0, double v0, const RelaunchSpec &r1, const RelaunchSpec &r2, double t_end) {
  struct Window {
    double start, end, accel;
  };
  const Window w[] = {{1.8 * T - 0.5 * r1.duration + r1.timing_offset, 0, r1.tilt * r1.acceleration},
                      {4.2 * T - 0.5 * r2.duration + r2.timing_offset, 0, r2.tilt * r2.acceleration}};
  std::vector<std::pair<double, double>> pieces; // (end time, accel)
  pieces.push_back({w[0].start, 0.0});
  pieces.push_back({w[0].start + r1.duration, w[0].accel});
  pieces.push_back({w[1].start, 0.0});
  pieces.push_back({w[1].start + r2.duration, w[1].accel});
  pieces.push_back({6.0 * T, 0.0});
  long double y = y0, v = v0, t = 0.0;
  for (const auto &[end, a] : pieces) {
    const long double stop = std::min<long double>(end, t_end);
    const int steps = 64;
    const long double h = (stop - t) / steps;
    if (h <= 0)
      continue;
    for (int i = 0; i < steps; ++i) {
      y += h * (v + 0.5L * h * a);
      v += h * a;
    }
    t = stop;
  }
  return static_cast<double>(y);
}

} // namespace

TEST_CASE("untilted relaunches leave linear motion") {
  const auto r = RelaunchSpec::folded(T, g);
  const auto traj = build_mean_trajectory(1e-3, 2e-4, {r, r}, T);
  REQUIRE(traj.segments().size() == 5);
  for (double t : {0.0, 0.1, 0.47, 0.5, 1.0, 1.09, 1.3, 1.56})
    CHECK(static_cast<double>(traj.position(t)) == doctest::Approx(1e-3 + 2e-4 * t).epsilon(1e-15));
  CHECK(ftl_phase_from_trajectory(traj, k, T) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("relaunch impulse is (5/2) g T") {
  const auto r = RelaunchSpec::folded(T, g, 0.015);
  CHECK(r.impulse() == doctest::Approx(2.5 * g * T).epsilon(1e-15));
  CHECK(r.acceleration == doctest::Approx(2.5 * g * T / 0.015));
  CHECK_THROWS_AS(RelaunchSpec::folded(T, g, 0.0), InvalidParameter);
}

TEST_CASE("free flight after the first relaunch has slope alpha1 a tau") {
  auto r1 = RelaunchSpec::folded(T, g, 0.015, 1e-9);
  const auto r2 = RelaunchSpec::folded(T, g);
  const auto traj = build_mean_trajectory(0.0, 0.0, {r1, r2}, T);
  const auto &s = traj.segments()[2];
  CHECK(s.coeffs[2] == 0.0L);
  CHECK(static_cast<double>(s.coeffs[1]) == doctest::Approx(1e-9 * r1.impulse()).epsilon(1e-14));
}

TEST_CASE("segments are continuous for random parameters") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-1e-6, 1e-6), dt(-1e-6, 1e-6), y(-1e-3, 1e-3);
  for (int i = 0; i < 200; ++i) {
    const auto r1 = RelaunchSpec::folded(T, g, 0.015, angle(rng), dt(rng));
    const auto r2 = RelaunchSpec::folded(T, g, 0.015, angle(rng), dt(rng));
    const auto traj = build_mean_trajectory(y(rng), y(rng), {r1, r2}, T);
    const auto &seg = traj.segments();
    for (std::size_t j = 1; j < seg.size(); ++j) {
      CHECK(std::abs(static_cast<double>(seg[j - 1].position(seg[j].start) - seg[j].coeffs[0])) < 1e-15);
      CHECK(std::abs(static_cast<double>(seg[j - 1].velocity(seg[j].start) - seg[j].coeffs[1])) < 1e-15);
    }
  }
}

TEST_CASE("positions agree with direct integration") {
  const auto r1 = RelaunchSpec::folded(T, g, 0.015, 3e-7, 2e-7);
  const auto r2 = RelaunchSpec::folded(T, g, 0.02, -5e-7, -4e-7);
  const auto traj = build_mean_trajectory(2e-4, -1e-5, {r1, r2}, T);
  for (double t : {0.2, 0.465, 0.47, 0.6, 1.09, 1.1, 1.3, 1.56}) {
    const double expect = integrate_position(2e-4, -1e-5, r1, r2, t);
    CHECK(static_cast<double>(traj.position(t)) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("equal tilts with exact timing give no phase") {
  const auto r = RelaunchSpec::folded(T, g, 0.015, 4e-9);
  CHECK(std::abs(ftl_phase_from_trajectory(build_mean_trajectory(0.0, 0.0, {r, r}, T), k, T)) < 1e-18);
}

TEST_CASE("single timing error on a tilted second relaunch") {
  // alpha1 = 0, alpha2 = 1 nrad, dtau2 = 10 ns: (5/4) k alpha2 a tau dtau2.
  const auto r1 = RelaunchSpec::folded(T, g);
  const auto r2 = RelaunchSpec::folded(T, g, 0.015, 1e-9, 1e-8);
  const double traj_phase = ftl_phase_from_trajectory(build_mean_trajectory(0.0, 0.0, {r1, r2}, T), k, T);
  const double expect = 1.25 * k * 1e-9 * 2.5 * g * T * 1e-8;
  CHECK(expect == doctest::Approx(1.284e-6).epsilon(1e-3));
  CHECK(traj_phase == doctest::Approx(expect).epsilon(1e-10));
  CHECK(timing_error_phase(k, r2.acceleration, r2.duration, 1e-8, 1e-8, 0.0, 1e-9) ==
        doctest::Approx(traj_phase).epsilon(1e-10));
}

TEST_CASE("timing-error phase examples") {
  const double atau = 2.5 * g * T;
  const double tau = 0.015;
  CHECK(timing_error_phase(k, atau / tau, tau, 0.0, 0.0, 1e-9, 2e-9) == 0.0);
  const double common = timing_error_phase(k, atau / tau, tau, 1e-8, 0.0, -0.5e-9, 0.5e-9);
  CHECK(common == doctest::Approx(6.42e-7).epsilon(2e-3));
  const double differential = timing_error_phase(k, atau / tau, tau, 0.0, 1e-8, 0.5e-9, 0.5e-9);
  CHECK(differential == doctest::Approx(common).epsilon(1e-14));
  CHECK_THROWS_AS(timing_error_phase(k, 1.0, 0.0, 1e-8, 0.0, 0.0, 1e-9), InvalidParameter);
}

TEST_CASE("closed form matches the trajectory on random draws") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(-1e-6, 1e-6), dt(-1e-6, 1e-6);
  for (int i = 0; i < 1000; ++i) {
    const double a1 = angle(rng), a2 = angle(rng), d1 = dt(rng), d2 = dt(rng);
    const auto r1 = RelaunchSpec::folded(T, g, 0.015, a1, d1);
    const auto r2 = RelaunchSpec::folded(T, g, 0.015, a2, d2);
    const double traj = ftl_phase_from_trajectory(build_mean_trajectory(0.0, 0.0, {r1, r2}, T), k, T);
    const double closed = timing_error_phase(k, r1.acceleration, r1.duration, d1 + d2, d2 - d1, a1, a2);
    CHECK(std::abs(traj - closed) <= std::max(1e-9 * std::abs(closed), 1e-15));
  }
}

TEST_CASE("invalid trajectories") {
  const auto r = RelaunchSpec::folded(T, g);
  CHECK_THROWS_AS(build_mean_trajectory(0.0, 0.0, {r, r}, 0.0), InvalidParameter);
  auto late = RelaunchSpec::folded(T, g, 0.015, 0.0, 2.5 * T);
  CHECK_THROWS_AS(build_mean_trajectory(0.0, 0.0, {late, r}, T), InvalidParameter);
  const auto traj = build_mean_trajectory(0.0, 0.0, {r, r}, T);
  CHECK_THROWS_AS(traj.position(-0.1L), InvalidParameter);
  CHECK_THROWS_AS(traj.position(6.0L * T + 0.1L), InvalidParameter);
  CHECK_THROWS_AS(traj.sample(1), InvalidParameter);
  CHECK(traj.sample(3).back().first == doctest::Approx(6.0 * T));
}
