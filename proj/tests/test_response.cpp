#include "aigw/errors.hpp"
#include "aigw/grid.hpp"
#include "aigw/response.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace aigw;

namespace {

constexpr long double two_pi_l = 2.0L * std::numbers::pi_v<long double>;

// Direct phasor sum in extended precision.
std::complex<long double> brute_force(const PulseSequence &seq, double f) {
  std::complex<long double> sum = 0.0L;
  for (const auto &e : seq.events()) {
    const long double phase = two_pi_l * f * static_cast<long double>(e.offset.value()) * seq.pulse_separation();
    sum += static_cast<long double>(e.weight.value()) * std::polar(1.0L, phase);
  }
  return sum;
}

// Taylor series sum_m (i w)^m M_m / m! with moments taken from the integer
// pulse offsets; accurate where the direct sum cancels.
std::complex<long double> moment_series(const PulseSequence &seq, double f) {
  const long double wT = two_pi_l * f * seq.pulse_separation();
  std::complex<long double> sum = 0.0L, factor = 1.0L;
  for (int m = 0; m < 60; ++m) {
    long double moment = 0.0L;
    for (const auto &e : seq.events())
      moment += static_cast<long double>(e.weight.value()) * std::pow(static_cast<long double>(e.offset.value()), m);
    sum += factor * moment;
    factor *= std::complex<long double>(0.0L, wT) / static_cast<long double>(m + 1);
  }
  return sum;
}

double rel(std::complex<double> a, std::complex<long double> b) {
  return static_cast<double>(std::abs(std::complex<long double>(a) - b) / std::abs(b));
}

const BeamSplitterSpec splitter;
const double k = splitter.wave_number();
constexpr double L = 1e4;
constexpr double T = 0.26;

} // namespace

TEST_CASE("single loop at fT = 1/2 gives 4kL") {
  const auto seq = build_single_loop(T, splitter);
  const double f = 0.5 / T;
  CHECK(std::abs(strain_response(seq, L, f)) == doctest::Approx(4.0 * k * L).epsilon(1e-14));
  CHECK(std::abs(strain_response_closed_form(Geometry::single_loop, k, L, T, f)) ==
        doctest::Approx(4.0 * k * L).epsilon(1e-14));
  CHECK(std::abs(mirror_displacement_response(seq, f)) == doctest::Approx(4.0 * k).epsilon(1e-14));
}

TEST_CASE("closed forms vanish at their zeros and at DC") {
  CHECK(strain_response_closed_form(Geometry::single_loop, k, L, T, 1.0 / T) == 0.0);
  CHECK(strain_response_closed_form(Geometry::single_loop, k, L, T, 3.0 / T) == doctest::Approx(0.0).epsilon(1e-30));
  const double tiny = std::abs(strain_response_closed_form(Geometry::folded_triple_loop, k, L, T, 1e-9));
  CHECK(tiny < 1e-9);
  CHECK(std::abs(strain_response(build_folded_triple_loop(T, splitter), L, 1e-9)) < 1e-9);
}

TEST_CASE("FTL peak over the band is about 1.26e15 rad/strain near wT = 1.8") {
  const auto seq = build_folded_triple_loop(T, splitter);
  const auto peak = find_resonance(seq, L, 0.3, 5.0);
  CHECK(peak.magnitude == doctest::Approx(0.5 * k * L * 15.625).epsilon(1e-6));
  CHECK(peak.magnitude == doctest::Approx(1.26e15).epsilon(0.01));
  CHECK(2.0 * std::numbers::pi * peak.frequency * T == doctest::Approx(1.82).epsilon(0.02));
}

TEST_CASE("kernel equals the generic weighted sum") {
  for (const auto &seq : {build_single_loop(T, splitter), build_folded_triple_loop(T, splitter),
                          build_resonant_sequence(T, 3, splitter), build_folded_triple_loop(0.182, splitter)}) {
    const ResponseKernel kernel(seq);
    double weight_sum = 0.0;
    for (const auto &e : seq.events())
      weight_sum += std::abs(e.weight.value());
    for (double f : log_grid(1e-4, 50.0, 1000)) {
      const bool near_closure = 2.0 * std::numbers::pi * f * seq.duration() < 1.0;
      const auto oracle = near_closure ? moment_series(seq, f) : brute_force(seq, f);
      // Near simple zeros away from DC, rounding of the phase argument in
      // double sets an absolute floor that no double evaluator beats.
      const double floor = near_closure ? 0.0 : 1e-14 * weight_sum * (1.0 + f * seq.duration());
      const double diff = static_cast<double>(std::abs(std::complex<long double>(kernel(f)) - oracle));
      INFO(seq.label(), " f = ", f);
      CHECK(diff <= 1e-12 * static_cast<double>(std::abs(oracle)) + floor);
    }
  }
}

TEST_CASE("closed form equals the kernel on a 1000-point grid") {
  for (Geometry g : {Geometry::single_loop, Geometry::folded_triple_loop}) {
    const auto grid = log_grid(1e-3, 1e2, 1000);
    const auto r = strain_response(build_sequence(g, T, splitter), L, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double closed = std::abs(strain_response_closed_form(g, k, L, T, grid[i]));
      const double kern = std::abs(r.values[i]);
      if (closed == 0.0 && kern == 0.0)
        continue;
      CHECK(std::abs(kern - closed) / closed < 1e-12);
    }
  }
}

TEST_CASE("kernel keeps relative precision near f*T integers") {
  const auto seq = build_folded_triple_loop(T, splitter);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> offset(-1e-4, 1e-4);
  for (int m = 1; m < 40; ++m) {
    const double f = (m + offset(rng)) / T;
    const double closed = std::abs(strain_response_closed_form(Geometry::folded_triple_loop, k, L, T, f));
    CHECK(std::abs(std::abs(strain_response(seq, L, f)) - closed) / closed < 1e-12);
  }
}

TEST_CASE("low-frequency roll-off follows the number of vanishing moments") {
  const double f1 = 1e-3, f2 = 2e-3;
  const double sl = std::log2(std::abs(strain_response(build_single_loop(T, splitter), L, f2)) /
                              std::abs(strain_response(build_single_loop(T, splitter), L, f1)));
  const double ftl = std::log2(std::abs(strain_response(build_folded_triple_loop(T, splitter), L, f2)) /
                               std::abs(strain_response(build_folded_triple_loop(T, splitter), L, f1)));
  CHECK(sl == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(ftl == doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("mirror response is the strain response divided by L") {
  const auto seq = build_folded_triple_loop(T, splitter);
  const double f = 0.5 / T;
  const auto direct = brute_force(seq, f);
  CHECK(rel(mirror_displacement_response(seq, f), direct * static_cast<long double>(k)) < 1e-13);
  CHECK(std::abs(mirror_displacement_response(seq, 1e-7)) < 1e-12 * k);
  const auto grid = log_grid(0.1, 3.0, 50);
  const auto m = mirror_displacement_response(seq, grid);
  const auto s = strain_response(seq, L, grid);
  CHECK(m.kind == ResponseKind::mirror_displacement);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(m.values[i] * L - s.values[i]) <= 1e-14 * std::abs(s.values[i]));
}

TEST_CASE("differential arm factor") {
  const double c = 299792458.0;
  const double delay = 2.0 * L / c;
  CHECK(delay == doctest::Approx(66.7e-6).epsilon(1e-3));
  const double f_small = 1e-3;
  CHECK(std::abs(differential_arm_factor(f_small, L, c)) ==
        doctest::Approx(2.0 * std::numbers::pi * f_small * delay).epsilon(1e-9));
  CHECK(std::abs(differential_arm_factor(1.0 / (2.0 * delay), L, c)) == doctest::Approx(2.0).epsilon(1e-12));
  const auto v = differential_arm_factor(123.0, L, c);
  const auto expected = 1.0 - std::polar(1.0, -2.0 * std::numbers::pi * 123.0 * delay);
  CHECK(std::abs(v - expected) < 1e-14);
}

TEST_CASE("precondition violations") {
  const auto seq = build_single_loop(T, splitter);
  CHECK_THROWS_AS(strain_response(seq, L, 0.0), InvalidParameter);
  CHECK_THROWS_AS(strain_response(seq, L, -1.0), InvalidParameter);
  CHECK_THROWS_AS(strain_response(seq, -L, 1.0), InvalidParameter);
  CHECK_THROWS_AS(strain_response_closed_form(Geometry::single_loop, k, L, T, 0.0), InvalidParameter);
  const std::vector<double> bad{1.0, 0.5};
  CHECK_THROWS_AS(strain_response(seq, L, bad), InvalidParameter);
  CHECK_THROWS_AS(differential_arm_factor(0.0, L, 3e8), InvalidParameter);
}
