#include "aigw/sensitivity.hpp"

#include "aigw/budget.hpp"
#include "aigw/errors.hpp"
#include "aigw/grid.hpp"
#include "aigw/response.hpp"
#include "aigw/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aigw {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

void require_nyquist(std::span<const double> grid, double shot_rate) {
  require_frequency_grid(grid);
  if (grid.back() > 0.5 * shot_rate)
    throw InvalidParameter("frequency grid exceeds the interrogation Nyquist frequency " +
                           std::to_string(0.5 * shot_rate) + " Hz");
}

std::vector<double> response_magnitudes(const PulseSequence &seq, double arm_length,
                                        std::span<const double> grid) {
  const auto r = strain_response(seq, arm_length, grid);
  std::vector<double> mag(r.values.size());
  std::transform(r.values.begin(), r.values.end(), mag.begin(), [](auto v) { return std::abs(v); });
  return mag;
}

std::vector<double> strain_asd(double phase_asd, const std::vector<double> &magnitudes) {
  std::vector<double> out(magnitudes.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = magnitudes[i] > 0.0 ? phase_asd / magnitudes[i] : infinity;
  return out;
}

} // namespace

std::string_view to_string(CurveUnits u) noexcept {
  switch (u) {
  case CurveUnits::strain:
    return "strain";
  case CurveUnits::rad:
    return "rad";
  case CurveUnits::m:
    return "m";
  case CurveUnits::m_per_s2:
    return "m/s^2";
  }
  return "?";
}

NoiseCurve::NoiseCurve(std::vector<double> frequencies, std::vector<double> asd, CurveUnits units,
                       std::string label)
    : frequencies_(std::move(frequencies)), asd_(std::move(asd)), units_(units), label_(std::move(label)) {
  require_frequency_grid(frequencies_);
  if (frequencies_.size() != asd_.size())
    throw InvalidParameter("noise curve frequency and value counts differ");
  for (double v : asd_)
    if (!(v >= 0.0))
      throw InvalidParameter("noise curve values must be non-negative");
}

bool NoiseCurve::covers(double f) const noexcept {
  return !frequencies_.empty() && f >= frequencies_.front() && f <= frequencies_.back();
}

bool NoiseCurve::covers(std::span<const double> grid) const noexcept {
  return !grid.empty() && covers(grid.front()) && covers(grid.back());
}

double NoiseCurve::at(double f) const {
  if (!covers(f))
    throw CoverageError("curve '" + label_ + "' does not cover " + std::to_string(f) + " Hz");
  const auto hi = std::lower_bound(frequencies_.begin(), frequencies_.end(), f);
  const auto j = static_cast<std::size_t>(hi - frequencies_.begin());
  if (frequencies_[j] == f)
    return asd_[j];
  const double f0 = frequencies_[j - 1], f1 = frequencies_[j];
  const double a0 = asd_[j - 1], a1 = asd_[j];
  if (std::isinf(a0) || std::isinf(a1))
    return infinity;
  if (a0 == 0.0 || a1 == 0.0) // log-log undefined; fall back to linear
    return a0 + (a1 - a0) * (f - f0) / (f1 - f0);
  const double x = std::log(f / f0) / std::log(f1 / f0);
  return std::exp(std::log(a0) + x * std::log(a1 / a0));
}

NoiseCurve NoiseCurve::resample(std::span<const double> grid) const {
  require_frequency_grid(grid);
  if (!covers(grid))
    throw CoverageError("curve '" + label_ + "' does not cover the requested grid");
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    values[i] = at(grid[i]);
  return NoiseCurve({grid.begin(), grid.end()}, std::move(values), units_, label_);
}

NoiseCurve NoiseCurve::relabeled(std::string label) const {
  NoiseCurve c = *this;
  c.label_ = std::move(label);
  return c;
}

NoiseCurve NoiseCurve::scaled(double factor) const {
  if (!(factor >= 0.0))
    throw InvalidParameter("curve scale factor must be >= 0");
  NoiseCurve c = *this;
  for (auto &v : c.asd_)
    v *= factor;
  return c;
}

std::vector<double> truncate_to_nyquist(std::span<const double> grid, double shot_rate) {
  std::vector<double> out;
  for (double f : grid)
    if (f <= 0.5 * shot_rate)
      out.push_back(f);
  return out;
}

double channel_phase_asd(const DetectorConfig &config, double shot_rate) {
  const double asd = detection_phase_asd(config.source.atoms_per_shot, shot_rate, config.source.squeezing_db);
  return config.differential_arms ? std::sqrt(2.0) * asd : asd;
}

NoiseCurve intrinsic_strain_asd(const PulseSequence &seq, const DetectorConfig &config,
                                std::span<const double> grid) {
  config.validate();
  require_nyquist(grid, config.source.shot_rate);
  const double phase = channel_phase_asd(config, config.source.shot_rate);
  return NoiseCurve({grid.begin(), grid.end()}, strain_asd(phase, response_magnitudes(seq, config.arm_length, grid)),
                    CurveUnits::strain, "intrinsic_" + seq.label());
}

NoiseCurve interleaved_strain_asd(const DetectorConfig &config, Geometry geometry,
                                  std::span<const double> grid) {
  if (config.interleave_T.empty())
    throw InvalidParameter("interleaved operation needs at least one T value");
  config.validate();
  require_nyquist(grid, config.source.shot_rate);

  const double channels = static_cast<double>(config.interleave_T.size());
  const double rate = config.split_interleave_flux ? config.source.shot_rate / channels : config.source.shot_rate;
  const double phase = channel_phase_asd(config, rate);
  const auto &k = simd::kernels();

  std::vector<double> inverse_power(grid.size(), 0.0);
  for (double T : config.interleave_T) {
    const auto seq = build_sequence(geometry, T, config.splitter);
    const auto h = strain_asd(phase, response_magnitudes(seq, config.arm_length, grid));
    k.accumulate_inverse_squares(inverse_power, h);
  }
  std::vector<double> combined(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    combined[i] = inverse_power[i] > 0.0 ? 1.0 / std::sqrt(inverse_power[i]) : infinity;
  return NoiseCurve({grid.begin(), grid.end()}, std::move(combined), CurveUnits::strain,
                    "interleaved_" + std::string(to_string(geometry)));
}

NoiseCurve resonant_strain_asd(double T, int n, const DetectorConfig &config, std::span<const double> grid,
                               bool rate_adjusted) {
  config.validate();
  require_nyquist(grid, config.source.shot_rate);
  const auto seq = build_resonant_sequence(T, n, config.splitter);
  double rate = config.source.shot_rate;
  if (rate_adjusted)
    rate *= (6.0 * T + config.resonant_dead_time) / (6.0 * n * T + config.resonant_dead_time);
  const double phase = channel_phase_asd(config, rate);
  return NoiseCurve({grid.begin(), grid.end()}, strain_asd(phase, response_magnitudes(seq, config.arm_length, grid)),
                    CurveUnits::strain, "resonant_n" + std::to_string(n));
}

NoiseCurve mirror_vibration_strain_asd(const PulseSequence &seq, const DetectorConfig &config,
                                       const NoiseCurve &isolation, std::span<const double> grid) {
  if (isolation.units() != CurveUnits::m)
    throw UnitError("mirror isolation curve '" + isolation.label() + "' must be a displacement ASD in m, got " +
                    std::string(to_string(isolation.units())));
  require_frequency_grid(grid);
  if (!isolation.covers(grid))
    throw CoverageError("mirror isolation curve '" + isolation.label() + "' does not cover the frequency grid");

  const auto mirror = mirror_displacement_response(seq, grid);
  const auto strain = strain_response(seq, config.arm_length, grid);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double delay = std::abs(differential_arm_factor(grid[i], config.arm_length, config.constants.speed_of_light));
    const double s = std::abs(strain.values[i]);
    // mirror/strain response is exactly 1/L; use it where both vanish
    const double transfer = s > 0.0 ? std::abs(mirror.values[i]) / s : 1.0 / config.arm_length;
    values[i] = transfer * delay * isolation.at(grid[i]);
  }
  return NoiseCurve({grid.begin(), grid.end()}, std::move(values), CurveUnits::strain, "mirror_vibration");
}

SensitivityBreakdown assemble_breakdown(const std::vector<NoiseCurve> &components,
                                        const std::vector<NoiseCurve> &overlays) {
  if (components.empty())
    throw InvalidParameter("a sensitivity breakdown needs at least one component");
  for (const auto &c : components)
    if (c.units() != CurveUnits::strain)
      throw UnitError("component '" + c.label() + "' is not a strain ASD");

  const auto &grid = components.front().frequencies();
  SensitivityBreakdown out;
  out.components.reserve(components.size());
  for (const auto &c : components)
    out.components.push_back(c.frequencies() == grid ? c : c.resample(grid));

  std::vector<double> power(grid.size(), 0.0);
  const auto &k = simd::kernels();
  for (const auto &c : out.components)
    k.accumulate_squares(power, c.asd());
  for (auto &p : power)
    p = std::sqrt(p);
  out.total = NoiseCurve(grid, std::move(power), CurveUnits::strain, "total");
  out.overlays = overlays;
  return out;
}

} // namespace aigw
