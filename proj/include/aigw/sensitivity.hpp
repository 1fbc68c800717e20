#pragma once

#include "aigw/core/config.hpp"
#include "aigw/core/sequence.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aigw {

enum class CurveUnits { strain, rad, m, m_per_s2 };

std::string_view to_string(CurveUnits u) noexcept;

/// One-sided amplitude spectral density on a strictly increasing grid.
/// Values are non-negative; +inf marks a response zero.
class NoiseCurve {
public:
  NoiseCurve() = default;
  /// Throws InvalidParameter on a bad grid, length mismatch, or negative/NaN values.
  NoiseCurve(std::vector<double> frequencies, std::vector<double> asd, CurveUnits units, std::string label);

  const std::vector<double> &frequencies() const noexcept { return frequencies_; }
  const std::vector<double> &asd() const noexcept { return asd_; }
  CurveUnits units() const noexcept { return units_; }
  const std::string &label() const noexcept { return label_; }
  std::size_t size() const noexcept { return asd_.size(); }

  bool covers(double f) const noexcept;
  bool covers(std::span<const double> grid) const noexcept;
  /// Log-log interpolation. Throws CoverageError outside the sampled range.
  double at(double f) const;
  /// Throws CoverageError unless the whole grid lies inside the curve.
  NoiseCurve resample(std::span<const double> grid) const;
  NoiseCurve relabeled(std::string label) const;
  NoiseCurve scaled(double factor) const;

  friend bool operator==(const NoiseCurve &, const NoiseCurve &) = default;

private:
  std::vector<double> frequencies_;
  std::vector<double> asd_;
  CurveUnits units_ = CurveUnits::strain;
  std::string label_;
};

/// Grid points not above the interrogation Nyquist frequency shot_rate / 2.
std::vector<double> truncate_to_nyquist(std::span<const double> grid, double shot_rate);

/// Phase-noise ASD of one interferometer channel, including the sqrt(2) for
/// uncorrelated arms when config.differential_arms is set.
double channel_phase_asd(const DetectorConfig &config, double shot_rate);

/// Shot-noise-limited strain ASD: channel phase noise / |strain response|.
/// The grid must lie in (0, shot_rate/2]; response zeros give +inf.
NoiseCurve intrinsic_strain_asd(const PulseSequence &seq, const DetectorConfig &config,
                                std::span<const double> grid);

/// Combines one channel per config.interleave_T as 1/h^2 = sum 1/h_T^2.
/// With config.split_interleave_flux each channel runs at shot_rate / channels.
NoiseCurve interleaved_strain_asd(const DetectorConfig &config, Geometry geometry,
                                  std::span<const double> grid);

/// Intrinsic ASD of the 3n-loop sequence. With `rate_adjusted`, the channel
/// rate is scaled by (6T + dead) / (6nT + dead) so that n = 1 reproduces the
/// broadband folded triple loop.
NoiseCurve resonant_strain_asd(double T, int n, const DetectorConfig &config, std::span<const double> grid,
                               bool rate_adjusted = true);

/// Strain-equivalent ASD of residual retroreflector motion:
///   |mirror response| |1 - exp(-i 2 pi f 2L/c)| x(f) / |strain response|.
/// `isolation` must be in metres and cover the grid.
NoiseCurve mirror_vibration_strain_asd(const PulseSequence &seq, const DetectorConfig &config,
                                       const NoiseCurve &isolation, std::span<const double> grid);

struct SensitivityBreakdown {
  NoiseCurve total;
  std::vector<NoiseCurve> components;
  std::vector<NoiseCurve> overlays;
  std::vector<std::string> omissions;
};

/// Quadrature sum of strain components on the first component's grid (the
/// others are resampled log-log). Overlays ride along without entering the
/// sum. Throws InvalidParameter for an empty component list and UnitError for
/// a non-strain component.
SensitivityBreakdown assemble_breakdown(const std::vector<NoiseCurve> &components,
                                        const std::vector<NoiseCurve> &overlays = {});

} // namespace aigw
