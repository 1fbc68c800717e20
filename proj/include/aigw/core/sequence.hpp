#pragma once

#include "aigw/core/config.hpp"
#include "aigw/core/rational.hpp"

#include <string>
#include <vector>

namespace aigw {

/// One instantaneous light pulse.
struct PulseEvent {
  Rational offset; ///< pulse time in units of the pulse separation T
  Rational weight; ///< signed multiplier of the effective wave number k
  double time;     ///< s, relative to the first pulse

  friend bool operator==(const PulseEvent &, const PulseEvent &) = default;
};

/// Ordered light-pulse events defining an interferometer geometry. Immutable.
class PulseSequence {
public:
  /// Throws InvalidParameter unless offsets are strictly increasing and
  /// `pulse_separation`, `wave_number` are positive.
  PulseSequence(std::string label, double pulse_separation, double wave_number,
                std::vector<PulseEvent> events, std::vector<double> relaunch_times = {});

  const std::vector<PulseEvent> &events() const noexcept { return events_; }
  const std::vector<double> &relaunch_times() const noexcept { return relaunch_times_; }
  const std::string &label() const noexcept { return label_; }
  double pulse_separation() const noexcept { return pulse_separation_; }
  double wave_number() const noexcept { return wave_number_; }
  double duration() const noexcept { return events_.back().time - events_.front().time; }

  /// Exact sum of weight * offset^order (offset in units of T).
  Rational weight_moment(unsigned order) const;
  /// Sum of weight * time^order in s^order.
  double moment(unsigned order) const;
  /// Number of leading power moments (order 0, 1, ...) that vanish exactly.
  /// 2 for the single loop, 4 for the folded triple loop.
  unsigned vanishing_moments() const;

  friend bool operator==(const PulseSequence &, const PulseSequence &) = default;

private:
  std::string label_;
  double pulse_separation_;
  double wave_number_;
  std::vector<PulseEvent> events_;
  std::vector<double> relaunch_times_;
};

/// Pulses at (0, T, 2T) with weights (1, -2, 1).
PulseSequence build_single_loop(double T, const BeamSplitterSpec &splitter);

/// Pulses at (0, T, 3T, 5T, 6T) with weights (1, -9/4, 5/2, -9/4, 1) and
/// vertical relaunches at 9T/5 and 21T/5.
PulseSequence build_folded_triple_loop(double T, const BeamSplitterSpec &splitter);

/// 3n-loop narrow-band sequence: n folded triple-loop units of length 6T
/// back to back. The last pulse of each unit and the first pulse of the next
/// coincide and are merged into one pulse with the summed weight. Each unit
/// keeps its own pair of relaunches.
PulseSequence build_resonant_sequence(double T, int n, const BeamSplitterSpec &splitter);

PulseSequence build_sequence(Geometry geometry, double T, const BeamSplitterSpec &splitter);

} // namespace aigw
