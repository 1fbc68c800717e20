#include "aigw/core/sequence.hpp"

#include "aigw/errors.hpp"

#include <cmath>
#include <map>

namespace aigw {

namespace {

void require_T(double T) {
  if (!(std::isfinite(T) && T > 0.0))
    throw InvalidParameter("pulse separation T must be finite and > 0 (got " + std::to_string(T) + ")");
}

Rational power(Rational base, unsigned order) {
  Rational out(1);
  for (unsigned i = 0; i < order; ++i)
    out = out * base;
  return out;
}

std::vector<PulseEvent> make_events(double T, std::initializer_list<std::pair<Rational, Rational>> list) {
  std::vector<PulseEvent> out;
  out.reserve(list.size());
  for (const auto &[offset, weight] : list)
    out.push_back({offset, weight, offset.value() * T});
  return out;
}

} // namespace

PulseSequence::PulseSequence(std::string label, double pulse_separation, double wave_number,
                             std::vector<PulseEvent> events, std::vector<double> relaunch_times)
    : label_(std::move(label)), pulse_separation_(pulse_separation), wave_number_(wave_number),
      events_(std::move(events)), relaunch_times_(std::move(relaunch_times)) {
  require_T(pulse_separation_);
  if (!(std::isfinite(wave_number_) && wave_number_ > 0.0))
    throw InvalidParameter("wave number must be finite and > 0");
  if (events_.empty())
    throw InvalidParameter("pulse sequence needs at least one event");
  for (std::size_t i = 1; i < events_.size(); ++i)
    if (!(events_[i - 1].offset < events_[i].offset))
      throw InvalidParameter("pulse times must be strictly increasing");
}

Rational PulseSequence::weight_moment(unsigned order) const {
  Rational sum;
  for (const auto &e : events_)
    sum += e.weight * power(e.offset, order);
  return sum;
}

double PulseSequence::moment(unsigned order) const {
  double sum = 0.0;
  for (const auto &e : events_)
    sum += e.weight.value() * std::pow(e.time, static_cast<double>(order));
  return sum;
}

unsigned PulseSequence::vanishing_moments() const {
  unsigned order = 0;
  // A nonzero weight vector with m pulses cannot annihilate m moments.
  while (order < events_.size() && weight_moment(order).is_zero())
    ++order;
  return order;
}

PulseSequence build_single_loop(double T, const BeamSplitterSpec &splitter) {
  require_T(T);
  return PulseSequence("single_loop", T, splitter.wave_number(),
                       make_events(T, {{Rational(0), Rational(1)},
                                       {Rational(1), Rational(-2)},
                                       {Rational(2), Rational(1)}}));
}

PulseSequence build_folded_triple_loop(double T, const BeamSplitterSpec &splitter) {
  require_T(T);
  return PulseSequence("folded_triple_loop", T, splitter.wave_number(),
                       make_events(T, {{Rational(0), Rational(1)},
                                       {Rational(1), Rational(-9, 4)},
                                       {Rational(3), Rational(5, 2)},
                                       {Rational(5), Rational(-9, 4)},
                                       {Rational(6), Rational(1)}}),
                       {Rational(9, 5).value() * T, Rational(21, 5).value() * T});
}

PulseSequence build_resonant_sequence(double T, int n, const BeamSplitterSpec &splitter) {
  require_T(T);
  if (n < 1)
    throw InvalidParameter("resonant sequence needs n >= 1 (got " + std::to_string(n) + ")");
  const PulseSequence unit = build_folded_triple_loop(T, splitter);
  if (n == 1)
    return unit;

  std::map<Rational, Rational> merged;
  std::vector<double> relaunches;
  for (int m = 0; m < n; ++m) {
    const Rational shift(6 * static_cast<std::int64_t>(m));
    for (const auto &e : unit.events())
      merged[e.offset + shift] += e.weight;
    for (const Rational r : {Rational(9, 5), Rational(21, 5)})
      relaunches.push_back((r + shift).value() * T);
  }
  std::vector<PulseEvent> events;
  events.reserve(merged.size());
  for (const auto &[offset, weight] : merged)
    if (!weight.is_zero())
      events.push_back({offset, weight, offset.value() * T});

  return PulseSequence("resonant_" + std::to_string(3 * n) + "_loop", T, splitter.wave_number(),
                       std::move(events), std::move(relaunches));
}

PulseSequence build_sequence(Geometry geometry, double T, const BeamSplitterSpec &splitter) {
  return geometry == Geometry::single_loop ? build_single_loop(T, splitter)
                                           : build_folded_triple_loop(T, splitter);
}

} // namespace aigw
