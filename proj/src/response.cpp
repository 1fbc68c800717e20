#include "aigw/response.hpp"

#include "aigw/errors.hpp"
#include "aigw/grid.hpp"
#include "aigw/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace aigw {

namespace {

__extension__ typedef __int128 i128;

constexpr double two_pi = 2.0 * std::numbers::pi;
// Largest |theta| * n_max served by the shifted expansion.
constexpr double shifted_reach = 2.0;
// Shifted terms kept beyond the first nonvanishing one; reach^40/40! ~ 1e-36.
constexpr std::size_t shifted_terms = 48;
constexpr std::int64_t max_quanta = 1 << 20;

void require_frequency(double f) {
  if (!(std::isfinite(f) && f > 0.0))
    throw InvalidParameter("frequency must be finite and > 0 (got " + std::to_string(f) + " Hz)");
}

// Fractional part of f*dt in [-1/2, 1/2]. The subtraction is exact, so every
// evaluator that reduces the same product sees the same phase.
double reduced_cycles(double f, double dt) {
  const double p = f * dt;
  return p - std::nearbyint(p);
}

bool mul_overflows(i128 a, i128 b, i128 &out) { return __builtin_mul_overflow(a, b, &out); }

// beta_m = sum_n a_n C(n, m) / scale, computed exactly while it fits in 128
// bits. Returns false on overflow.
bool exact_shifted(const std::vector<std::int64_t> &scaled, std::int64_t scale, std::size_t terms,
                   std::vector<double> &out) {
  out.assign(terms, 0.0);
  for (std::size_t m = 0; m < terms; ++m) {
    i128 sum = 0;
    i128 binom = 1; // C(n, m) for n = m
    for (std::size_t n = m; n < scaled.size(); ++n) {
      if (n > m) {
        // C(n, m) = C(n-1, m) * n / (n - m)
        i128 next;
        if (mul_overflows(binom, static_cast<i128>(n), next))
          return false;
        binom = next / static_cast<i128>(n - m);
      }
      i128 term;
      if (mul_overflows(binom, static_cast<i128>(scaled[n]), term) || __builtin_add_overflow(sum, term, &sum))
        return false;
    }
    out[m] = static_cast<double>(static_cast<long double>(sum) / static_cast<long double>(scale));
  }
  return true;
}

} // namespace

ResponseKernel::ResponseKernel(const PulseSequence &seq) {
  const auto &events = seq.events();
  std::int64_t time_den = 1, weight_den = 1;
  for (const auto &e : events) {
    time_den = std::lcm(time_den, e.offset.den());
    weight_den = std::lcm(weight_den, e.weight.den());
  }
  const Rational origin = events.front().offset;
  const Rational last = (events.back().offset - origin) * Rational(time_den);
  if (last.den() != 1 || last.num() > max_quanta)
    throw InvalidParameter("pulse sequence too long for the response kernel");

  quantum_ = seq.pulse_separation() / static_cast<double>(time_den);
  const auto n_max = static_cast<std::size_t>(last.num());

  std::vector<std::int64_t> scaled(n_max + 1, 0);
  for (const auto &e : events) {
    const Rational slot = (e.offset - origin) * Rational(time_den);
    const Rational w = e.weight * Rational(weight_den);
    scaled[static_cast<std::size_t>(slot.num())] += w.num();
  }
  power_.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
    power_[n] = static_cast<double>(scaled[n]) / static_cast<double>(weight_den);

  const std::size_t vanishing = seq.vanishing_moments();
  const std::size_t terms = std::min(n_max + 1, vanishing + shifted_terms);
  if (!exact_shifted(scaled, weight_den, terms, shifted_)) {
    // Extended-precision fallback; the vanishing coefficients are zero by
    // the exact moment test regardless of rounding here.
    shifted_.assign(terms, 0.0);
    for (std::size_t m = vanishing; m < terms; ++m) {
      long double sum = 0.0L;
      for (std::size_t n = m; n <= n_max; ++n) {
        long double binom = 1.0L;
        for (std::size_t j = 1; j <= m; ++j)
          binom = binom * static_cast<long double>(n - m + j) / static_cast<long double>(j);
        sum += binom * static_cast<long double>(power_[n]);
      }
      shifted_[m] = static_cast<double>(sum);
    }
  }
  crossover_ = n_max == 0 ? 0.0 : shifted_reach / static_cast<double>(n_max);
}

void ResponseKernel::evaluate(std::span<const double> frequencies,
                              std::span<std::complex<double>> out) const {
  const std::size_t count = frequencies.size();
  if (out.size() != count)
    throw InvalidParameter("response output span has the wrong length");

  std::vector<std::size_t> low, high;
  low.reserve(count);
  high.reserve(count);
  std::vector<double> low_re, low_im, high_re, high_im;
  for (std::size_t i = 0; i < count; ++i) {
    require_frequency(frequencies[i]);
    const double theta = two_pi * reduced_cycles(frequencies[i], quantum_);
    if (std::abs(theta) <= crossover_) {
      const double s = std::sin(0.5 * theta);
      low.push_back(i);
      low_re.push_back(-2.0 * s * s);
      low_im.push_back(std::sin(theta));
    } else {
      high.push_back(i);
      high_re.push_back(std::cos(theta));
      high_im.push_back(std::sin(theta));
    }
  }

  const auto &k = simd::kernels();
  auto run = [&](const std::vector<double> &coeffs, const std::vector<std::size_t> &index,
                 std::vector<double> &re, std::vector<double> &im) {
    if (index.empty())
      return;
    std::vector<double> res_re(index.size()), res_im(index.size());
    k.complex_horner(coeffs, re, im, res_re, res_im);
    for (std::size_t j = 0; j < index.size(); ++j)
      out[index[j]] = {res_re[j], res_im[j]};
  };
  run(shifted_, low, low_re, low_im);
  run(power_, high, high_re, high_im);
}

std::complex<double> ResponseKernel::operator()(double f) const {
  std::complex<double> out;
  evaluate(std::span<const double>(&f, 1), std::span<std::complex<double>>(&out, 1));
  return out;
}

std::complex<double> strain_response(const PulseSequence &seq, double arm_length, double f) {
  if (!(std::isfinite(arm_length) && arm_length > 0.0))
    throw InvalidParameter("arm length must be > 0");
  return seq.wave_number() * arm_length * ResponseKernel(seq)(f);
}

PhaseResponse strain_response(const PulseSequence &seq, double arm_length,
                              std::span<const double> frequencies) {
  if (!(std::isfinite(arm_length) && arm_length > 0.0))
    throw InvalidParameter("arm length must be > 0");
  require_frequency_grid(frequencies);
  PhaseResponse r{{frequencies.begin(), frequencies.end()}, std::vector<std::complex<double>>(frequencies.size()),
                  ResponseKind::strain};
  ResponseKernel(seq).evaluate(frequencies, r.values);
  const double scale = seq.wave_number() * arm_length;
  for (auto &v : r.values)
    v *= scale;
  return r;
}

double strain_response_closed_form(Geometry geometry, double wave_number, double arm_length,
                                   double T, double f) {
  require_frequency(f);
  if (!(T > 0.0))
    throw InvalidParameter("pulse separation must be > 0");
  const double kl = wave_number * arm_length;
  const double r = reduced_cycles(f, T);
  const double s = std::sin(std::numbers::pi * r);
  switch (geometry) {
  case Geometry::single_loop:
    return -4.0 * kl * s * s;
  case Geometry::folded_triple_loop:
    return 4.0 * kl * s * s * s * s * (8.0 * std::cos(two_pi * r) + 7.0);
  }
  throw InvalidParameter("unknown geometry");
}

std::complex<double> mirror_displacement_response(const PulseSequence &seq, double f) {
  return seq.wave_number() * ResponseKernel(seq)(f);
}

PhaseResponse mirror_displacement_response(const PulseSequence &seq,
                                           std::span<const double> frequencies) {
  require_frequency_grid(frequencies);
  PhaseResponse r{{frequencies.begin(), frequencies.end()}, std::vector<std::complex<double>>(frequencies.size()),
                  ResponseKind::mirror_displacement};
  ResponseKernel(seq).evaluate(frequencies, r.values);
  for (auto &v : r.values)
    v *= seq.wave_number();
  return r;
}

std::complex<double> differential_arm_factor(double f, double arm_length, double speed_of_light) {
  require_frequency(f);
  if (!(arm_length > 0.0 && speed_of_light > 0.0))
    throw InvalidParameter("arm length and speed of light must be > 0");
  const double phase = two_pi * f * 2.0 * arm_length / speed_of_light;
  const double s = std::sin(0.5 * phase);
  return {2.0 * s * s, std::sin(phase)};
}

Resonance find_resonance(const PulseSequence &seq, double arm_length, double f_lo, double f_hi,
                         std::size_t points) {
  const auto grid = log_grid(f_lo, f_hi, points);
  const ResponseKernel kernel(seq);
  std::vector<std::complex<double>> values(grid.size());
  kernel.evaluate(grid, values);
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (std::abs(values[i]) > std::abs(values[best]))
      best = i;

  // Golden-section refinement between the neighbouring grid points.
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(best + 1, grid.size() - 1)];
  auto mag = [&](double f) { return std::abs(kernel(f)); };
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = mag(c), fd = mag(d);
  for (int it = 0; it < 80 && (b - a) > 1e-14 * b; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = mag(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = mag(d);
    }
  }
  double f_peak = 0.5 * (a + b);
  double m_peak = mag(f_peak);
  if (std::abs(values[best]) > m_peak) {
    f_peak = grid[best];
    m_peak = std::abs(values[best]);
  }
  return {f_peak, seq.wave_number() * arm_length * m_peak};
}

} // namespace aigw
