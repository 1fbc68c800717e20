#pragma once

#include "aigw/core/config.hpp"
#include "aigw/core/sequence.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace aigw {

enum class ResponseKind { strain, mirror_displacement };

/// Complex response versus frequency: rad per unit strain, or rad per metre
/// of retroreflector displacement.
struct PhaseResponse {
  std::vector<double> frequencies;
  std::vector<std::complex<double>> values;
  ResponseKind kind = ResponseKind::strain;
};

/// The weighted phasor sum  S(f) = sum_j w_j exp(i 2 pi f t_j)  of a pulse
/// sequence, precomputed for repeated evaluation.
///
/// Pulse times are integer multiples of a quantum dt, so S is a polynomial in
/// z = exp(i theta), theta = 2 pi f dt reduced to [-pi, pi]. Away from z = 1
/// S is evaluated by Horner in z. Near z = 1, where the closure moments make
/// S cancel to O(theta^M), the same polynomial is re-expanded in u = z - 1
/// with exact integer coefficients; the first M of them vanish identically,
/// which keeps full relative precision down to f -> 0 and around every
/// f dt close to an integer.
class ResponseKernel {
public:
  explicit ResponseKernel(const PulseSequence &seq);

  std::complex<double> operator()(double f) const;
  void evaluate(std::span<const double> frequencies, std::span<std::complex<double>> out) const;

  double time_quantum() const noexcept { return quantum_; }
  /// Dense polynomial coefficients in z (index = pulse time / quantum).
  const std::vector<double> &power_coefficients() const noexcept { return power_; }
  /// Coefficients in u = z - 1, possibly truncated (see crossover()).
  const std::vector<double> &shifted_coefficients() const noexcept { return shifted_; }
  /// Reduced phase step |theta| up to which the shifted expansion is used.
  double crossover() const noexcept { return crossover_; }

private:
  double quantum_;
  std::vector<double> power_;
  std::vector<double> shifted_;
  double crossover_;
};

/// k L sum_j w_j exp(i 2 pi f t_j). Throws InvalidParameter for f <= 0.
std::complex<double> strain_response(const PulseSequence &seq, double arm_length, double f);
PhaseResponse strain_response(const PulseSequence &seq, double arm_length,
                              std::span<const double> frequencies);

/// Signed closed form: 2 k L (cos(2 pi f T) - 1) for the single loop and
/// (k L / 2)(5 - 9 cos(4 pi f T) + 4 cos(6 pi f T)) for the folded triple loop.
/// Both are evaluated through the exactly equivalent factorizations
///   -4 k L sin^2(pi f T)   and   4 k L sin^4(pi f T)(8 cos(2 pi f T) + 7)
/// which do not cancel at low frequency.
double strain_response_closed_form(Geometry geometry, double wave_number, double arm_length,
                                   double T, double f);

/// k sum_j w_j exp(i 2 pi f t_j): phase per metre of common mirror displacement.
std::complex<double> mirror_displacement_response(const PulseSequence &seq, double f);
PhaseResponse mirror_displacement_response(const PulseSequence &seq,
                                           std::span<const double> frequencies);

/// 1 - exp(-i 2 pi f 2L/c): the light-travel delay between the two
/// interferometers of an arm turns a common mirror motion into a
/// differential signal.
std::complex<double> differential_arm_factor(double f, double arm_length, double speed_of_light);

struct Resonance {
  double frequency; // Hz
  double magnitude; // rad / strain
};

/// Frequency of the largest |strain_response| within [f_lo, f_hi].
Resonance find_resonance(const PulseSequence &seq, double arm_length, double f_lo, double f_hi,
                         std::size_t points = 20000);

} // namespace aigw
