#include "kernels_impl.hpp"

#include <cstddef>

namespace aigw::simd::scalar {

void complex_horner(std::span<const double> coeffs, std::span<const double> base_re,
                    std::span<const double> base_im, std::span<double> out_re,
                    std::span<double> out_im) {
  const std::size_t n = base_re.size();
  if (coeffs.empty()) {
    for (std::size_t i = 0; i < n; ++i)
      out_re[i] = out_im[i] = 0.0;
    return;
  }
  const std::size_t top = coeffs.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double br = base_re[i], bi = base_im[i];
    double ar = coeffs[top], ai = 0.0;
    for (std::size_t m = top; m-- > 0;) {
      const double nr = ar * br - ai * bi + coeffs[m];
      ai = ar * bi + ai * br;
      ar = nr;
    }
    out_re[i] = ar;
    out_im[i] = ai;
  }
}

void accumulate_squares(std::span<double> acc, std::span<const double> v) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    acc[i] += v[i] * v[i];
}

void accumulate_inverse_squares(std::span<double> acc, std::span<const double> v) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    acc[i] += 1.0 / (v[i] * v[i]);
}

} // namespace aigw::simd::scalar
