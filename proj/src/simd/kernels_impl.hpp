#pragma once

#include <span>

namespace aigw::simd {

namespace scalar {
void complex_horner(std::span<const double> coeffs, std::span<const double> base_re,
                    std::span<const double> base_im, std::span<double> out_re,
                    std::span<double> out_im);
void accumulate_squares(std::span<double> acc, std::span<const double> v);
void accumulate_inverse_squares(std::span<double> acc, std::span<const double> v);
} // namespace scalar

#if defined(AIGW_BUILD_AVX2)
namespace avx2 {
void complex_horner(std::span<const double> coeffs, std::span<const double> base_re,
                    std::span<const double> base_im, std::span<double> out_re,
                    std::span<double> out_im);
void accumulate_squares(std::span<double> acc, std::span<const double> v);
void accumulate_inverse_squares(std::span<double> acc, std::span<const double> v);
} // namespace avx2
#endif

} // namespace aigw::simd
