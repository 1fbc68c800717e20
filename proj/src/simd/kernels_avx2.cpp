// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "kernels_impl.hpp"

#include <cstddef>
#include <immintrin.h>

namespace aigw::simd::avx2 {

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
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d br = _mm256_loadu_pd(base_re.data() + i);
    const __m256d bi = _mm256_loadu_pd(base_im.data() + i);
    __m256d ar = _mm256_set1_pd(coeffs[top]);
    __m256d ai = _mm256_setzero_pd();
    for (std::size_t m = top; m-- > 0;) {
      // (ar + i ai)(br + i bi) + c
      const __m256d nr = _mm256_add_pd(_mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi)),
                                       _mm256_set1_pd(coeffs[m]));
      ai = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
      ar = nr;
    }
    _mm256_storeu_pd(out_re.data() + i, ar);
    _mm256_storeu_pd(out_im.data() + i, ai);
  }
  if (i < n)
    scalar::complex_horner(coeffs, base_re.subspan(i), base_im.subspan(i), out_re.subspan(i),
                           out_im.subspan(i));
}

void accumulate_squares(std::span<double> acc, std::span<const double> v) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v.data() + i);
    const __m256d a = _mm256_loadu_pd(acc.data() + i);
    // mul then add, not fma: keeps results bit-identical to the scalar path
    _mm256_storeu_pd(acc.data() + i, _mm256_add_pd(a, _mm256_mul_pd(x, x)));
  }
  if (i < n)
    scalar::accumulate_squares(acc.subspan(i), v.subspan(i));
}

void accumulate_inverse_squares(std::span<double> acc, std::span<const double> v) {
  const std::size_t n = acc.size();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v.data() + i);
    const __m256d a = _mm256_loadu_pd(acc.data() + i);
    _mm256_storeu_pd(acc.data() + i, _mm256_add_pd(a, _mm256_div_pd(one, _mm256_mul_pd(x, x))));
  }
  if (i < n)
    scalar::accumulate_inverse_squares(acc.subspan(i), v.subspan(i));
}

} // namespace aigw::simd::avx2
