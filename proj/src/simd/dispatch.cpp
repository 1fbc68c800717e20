#include "aigw/simd/kernels.hpp"

#include "aigw/errors.hpp"
#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace aigw::simd {

namespace {

constexpr KernelTable scalar_table{&scalar::complex_horner, &scalar::accumulate_squares,
                                   &scalar::accumulate_inverse_squares};
#if defined(AIGW_BUILD_AVX2)
constexpr KernelTable avx2_table{&avx2::complex_horner, &avx2::accumulate_squares,
                                 &avx2::accumulate_inverse_squares};
#endif

Isa initial_isa() noexcept {
  if (const char *env = std::getenv("AIGW_ISA")) {
    const std::string_view name(env);
    if (name == "scalar")
      return Isa::scalar;
    if (name == "avx2" && supported(Isa::avx2))
      return Isa::avx2;
  }
  return best_available();
}

std::atomic<Isa> &current() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

} // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa parse_isa(std::string_view name) {
  if (name == "scalar")
    return Isa::scalar;
  if (name == "avx2")
    return Isa::avx2;
  throw InvalidParameter("unknown kernel variant '" + std::string(name) + "'");
}

bool supported(Isa isa) noexcept {
  switch (isa) {
  case Isa::scalar:
    return true;
  case Isa::avx2:
#if defined(AIGW_BUILD_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
  }
  return false;
}

Isa best_available() noexcept { return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

Isa active() noexcept { return current().load(std::memory_order_relaxed); }

void select(Isa isa) {
  if (!supported(isa))
    throw InvalidParameter("kernel variant '" + std::string(to_string(isa)) + "' is not available on this host");
  current().store(isa, std::memory_order_relaxed);
}

const KernelTable &table(Isa isa) {
  if (!supported(isa))
    throw InvalidParameter("kernel variant '" + std::string(to_string(isa)) + "' is not available on this host");
#if defined(AIGW_BUILD_AVX2)
  if (isa == Isa::avx2)
    return avx2_table;
#endif
  return scalar_table;
}

const KernelTable &kernels() noexcept {
#if defined(AIGW_BUILD_AVX2)
  if (active() == Isa::avx2)
    return avx2_table;
#endif
  return scalar_table;
}

} // namespace aigw::simd
