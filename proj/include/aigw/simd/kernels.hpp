#pragma once

// Data-parallel inner loops over frequency grids. Every kernel has a scalar
// reference implementation; wider variants are selected at runtime from the
// host CPU and must agree with the reference to rounding (see
// tests/test_kernels.cpp).

#include <cstddef>
#include <span>
#include <string_view>

namespace aigw::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;
/// Throws InvalidParameter for unknown names.
Isa parse_isa(std::string_view name);

/// True when the variant is compiled in and the host CPU can run it.
bool supported(Isa isa) noexcept;
Isa best_available() noexcept;

/// Variant used by the library. Defaults to best_available() unless the
/// AIGW_ISA environment variable names another supported variant.
Isa active() noexcept;
/// Throws InvalidParameter when `isa` is not supported on this host.
void select(Isa isa);

struct KernelTable {
  /// out[i] = sum_m coeffs[m] * base[i]^m for complex base[i] = (re, im).
  void (*complex_horner)(std::span<const double> coeffs, std::span<const double> base_re,
                         std::span<const double> base_im, std::span<double> out_re,
                         std::span<double> out_im);
  /// acc[i] += v[i]^2
  void (*accumulate_squares)(std::span<double> acc, std::span<const double> v);
  /// acc[i] += 1 / v[i]^2  (infinite v contributes zero)
  void (*accumulate_inverse_squares)(std::span<double> acc, std::span<const double> v);
};

/// Throws InvalidParameter when `isa` is not supported on this host.
const KernelTable &table(Isa isa);
const KernelTable &kernels() noexcept;

} // namespace aigw::simd
