#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace aigw {

/// Exact ratio of two 64-bit integers, always stored in lowest terms with a
/// positive denominator. Pulse weights and pulse offsets (in units of T) are
/// kept in this form so that closure sums are exactly zero.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const noexcept { return num_ == 0; }
  std::string str() const;

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);
  friend Rational operator*(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a) { return Rational(-a.num_, a.den_); }
  Rational &operator+=(const Rational &o) { return *this = *this + o; }

  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace aigw
