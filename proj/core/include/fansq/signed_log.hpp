#pragma once

#include <cstdint>

namespace fansq {

/// Extended-range real number: sign and natural-log magnitude.
///
/// Internally the magnitude is held as a binary mantissa in [0.5, 1) and a
/// 64-bit exponent, so products of factorials and Laguerre values never
/// overflow and from_real/to_real round-trips exactly inside the double range.
class SignedLog {
 public:
  constexpr SignedLog() = default;  // exact zero

  static SignedLog from_real(double x);
  static SignedLog from_log(int sign, double logmag);
  static SignedLog one() { return from_real(1.0); }

  /// -1, 0 or +1.
  int sign() const noexcept { return sign_; }
  /// ln|x|; -infinity for zero.
  double logmag() const noexcept;
  bool is_zero() const noexcept { return sign_ == 0; }

  /// Converts back to double; underflows to 0 and overflows to +-inf.
  double to_real() const noexcept;

  SignedLog abs() const noexcept;
  SignedLog inverse() const;
  SignedLog sqrt() const;
  SignedLog pow(int e) const;
  /// Multiplies by 2^e exactly.
  SignedLog ldexp(std::int64_t e) const noexcept;

  friend SignedLog operator*(const SignedLog& a, const SignedLog& b) noexcept;
  friend SignedLog operator/(const SignedLog& a, const SignedLog& b);
  SignedLog& operator*=(const SignedLog& o) noexcept { return *this = *this * o; }
  SignedLog& operator/=(const SignedLog& o) { return *this = *this / o; }
  SignedLog operator-() const noexcept;

  /// Compares magnitudes only.
  bool abs_less(const SignedLog& o) const noexcept;

  double mantissa() const noexcept { return mant_; }
  std::int64_t exponent() const noexcept { return exp_; }

 private:
  static SignedLog make(int sign, double mant, std::int64_t exp) noexcept;

  int sign_ = 0;
  double mant_ = 0.0;  // in [0.5, 1) when sign_ != 0
  std::int64_t exp_ = 0;
};

/// Compensated sum of SignedLog terms with a power-of-two running scale.
///
/// Rescaling by powers of two is exact, so the only rounding is that of the
/// Neumaier summation itself.
class ScaledSum {
 public:
  void add(const SignedLog& term);
  SignedLog value() const;
  bool empty() const noexcept { return !started_; }

 private:
  void rescale_to(std::int64_t new_scale);

  bool started_ = false;
  std::int64_t scale_ = 0;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace fansq
