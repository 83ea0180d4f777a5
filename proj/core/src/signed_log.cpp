#include "fansq/signed_log.hpp"

#include <climits>
#include <cmath>
#include <limits>
#include <numbers>

#include "fansq/errors.hpp"

namespace fansq {

namespace {

int clamp_exp(std::int64_t e) {
  if (e > INT_MAX / 2) return INT_MAX / 2;
  if (e < INT_MIN / 2) return INT_MIN / 2;
  return static_cast<int>(e);
}

}  // namespace

SignedLog SignedLog::make(int sign, double mant, std::int64_t exp) noexcept {
  if (sign == 0 || mant == 0.0) return {};
  int de = 0;
  const double m = std::frexp(mant, &de);
  SignedLog r;
  r.sign_ = sign;
  r.mant_ = m;
  r.exp_ = exp + de;
  return r;
}

SignedLog SignedLog::from_real(double x) {
  if (!std::isfinite(x)) throw DomainError("SignedLog::from_real: non-finite value");
  if (x == 0.0) return {};
  return make(x > 0 ? 1 : -1, std::fabs(x), 0);
}

SignedLog SignedLog::from_log(int sign, double logmag) {
  if (sign == 0 || logmag == -std::numeric_limits<double>::infinity()) return {};
  if (!std::isfinite(logmag)) throw DomainError("SignedLog::from_log: non-finite magnitude");
  const double ln2 = std::numbers::ln2;
  const auto e = static_cast<std::int64_t>(std::floor(logmag / ln2)) + 1;
  const double mant = std::exp(logmag - static_cast<double>(e) * ln2);
  return make(sign > 0 ? 1 : -1, mant, e);
}

double SignedLog::logmag() const noexcept {
  if (sign_ == 0) return -std::numeric_limits<double>::infinity();
  return std::log(mant_) + static_cast<double>(exp_) * std::numbers::ln2;
}

double SignedLog::to_real() const noexcept {
  if (sign_ == 0) return 0.0;
  return std::ldexp(sign_ * mant_, clamp_exp(exp_));
}

SignedLog SignedLog::abs() const noexcept {
  SignedLog r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

SignedLog SignedLog::operator-() const noexcept {
  SignedLog r = *this;
  r.sign_ = -r.sign_;
  return r;
}

SignedLog operator*(const SignedLog& a, const SignedLog& b) noexcept {
  if (a.sign_ == 0 || b.sign_ == 0) return {};
  return SignedLog::make(a.sign_ * b.sign_, a.mant_ * b.mant_, a.exp_ + b.exp_);
}

SignedLog operator/(const SignedLog& a, const SignedLog& b) {
  if (b.sign_ == 0) throw DomainError("SignedLog: division by zero");
  if (a.sign_ == 0) return {};
  return SignedLog::make(a.sign_ * b.sign_, a.mant_ / b.mant_, a.exp_ - b.exp_);
}

SignedLog SignedLog::inverse() const { return one() / *this; }

SignedLog SignedLog::sqrt() const {
  if (sign_ < 0) throw DomainError("SignedLog::sqrt of a negative value");
  if (sign_ == 0) return {};
  double m = mant_;
  std::int64_t e = exp_;
  if (e % 2 != 0) {
    m *= 2.0;
    e -= 1;
  }
  return make(1, std::sqrt(m), e / 2);
}

SignedLog SignedLog::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  SignedLog result = one();
  SignedLog base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

SignedLog SignedLog::ldexp(std::int64_t e) const noexcept {
  SignedLog r = *this;
  if (r.sign_ != 0) r.exp_ += e;
  return r;
}

bool SignedLog::abs_less(const SignedLog& o) const noexcept {
  if (o.sign_ == 0) return false;
  if (sign_ == 0) return true;
  if (exp_ != o.exp_) return exp_ < o.exp_;
  return mant_ < o.mant_;
}

void ScaledSum::rescale_to(std::int64_t new_scale) {
  const int shift = clamp_exp(scale_ - new_scale);
  sum_ = std::ldexp(sum_, shift);
  comp_ = std::ldexp(comp_, shift);
  scale_ = new_scale;
}

void ScaledSum::add(const SignedLog& term) {
  if (term.is_zero()) return;
  if (!started_) {
    started_ = true;
    scale_ = term.exponent();
    sum_ = term.sign() * term.mantissa();
    comp_ = 0.0;
    return;
  }
  if (term.exponent() > scale_) rescale_to(term.exponent());
  const double x = std::ldexp(term.sign() * term.mantissa(), clamp_exp(term.exponent() - scale_));
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

SignedLog ScaledSum::value() const {
  if (!started_) return {};
  return SignedLog::from_real(sum_ + comp_).ldexp(scale_);
}

}  // namespace fansq
