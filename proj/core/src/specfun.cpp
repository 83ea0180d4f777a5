#include "fansq/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "fansq/errors.hpp"

namespace fansq {

LaguerreRecurrence::LaguerreRecurrence(int m, double x) : m_(m), x_(x) {
  if (m < 0) throw DomainError("laguerre: negative parameter m");
}

void LaguerreRecurrence::advance() noexcept {
  const double j = n_;
  const double next =
      n_ == 0 ? 1.0 + m_ - x_ : ((2.0 * j + 1.0 + m_ - x_) * cur_ - (j + m_) * prev_) / (j + 1.0);
  prev_ = cur_;
  cur_ = next;
  ++n_;
}

void LaguerreRecurrence::advance_to(int n) noexcept {
  while (n_ < n) advance();
}

double laguerre(int n, int m, double x) {
  if (n < 0) throw DomainError("laguerre: negative degree n");
  LaguerreRecurrence rec(m, x);
  rec.advance_to(n);
  return rec.value();
}

namespace {

constexpr int kFactorialTableSize = 1 << 16;

const std::vector<double>& factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kFactorialTableSize);
    double sum = 0.0;
    double comp = 0.0;
    t[0] = 0.0;
    for (int i = 1; i < kFactorialTableSize; ++i) {
      const double x = std::log(static_cast<double>(i));
      const double s = sum + x;
      comp += std::fabs(sum) >= std::fabs(x) ? (sum - s) + x : (x - s) + sum;
      sum = s;
      t[i] = sum + comp;
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  if (n < kFactorialTableSize) return factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double double_factorial(int n) {
  if (n < -1) throw DomainError("double_factorial: argument below -1");
  double r = 1.0;
  for (int i = n; i > 1; i -= 2) r *= i;
  return r;
}

int j_k(int k, int n) {
  if (k < 1) throw DomainError("j_k: k must be positive");
  return n % 2 == 0 ? 2 * k : 0;
}

}  // namespace fansq
