#pragma once

namespace fansq {

/// Generalized Laguerre polynomial L_n^m(x) by the ascending three-term recurrence.
double laguerre(int n, int m, double x);

/// Steps L_n^m(x) forward in n one degree at a time.
class LaguerreRecurrence {
 public:
  LaguerreRecurrence(int m, double x);

  int degree() const noexcept { return n_; }
  double value() const noexcept { return cur_; }
  void advance() noexcept;
  /// Advances until degree() == n (n >= degree()).
  void advance_to(int n) noexcept;

 private:
  int m_;
  double x_;
  int n_ = 0;
  double prev_ = 0.0;
  double cur_ = 1.0;
};

/// ln(n!) from a compensated cumulative table; lgamma beyond the table.
double log_factorial(int n);

/// n!! for n >= -1 (with (-1)!! = 0!! = 1), exact while representable.
double double_factorial(int n);

/// Sum over q = 0..2k-1 of exp(i pi q n): 2k for even n, 0 for odd n.
int j_k(int k, int n);

}  // namespace fansq
