#pragma once

// Internal one-dimensional search helpers shared by squeeze and atlas.

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace fansq::detail {

template <class Fn>
double golden_section(Fn&& fn, double lo, double hi, bool minimize, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto g = [&](double x) { return minimize ? fn(x) : -fn(x); };
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = g(c), fd = g(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g(d);
    }
  }
  return 0.5 * (a + b);
}

/// Bisection on a bracket with f(lo) and f(hi) of opposite sign, followed by one
/// secant step inside the final bracket, kept only where fn is defined. fn returns nullopt where it cannot be
/// evaluated; the bracket is then abandoned. A sign change through a pole is
/// also rejected: there |f| grows as the bracket shrinks.
template <class Fn>
std::optional<double> bisect_root(Fn&& fn, double lo, double f_lo, double hi, double f_hi,
                                  double tol) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  const double start = std::max(std::fabs(f_lo), std::fabs(f_hi));
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const std::optional<double> fm = fn(mid);
    if (!fm) return std::nullopt;
    if (*fm == 0.0) return mid;
    if ((*fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = *fm;
    } else {
      hi = mid;
      f_hi = *fm;
    }
  }
  if (std::min(std::fabs(f_lo), std::fabs(f_hi)) > start) return std::nullopt;
  const double x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  const double guess = std::isfinite(x) ? std::clamp(x, lo, hi) : 0.5 * (lo + hi);
  // The zero itself can be a point where fn is undefined (a Laguerre zero
  // where the state degenerates); fall back to the better bracket end.
  if (fn(guess)) return guess;
  return std::fabs(f_lo) <= std::fabs(f_hi) ? lo : hi;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled exactly once; the first exception is rethrown.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const int workers = std::min(threads, count);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fansq::detail
