#pragma once

#include <complex>
#include <vector>

namespace fansq {

/// Truncated Fock-space state; amps[n] is the amplitude of |n>.
struct FockVector {
  std::vector<std::complex<double>> amps;
  /// Probability (or leakage) not represented in amps.
  double tail_mass = 0.0;

  static FockVector basis(int n, int dim);

  int dim() const noexcept { return static_cast<int>(amps.size()); }
  /// One past the highest index holding a nonzero amplitude.
  int support_extent() const noexcept;
  double norm_sq() const noexcept;
  void normalize();
};

}  // namespace fansq
