#pragma once

#include <string_view>
#include <vector>

#include "fansq/fanstate.hpp"

namespace fansq {

/// Even squeezing order N >= 2.
class SqueezeOrder {
 public:
  explicit SqueezeOrder(int order);
  int value() const noexcept { return order_; }
  int half() const noexcept { return order_ / 2; }

 private:
  int order_;
};

/// S_N^(k)(phi) = A + sum_p B[p-1] cos(4 p k phi), p = 1..floor(N / 4k).
struct SqueezeCoeffs {
  int k = 1;
  int order = 2;
  double A = 0.0;
  std::vector<double> B;

  int harmonics() const noexcept { return static_cast<int>(B.size()); }
  double b1() const noexcept { return B.empty() ? 0.0 : B.front(); }
};

/// R_N = (N-1)!! / 2^{N/2}, the coherent-state value of <(dX)^N>.
double vacuum_benchmark(SqueezeOrder order);

SqueezeCoeffs coefficients(const FanState& state, SqueezeOrder order);
SqueezeCoeffs coefficients(const FanConfig& cfg, SqueezeOrder order, const SeriesControl& ctl = {});

/// Full harmonic sum. Throws if the result falls below -R_N.
double squeeze_parameter(const SqueezeCoeffs& c, double phi);

struct HarmonicApprox {
  double value = 0.0;
  /// max_{p >= 2} |B(p)| / |B(1)|; 0 when P < 2 or B(1) = 0.
  double dominance_ratio = 0.0;
};

/// A + B(1) cos(4k phi).
HarmonicApprox squeeze_approx(const SqueezeCoeffs& c, double phi);
double dominance_ratio(const SqueezeCoeffs& c);

/// Small-xi leading terms for f = 1.
struct AsymptoticTerms {
  double U = 0.0;
  double W = 0.0;
};

AsymptoticTerms asymptotic_uw(int k, SqueezeOrder order, double xi);
/// As above; rejects non-identity models.
AsymptoticTerms asymptotic_uw(const FanConfig& cfg, SqueezeOrder order);

/// Leading-order S = (N! / 2^N) (U + W cos(4k phi)).
///
/// The N!/2^N prefactor is the one that matches the exact A and B(1) in the
/// xi -> 0 limit: A -> (N!/2^N) U and B(1) -> (N!/2^N) W.
double leading_order_squeeze(int k, SqueezeOrder order, double xi, double phi);

/// Lowest order in which a fan state can be squeezed: 4k.
int min_order(int k);

enum class Regime { NoSqueezing, BPositive, BNegative };

std::string_view to_string(Regime r) noexcept;

struct DirectionReport {
  Regime regime = Regime::NoSqueezing;
  std::vector<double> squeeze_angles;  // radians, in [0, pi), sorted
  std::vector<double> stretch_angles;  // radians, in [0, pi), sorted
  double s_min = 0.0;
  double s_max = 0.0;
};

/// Locates the extrema of S over one period pi/2k and classifies the regime.
DirectionReport classify_directions(const SqueezeCoeffs& c);

}  // namespace fansq
