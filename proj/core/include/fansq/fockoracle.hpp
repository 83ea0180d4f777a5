#pragma once

#include <complex>

#include "fansq/fanstate.hpp"
#include "fansq/fock_vector.hpp"

namespace fansq {

/// Tail probability used when sizing oracle vectors.
///
/// Tighter than the 1e-14 acceptance bar: the eigen residual of a truncated
/// vector equals xi^{4k} times its top amplitude, so that amplitude must sit
/// well below 1e-10.
inline constexpr double kOracleTailTol = 1e-28;

/// a v. The result's tail_mass is zero: annihilation never leaves the basis.
FockVector apply_annihilation(const FockVector& v);
/// a^+ v. The amplitude pushed past the top row is reported as tail_mass.
FockVector apply_creation(const FockVector& v);

/// <(X_phi - <X_phi>)^N> with X_phi = (a e^{-i phi} + a^+ e^{i phi}) / sqrt(2).
double quadrature_moment(const FockVector& v, double phi, int order);

/// <v| a^{+l} a^m |v>, straight from the amplitudes.
std::complex<double> moment_oracle(const FockVector& v, int l, int m);

/// ||G^2 v - xi^{4k} v|| / ||v|| for G = a^{2k} f(n).
double eigen_residual(const FanConfig& cfg, const FockVector& v,
                      double laguerre_floor = SeriesControl{}.laguerre_floor);

/// True iff every amplitude off the levels 4k n is below 1e-12 in magnitude.
bool support_check(const FockVector& v, int k);

/// Dimension for oracle use: 4k n* + guard + 1, where levels >= 4k n* carry
/// less than tail_tol.
int oracle_dimension(const FanState& state, int guard, double tail_tol = kOracleTailTol);

/// Fan-state amplitudes on levels 0..4k n*, followed by `guard` zero rows.
FockVector oracle_vector(const FanState& state, int guard, double tail_tol = kOracleTailTol);

}  // namespace fansq
