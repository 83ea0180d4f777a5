#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "fansq/fock_vector.hpp"
#include "fansq/signed_log.hpp"
#include "fansq/specfun.hpp"

namespace fansq {

/// The nonlinearity f(n): identity, or the trapped-ion Laguerre ratio
/// f(m) = (m-K)! L_{m-K}^K(eta^2) / (m! L_{m-K}^0(eta^2)).
class NonlinearModel {
 public:
  enum class Kind { Identity, TrappedIon };

  static NonlinearModel identity() { return {}; }
  static NonlinearModel trapped_ion(double eta_sq, int quantum_order);

  Kind kind() const noexcept { return kind_; }
  bool is_identity() const noexcept { return kind_ == Kind::Identity; }
  double eta_sq() const noexcept { return eta_sq_; }
  int quantum_order() const noexcept { return quantum_order_; }

  friend bool operator==(const NonlinearModel&, const NonlinearModel&) = default;

 private:
  Kind kind_ = Kind::Identity;
  double eta_sq_ = 0.0;
  int quantum_order_ = 0;
};

/// Truncation policy for the Fock-level series.
struct SeriesControl {
  double rel_tol = 1e-16;
  int consecutive_small = 3;
  int n_max = 5000;
  double laguerre_floor = 1e-12;

  void validate() const;
};

/// A fan state |xi; 2k, f>_F. xi is real and nonnegative.
struct FanConfig {
  int k = 1;
  double xi = 0.0;
  NonlinearModel model;

  static FanConfig identity(int k, double xi_sq);
  /// Trapped-ion fan state; the sideband order is fixed to 2k.
  static FanConfig trapped_ion(int k, double xi_sq, double eta_sq);

  double xi_sq() const noexcept { return xi * xi; }
  void validate() const;
};

/// Laser drive of the trapped ion. Only the phase difference phi1 - phi0 enters.
struct DriveParams {
  double omega0 = 0.0;  // carrier Rabi frequency
  double omega1 = 0.0;  // sideband Rabi frequency
  double eta = 0.0;     // Lamb-Dicke parameter
  double phase = 0.0;   // radians
  int quantum_order = 2;

  /// Validates and reduces the phase to [0, 2pi).
  DriveParams normalized() const;
};

SignedLog f_eval(const NonlinearModel& model, int m, double laguerre_floor = 1e-12);

/// f(p) f(p-step) f(p-2 step) ..., over the factors with argument >= step; 1 when p < step.
SignedLog f_product(const NonlinearModel& model, int p, int step, double laguerre_floor = 1e-12);

/// Memoized f_product values at p = step * j for j = 0, 1, 2, ...
///
/// Thread-safe; the Laguerre recurrences advance once over the whole table.
class FactorialProductTable {
 public:
  FactorialProductTable(NonlinearModel model, int step, double laguerre_floor);

  SignedLog at_level(int j) const;
  const NonlinearModel& model() const noexcept { return model_; }
  int step() const noexcept { return step_; }

 private:
  void extend_to(int j) const;

  NonlinearModel model_;
  int step_;
  double floor_;
  mutable std::mutex mutex_;
  mutable std::vector<SignedLog> levels_;
  mutable LaguerreRecurrence upper_;
  mutable LaguerreRecurrence lower_;
};

/// Series evaluator for one fan state: normalization, moments and Fock coefficients.
///
/// Moments are cached; concurrent callers are safe.
class FanState {
 public:
  explicit FanState(FanConfig cfg, SeriesControl ctl = {});

  const FanConfig& config() const noexcept { return cfg_; }
  const SeriesControl& control() const noexcept { return ctl_; }

  /// D_k(xi^2).
  double normalization() const { return norm_.to_real(); }
  SignedLog normalization_log() const noexcept { return norm_; }

  /// <a^{+l} a^m>; zero unless 4k divides l - m.
  double moment(int l, int m) const;

  /// Normalized amplitudes on levels [0, dim); throws TruncationTooSmall if the
  /// omitted probability is >= 1e-14.
  FockVector fock_coefficients(int dim) const;
  /// Same vector assembled with step-4k generalized factorials at levels 4kn.
  FockVector fock_coefficients_step4k(int dim) const;
  /// max_n |c_n(step 2k) - c_n(step 4k)| over [0, dim).
  double coefficient_convention_gap(int dim) const;
  /// One of the 2k superposed components, |xi_q; 2k, f> normalized, for q = 0.
  FockVector component_coefficients(int dim) const;

  /// Probability carried by levels >= dim.
  double tail_mass(int dim) const;
  /// Smallest n such that levels >= 4k n carry less than tail_tol.
  int levels_for_tail(double tail_tol) const;

 private:
  SignedLog product(int j) const { return products_->at_level(j); }
  SignedLog norm_term(int j) const;
  double compute_moment(int l, int m) const;

  FanConfig cfg_;
  SeriesControl ctl_;
  std::shared_ptr<FactorialProductTable> products_;
  double log_xi_ = 0.0;
  SignedLog norm_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<int, int>, double> moment_cache_;
};

double normalization(const FanConfig& cfg, const SeriesControl& ctl = {});
double moment(const FanConfig& cfg, int l, int m, const SeriesControl& ctl = {});
FockVector fock_coefficients(const FanConfig& cfg, int dim, const SeriesControl& ctl = {});

/// |xi| from xi^K = -e^{i phi} Omega0 / ((i eta)^K Omega1).
double xi_from_drive(const DriveParams& d);
/// The complex xi^K itself.
std::complex<double> xi_power_from_drive(const DriveParams& d);

}  // namespace fansq
