#include "fansq/fanstate.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fansq/errors.hpp"

namespace fansq {

namespace {

constexpr double kMaxTailMass = 1e-14;

template <class Term>
SignedLog sum_series(const SeriesControl& ctl, int first, int stride, Term&& term,
                     const char* what) {
  ScaledSum acc;
  const SignedLog tol = SignedLog::from_real(ctl.rel_tol);
  int small = 0;
  int j = first;
  for (int it = 0; it < ctl.n_max; ++it, j += stride) {
    const SignedLog t = term(j);
    acc.add(t);
    const SignedLog s = acc.value();
    if (t.abs_less(s.abs() * tol)) {
      if (++small >= ctl.consecutive_small) return s;
    } else {
      small = 0;
    }
  }
  throw SeriesNotConverged(std::string(what) + ": no convergence within n_max = " +
                           std::to_string(ctl.n_max) + " terms");
}

SignedLog trapped_ion_factor(int m, int quantum_order, double upper, double lower,
                             double laguerre_floor) {
  if (std::fabs(lower) < laguerre_floor) throw SingularNonlinearity(m, lower);
  if (upper == 0.0) throw SingularNonlinearity(m, upper);
  const int n = m - quantum_order;
  const int sign = (upper > 0 ? 1 : -1) * (lower > 0 ? 1 : -1);
  return SignedLog::from_log(sign, log_factorial(n) - log_factorial(m) +
                                       std::log(std::fabs(upper)) - std::log(std::fabs(lower)));
}

}  // namespace

NonlinearModel NonlinearModel::trapped_ion(double eta_sq, int quantum_order) {
  if (!(eta_sq > 0.0) || !std::isfinite(eta_sq))
    throw DomainError("trapped-ion model: eta^2 must be positive and finite");
  if (quantum_order < 1) throw DomainError("trapped-ion model: quantum order K must be >= 1");
  NonlinearModel m;
  m.kind_ = Kind::TrappedIon;
  m.eta_sq_ = eta_sq;
  m.quantum_order_ = quantum_order;
  return m;
}

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("series control: rel_tol must be positive");
  if (n_max < 1) throw DomainError("series control: n_max must be >= 1");
  if (consecutive_small < 1) throw DomainError("series control: consecutive_small must be >= 1");
  if (!(laguerre_floor >= 0.0)) throw DomainError("series control: laguerre_floor must be >= 0");
}

FanConfig FanConfig::identity(int k, double xi_sq) {
  if (!(xi_sq >= 0.0) || !std::isfinite(xi_sq))
    throw DomainError("fan state: xi^2 must be finite and >= 0");
  FanConfig c{k, std::sqrt(xi_sq), NonlinearModel::identity()};
  c.validate();
  return c;
}

FanConfig FanConfig::trapped_ion(int k, double xi_sq, double eta_sq) {
  if (k < 1) throw DomainError("fan state: k must be >= 1");
  if (!(xi_sq >= 0.0) || !std::isfinite(xi_sq))
    throw DomainError("fan state: xi^2 must be finite and >= 0");
  FanConfig c{k, std::sqrt(xi_sq), NonlinearModel::trapped_ion(eta_sq, 2 * k)};
  c.validate();
  return c;
}

void FanConfig::validate() const {
  if (k < 1) throw DomainError("fan state: k must be >= 1");
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("fan state: xi must be finite and >= 0");
  if (model.kind() == NonlinearModel::Kind::TrappedIon && model.quantum_order() != 2 * k)
    throw DomainError("fan state: trapped-ion quantum order must equal 2k");
}

DriveParams DriveParams::normalized() const {
  if (!(omega0 >= 0.0) || !std::isfinite(omega0))
    throw DomainError("drive: Omega0 must be finite and >= 0");
  if (!(omega1 > 0.0) || !std::isfinite(omega1))
    throw DomainError("drive: Omega1 must be positive");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("drive: eta must be positive");
  if (quantum_order < 1) throw DomainError("drive: quantum order K must be >= 1");
  if (!std::isfinite(phase)) throw DomainError("drive: phase must be finite");
  DriveParams d = *this;
  const double two_pi = 2.0 * std::numbers::pi;
  d.phase = std::fmod(phase, two_pi);
  if (d.phase < 0.0) d.phase += two_pi;
  if (d.phase >= two_pi) d.phase = 0.0;
  return d;
}

SignedLog f_eval(const NonlinearModel& model, int m, double laguerre_floor) {
  if (m < 0) throw DomainError("f_eval: negative argument");
  if (model.is_identity()) return SignedLog::one();
  const int order = model.quantum_order();
  if (m < order)
    throw DomainError("f_eval: argument " + std::to_string(m) + " below quantum order " +
                      std::to_string(order));
  const int n = m - order;
  return trapped_ion_factor(m, order, laguerre(n, order, model.eta_sq()),
                            laguerre(n, 0, model.eta_sq()), laguerre_floor);
}

SignedLog f_product(const NonlinearModel& model, int p, int step, double laguerre_floor) {
  if (p < 0) throw DomainError("f_product: negative argument");
  if (step < 1) throw DomainError("f_product: step must be >= 1");
  SignedLog r = SignedLog::one();
  for (int q = p; q >= step; q -= step) r *= f_eval(model, q, laguerre_floor);
  return r;
}

FactorialProductTable::FactorialProductTable(NonlinearModel model, int step, double laguerre_floor)
    : model_(model),
      step_(step),
      floor_(laguerre_floor),
      levels_{SignedLog::one()},
      upper_(model.is_identity() ? 0 : model.quantum_order(), model.eta_sq()),
      lower_(0, model.eta_sq()) {
  if (step < 1) throw DomainError("factorial product table: step must be >= 1");
}

void FactorialProductTable::extend_to(int j) const {
  while (static_cast<int>(levels_.size()) <= j) {
    const int level = static_cast<int>(levels_.size());
    const int p = step_ * level;
    if (model_.is_identity()) {
      levels_.push_back(levels_.back());
      continue;
    }
    const int order = model_.quantum_order();
    if (p < order)
      throw DomainError("f_product: argument " + std::to_string(p) + " below quantum order " +
                        std::to_string(order));
    upper_.advance_to(p - order);
    lower_.advance_to(p - order);
    levels_.push_back(levels_.back() *
                      trapped_ion_factor(p, order, upper_.value(), lower_.value(), floor_));
  }
}

SignedLog FactorialProductTable::at_level(int j) const {
  if (j < 0) throw DomainError("f_product: negative level");
  std::lock_guard lock(mutex_);
  extend_to(j);
  return levels_[static_cast<std::size_t>(j)];
}

FanState::FanState(FanConfig cfg, SeriesControl ctl) : cfg_(cfg), ctl_(ctl) {
  cfg_.validate();
  ctl_.validate();
  products_ = std::make_shared<FactorialProductTable>(cfg_.model, 2 * cfg_.k, ctl_.laguerre_floor);
  const double jsq = 4.0 * cfg_.k * cfg_.k;
  if (cfg_.xi == 0.0) {
    norm_ = SignedLog::from_real(jsq);
    return;
  }
  log_xi_ = std::log(cfg_.xi);
  norm_ = sum_series(ctl_, 0, 2, [this](int j) { return norm_term(j); }, "normalization");
}

SignedLog FanState::norm_term(int j) const {
  const int k = cfg_.k;
  const SignedLog f = product(j);
  return SignedLog::from_log(1, 4.0 * k * j * log_xi_ + std::log(4.0 * k * k) -
                                    log_factorial(2 * k * j)) /
         (f * f);
}

double FanState::moment(int l, int m) const {
  if (l < 0 || m < 0) throw DomainError("moment: negative order");
  if (l < m) std::swap(l, m);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = moment_cache_.find({l, m}); it != moment_cache_.end()) return it->second;
  }
  const double value = compute_moment(l, m);
  std::lock_guard lock(cache_mutex_);
  moment_cache_.emplace(std::pair{l, m}, value);
  return value;
}

double FanState::compute_moment(int l, int m) const {
  const int k = cfg_.k;
  const int step = 2 * k;
  const int offset = l - m;
  if (offset % step != 0) return 0.0;
  const int shift = offset / step;
  // J_k(n + shift) J_k(n) vanishes unless both n and shift are even.
  if (shift % 2 != 0) return 0.0;
  if (l == 0 && m == 0) return 1.0;
  if (cfg_.xi == 0.0) return 0.0;

  int n_min = (m + step - 1) / step;
  if (n_min % 2 != 0) ++n_min;
  auto term = [&](int n) {
    const SignedLog weight =
        SignedLog::from_log(1, (2.0 * step * n + offset) * log_xi_ + std::log(4.0 * k * k) -
                                   log_factorial(step * n - m));
    return weight / (product(n) * product(n + shift));
  };
  const SignedLog sum = sum_series(ctl_, n_min, 2, term, "moment");
  return (sum / norm_).to_real();
}

double FanState::tail_mass(int dim) const {
  if (dim < 1) throw DomainError("tail_mass: dim must be >= 1");
  if (cfg_.xi == 0.0) return 0.0;
  const int step = 2 * cfg_.k;
  int j0 = (dim + step - 1) / step;
  if (j0 % 2 != 0) ++j0;
  const SignedLog tail =
      sum_series(ctl_, j0, 2, [this](int j) { return norm_term(j); }, "tail mass");
  return (tail / norm_).to_real();
}

int FanState::levels_for_tail(double tail_tol) const {
  if (!(tail_tol > 0.0)) throw DomainError("levels_for_tail: tolerance must be positive");
  const int period = 4 * cfg_.k;
  for (int n = 1; n <= ctl_.n_max; ++n) {
    if (tail_mass(period * n) < tail_tol) return n;
  }
  throw SeriesNotConverged("levels_for_tail: tail never drops below tolerance");
}

FockVector FanState::fock_coefficients(int dim) const {
  if (dim < 1) throw DomainError("fock_coefficients: dim must be >= 1");
  const int k = cfg_.k;
  const int step = 2 * k;
  FockVector v;
  v.amps.assign(static_cast<std::size_t>(dim), {0.0, 0.0});
  if (cfg_.xi == 0.0) {
    v.amps[0] = 1.0;
    return v;
  }
  const SignedLog inv_root_norm = norm_.sqrt().inverse();
  for (int j = 0; step * j < dim; j += 2) {
    const int level = step * j;
    const SignedLog c =
        SignedLog::from_log(1, level * log_xi_ + std::log(2.0 * k) - 0.5 * log_factorial(level)) /
        product(j) * inv_root_norm;
    v.amps[static_cast<std::size_t>(level)] = c.to_real();
  }
  v.tail_mass = tail_mass(dim);
  if (v.tail_mass >= kMaxTailMass)
    throw TruncationTooSmall("fock_coefficients: tail mass " + std::to_string(v.tail_mass) +
                             " at dim " + std::to_string(dim));
  return v;
}

FockVector FanState::fock_coefficients_step4k(int dim) const {
  if (dim < 1) throw DomainError("fock_coefficients: dim must be >= 1");
  const int period = 4 * cfg_.k;
  FockVector v;
  v.amps.assign(static_cast<std::size_t>(dim), {0.0, 0.0});
  if (cfg_.xi == 0.0) {
    v.amps[0] = 1.0;
    return v;
  }
  const FactorialProductTable wide(cfg_.model, period, ctl_.laguerre_floor);
  std::vector<SignedLog> raw;
  ScaledSum norm;
  for (int n = 0; period * n < dim; ++n) {
    const int level = period * n;
    const SignedLog c =
        SignedLog::from_log(1, level * log_xi_ - 0.5 * log_factorial(level)) / wide.at_level(n);
    raw.push_back(c);
    norm.add(c * c);
  }
  const SignedLog inv = norm.value().sqrt().inverse();
  for (std::size_t n = 0; n < raw.size(); ++n)
    v.amps[n * static_cast<std::size_t>(period)] = (raw[n] * inv).to_real();
  return v;
}

double FanState::coefficient_convention_gap(int dim) const {
  const FockVector a = fock_coefficients(dim);
  const FockVector b = fock_coefficients_step4k(dim);
  double gap = 0.0;
  for (int n = 0; n < dim; ++n) gap = std::max(gap, std::abs(a.amps[n] - b.amps[n]));
  return gap;
}

FockVector FanState::component_coefficients(int dim) const {
  if (dim < 1) throw DomainError("component_coefficients: dim must be >= 1");
  const int step = 2 * cfg_.k;
  FockVector v;
  v.amps.assign(static_cast<std::size_t>(dim), {0.0, 0.0});
  if (cfg_.xi == 0.0) {
    v.amps[0] = 1.0;
    return v;
  }
  std::vector<SignedLog> raw;
  ScaledSum norm;
  for (int j = 0; step * j < dim; ++j) {
    const int level = step * j;
    const SignedLog c =
        SignedLog::from_log(1, level * log_xi_ - 0.5 * log_factorial(level)) / product(j);
    raw.push_back(c);
    norm.add(c * c);
  }
  const SignedLog inv = norm.value().sqrt().inverse();
  for (std::size_t j = 0; j < raw.size(); ++j)
    v.amps[j * static_cast<std::size_t>(step)] = (raw[j] * inv).to_real();
  return v;
}

double normalization(const FanConfig& cfg, const SeriesControl& ctl) {
  return FanState(cfg, ctl).normalization();
}

double moment(const FanConfig& cfg, int l, int m, const SeriesControl& ctl) {
  return FanState(cfg, ctl).moment(l, m);
}

FockVector fock_coefficients(const FanConfig& cfg, int dim, const SeriesControl& ctl) {
  return FanState(cfg, ctl).fock_coefficients(dim);
}

double xi_from_drive(const DriveParams& drive) {
  const DriveParams d = drive.normalized();
  if (d.omega0 == 0.0) return 0.0;
  const double order = d.quantum_order;
  return std::exp((std::log(d.omega0) - std::log(d.omega1) - order * std::log(d.eta)) / order);
}

std::complex<double> xi_power_from_drive(const DriveParams& drive) {
  const DriveParams d = drive.normalized();
  const double magnitude = d.omega0 / (std::pow(d.eta, d.quantum_order) * d.omega1);
  const double angle = d.phase - 0.5 * std::numbers::pi * d.quantum_order;
  return -magnitude * std::polar(1.0, angle);
}

}  // namespace fansq
