#include "fansq/squeeze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fansq/errors.hpp"
#include "fansq/specfun.hpp"
#include "optimize.hpp"

namespace fansq {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

// Returns the location in [0, period) of the global minimum (or maximum) of s.
// The points 0 and period/2 are critical for every harmonic cos(4pk phi), so they are
// preferred whenever the refined extremum does not beat them.
double locate_extremum(const SqueezeCoeffs& c, double period, bool minimize) {
  constexpr int kSamples = 4096;
  auto s = [&](double phi) {
    double v = c.A;
    for (int p = 1; p <= c.harmonics(); ++p) v += c.B[p - 1] * std::cos(4.0 * p * c.k * phi);
    return v;
  };
  auto better = [&](double a, double b) { return minimize ? a < b : a > b; };
  const double h = period / kSamples;
  int best = 0;
  double best_val = s(0.0);
  for (int i = 1; i < kSamples; ++i) {
    const double v = s(i * h);
    if (better(v, best_val)) {
      best = i;
      best_val = v;
    }
  }
  const double refined = detail::golden_section(s, (best - 1) * h, (best + 1) * h, minimize, 1e-13);

  double scale = std::fabs(c.A);
  for (double b : c.B) scale += std::fabs(b);
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  double choice = refined;
  double choice_val = s(refined);
  for (double cand : {0.0, 0.5 * period}) {
    const double v = s(cand);
    if (minimize ? v <= choice_val + slack : v >= choice_val - slack) {
      choice = cand;
      choice_val = v;
    }
  }
  if (choice >= period) choice -= period;
  if (choice < 0.0) choice += period;
  return choice;
}

std::vector<double> replicate(double phi, double period, int copies) {
  std::vector<double> out;
  for (int n = 0; n < copies; ++n) {
    double a = std::fmod(phi + n * period, kPi);
    if (a < 0.0) a += kPi;
    out.push_back(a);
  }
  return out;
}

void finish_angles(std::vector<double>& angles) {
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
               angles.end());
}

}  // namespace

SqueezeOrder::SqueezeOrder(int order) : order_(order) {
  if (order < 2 || order % 2 != 0)
    throw DomainError("squeezing order N must be an even integer >= 2 (got " +
                      std::to_string(order) + ")");
}

double vacuum_benchmark(SqueezeOrder order) {
  return double_factorial(order.value() - 1) / std::ldexp(1.0, order.half());
}

SqueezeCoeffs coefficients(const FanState& state, SqueezeOrder order) {
  const int k = state.config().k;
  const int n = order.value();
  const int half = order.half();
  SqueezeCoeffs c;
  c.k = k;
  c.order = n;

  const double log_nfact = log_factorial(n);
  double a = 0.0;
  for (int m = 1; m <= half; ++m) {
    const double w = std::exp(log_nfact - n * kLn2 + m * kLn2 - 2.0 * log_factorial(m) -
                              log_factorial(half - m));
    a += w * state.moment(m, m);
  }
  c.A = a;

  const int harmonics = n / (4 * k);
  for (int p = 1; p <= harmonics; ++p) {
    const int offset = 4 * p * k;
    const int top = half - 2 * p * k;
    double b = 0.0;
    for (int m = 0; m <= top; ++m) {
      const double w = std::exp(2.0 * p * k * kLn2 + log_nfact - (n - 1) * kLn2 + m * kLn2 -
                                log_factorial(m) - log_factorial(m + offset) -
                                log_factorial(half - m - 2 * p * k));
      b += w * state.moment(m + offset, m);
    }
    c.B.push_back(b);
  }
  return c;
}

SqueezeCoeffs coefficients(const FanConfig& cfg, SqueezeOrder order, const SeriesControl& ctl) {
  return coefficients(FanState(cfg, ctl), order);
}

double squeeze_parameter(const SqueezeCoeffs& c, double phi) {
  double s = c.A;
  for (int p = 1; p <= c.harmonics(); ++p) s += c.B[p - 1] * std::cos(4.0 * p * c.k * phi);
  const double floor = vacuum_benchmark(SqueezeOrder(c.order));
  if (s < -floor * (1.0 + 1e-9))
    throw Error("squeeze parameter " + std::to_string(s) + " below -R_N = " +
                std::to_string(-floor));
  return s;
}

double dominance_ratio(const SqueezeCoeffs& c) {
  if (c.harmonics() < 2 || c.B[0] == 0.0) return 0.0;
  double worst = 0.0;
  for (int p = 2; p <= c.harmonics(); ++p) worst = std::max(worst, std::fabs(c.B[p - 1]));
  return worst / std::fabs(c.B[0]);
}

HarmonicApprox squeeze_approx(const SqueezeCoeffs& c, double phi) {
  HarmonicApprox r;
  r.value = c.A + c.b1() * std::cos(4.0 * c.k * phi);
  r.dominance_ratio = dominance_ratio(c);
  return r;
}

AsymptoticTerms asymptotic_uw(int k, SqueezeOrder order, double xi) {
  if (k < 1) throw DomainError("asymptotic_uw: k must be >= 1");
  if (order.value() < 4 * k)
    throw DomainError("asymptotic_uw: requires N >= 4k (N = " + std::to_string(order.value()) +
                      ", k = " + std::to_string(k) + ")");
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("asymptotic_uw: xi must be >= 0");
  AsymptoticTerms t;
  if (xi == 0.0) return t;
  const int half = order.half();
  const double log_xi = std::log(xi);
  for (int m = 1; m <= std::min(half, 4 * k); ++m)
    t.U += std::exp(m * kLn2 + 8.0 * k * log_xi - 2.0 * log_factorial(m) -
                    log_factorial(half - m) - log_factorial(4 * k - m));
  t.W = std::exp((2 * k + 1) * kLn2 + 4.0 * k * log_xi - log_factorial(4 * k) -
                 log_factorial(half - 2 * k));
  return t;
}

AsymptoticTerms asymptotic_uw(const FanConfig& cfg, SqueezeOrder order) {
  if (!cfg.model.is_identity())
    throw DomainError("asymptotic_uw: the small-xi expansion holds only for f = 1");
  return asymptotic_uw(cfg.k, order, cfg.xi);
}

double leading_order_squeeze(int k, SqueezeOrder order, double xi, double phi) {
  const AsymptoticTerms t = asymptotic_uw(k, order, xi);
  const double prefactor = std::exp(log_factorial(order.value()) - order.value() * kLn2);
  return prefactor * (t.U + t.W * std::cos(4.0 * k * phi));
}

int min_order(int k) {
  if (k < 1) throw DomainError("min_order: k must be >= 1");
  return 4 * k;
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::NoSqueezing:
      return "NoSqueezing";
    case Regime::BPositive:
      return "BPositive";
    case Regime::BNegative:
      return "BNegative";
  }
  return "?";
}

DirectionReport classify_directions(const SqueezeCoeffs& c) {
  DirectionReport r;
  const double period = kPi / (2.0 * c.k);
  const double phi_min = locate_extremum(c, period, true);
  const double phi_max = locate_extremum(c, period, false);
  r.s_min = squeeze_parameter(c, phi_min);
  r.s_max = squeeze_parameter(c, phi_max);
  if (!(r.s_min < 0.0)) return r;

  const double b1 = c.b1();
  if (b1 > 0.0)
    r.regime = Regime::BPositive;
  else if (b1 < 0.0)
    r.regime = Regime::BNegative;
  else
    r.regime = std::fabs(phi_min - 0.5 * period) < 1e-9 ? Regime::BPositive : Regime::BNegative;

  const int copies = 2 * c.k;
  auto add_family = [&](std::vector<double>& out, double phi) {
    auto a = replicate(phi, period, copies);
    out.insert(out.end(), a.begin(), a.end());
    // An extremum strictly inside a half-period has a mirror image at -phi.
    const bool on_axis = phi == 0.0 || std::fabs(phi - 0.5 * period) < 1e-12;
    if (!on_axis) {
      auto b = replicate(period - phi, period, copies);
      out.insert(out.end(), b.begin(), b.end());
    }
  };
  add_family(r.squeeze_angles, phi_min);
  add_family(r.stretch_angles, phi_max);
  finish_angles(r.squeeze_angles);
  finish_angles(r.stretch_angles);
  return r;
}

}  // namespace fansq
