#include "fansq/fockoracle.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "fansq/errors.hpp"
#include "fansq/specfun.hpp"

namespace fansq {

using cplx = std::complex<double>;

FockVector FockVector::basis(int n, int dim) {
  if (n < 0 || dim <= n) throw DomainError("FockVector::basis: level outside [0, dim)");
  FockVector v;
  v.amps.assign(static_cast<std::size_t>(dim), {0.0, 0.0});
  v.amps[static_cast<std::size_t>(n)] = 1.0;
  return v;
}

int FockVector::support_extent() const noexcept {
  for (int n = dim(); n > 0; --n)
    if (amps[static_cast<std::size_t>(n - 1)] != cplx{}) return n;
  return 0;
}

double FockVector::norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

void FockVector::normalize() {
  const double n = std::sqrt(norm_sq());
  if (n == 0.0) throw DomainError("FockVector::normalize: zero vector");
  for (auto& a : amps) a /= n;
}

namespace {

void require_guard(const FockVector& v, int needed, const char* what) {
  if (v.dim() < v.support_extent() + needed)
    throw TruncationTooSmall(std::string(what) + ": dim " + std::to_string(v.dim()) +
                             " leaves fewer than " + std::to_string(needed) +
                             " guard rows above the support");
}

// X w - mu w, banded: (X w)[n] = (e^{-i phi} sqrt(n+1) w[n+1] + e^{i phi} sqrt(n) w[n-1]) / sqrt 2
void apply_shifted_quadrature(const std::vector<cplx>& w, std::vector<cplx>& out, cplx down,
                              cplx up, double mu) {
  const std::size_t dim = w.size();
  for (std::size_t n = 0; n < dim; ++n) {
    cplx s = -mu * w[n];
    if (n + 1 < dim) s += down * std::sqrt(static_cast<double>(n + 1)) * w[n + 1];
    if (n > 0) s += up * std::sqrt(static_cast<double>(n)) * w[n - 1];
    out[n] = s;
  }
}

}  // namespace

FockVector apply_annihilation(const FockVector& v) {
  FockVector r;
  r.amps.assign(v.amps.size(), {0.0, 0.0});
  for (int n = 0; n + 1 < v.dim(); ++n)
    r.amps[static_cast<std::size_t>(n)] =
        std::sqrt(static_cast<double>(n + 1)) * v.amps[static_cast<std::size_t>(n + 1)];
  return r;
}

FockVector apply_creation(const FockVector& v) {
  FockVector r;
  r.amps.assign(v.amps.size(), {0.0, 0.0});
  for (int n = 1; n < v.dim(); ++n)
    r.amps[static_cast<std::size_t>(n)] =
        std::sqrt(static_cast<double>(n)) * v.amps[static_cast<std::size_t>(n - 1)];
  if (v.dim() > 0) r.tail_mass = v.dim() * std::norm(v.amps.back());
  return r;
}

double quadrature_moment(const FockVector& v, double phi, int order) {
  if (order < 0 || order % 2 != 0) throw DomainError("quadrature_moment: order must be even");
  require_guard(v, order, "quadrature_moment");
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const cplx down = std::polar(inv_sqrt2, -phi);
  const cplx up = std::polar(inv_sqrt2, phi);

  std::vector<cplx> w = v.amps;
  std::vector<cplx> next(w.size());
  apply_shifted_quadrature(w, next, down, up, 0.0);
  cplx mean{};
  for (std::size_t n = 0; n < w.size(); ++n) mean += std::conj(v.amps[n]) * next[n];
  const double mu = mean.real();
  const double norm = v.norm_sq();

  for (int i = 0; i < order; ++i) {
    apply_shifted_quadrature(w, next, down, up, mu);
    w.swap(next);
  }
  cplx result{};
  for (std::size_t n = 0; n < w.size(); ++n) result += std::conj(v.amps[n]) * w[n];
  result /= norm;
  if (std::fabs(result.imag()) > 1e-12 * std::max(1.0, std::fabs(result.real())))
    throw Error("quadrature_moment: imaginary residue " + std::to_string(result.imag()));
  return result.real();
}

std::complex<double> moment_oracle(const FockVector& v, int l, int m) {
  if (l < 0 || m < 0) throw DomainError("moment_oracle: negative order");
  // Evaluate one orientation only so that hermiticity holds bit-for-bit.
  if (l < m) return std::conj(moment_oracle(v, m, l));
  require_guard(v, l + m, "moment_oracle");
  const int dim = v.dim();
  cplx sum{};
  for (int n = m; n - m + l < dim; ++n) {
    const auto& a = v.amps[static_cast<std::size_t>(n)];
    const auto& b = v.amps[static_cast<std::size_t>(n - m + l)];
    if (a == cplx{} || b == cplx{}) continue;
    const double weight =
        std::exp(0.5 * (log_factorial(n) + log_factorial(n - m + l)) - log_factorial(n - m));
    sum += std::conj(b) * a * weight;
  }
  return sum / v.norm_sq();
}

double eigen_residual(const FanConfig& cfg, const FockVector& v, double laguerre_floor) {
  cfg.validate();
  const int step = 2 * cfg.k;
  const int dim = v.dim();
  if (dim <= step) throw TruncationTooSmall("eigen_residual: dim must exceed 2k");
  require_guard(v, 0, "eigen_residual");

  // f is only needed on occupied levels; Laguerre zeros elsewhere are irrelevant.
  std::vector<std::optional<double>> f(static_cast<std::size_t>(dim));
  auto f_at = [&](int n) {
    auto& slot = f[static_cast<std::size_t>(n)];
    if (!slot) slot = f_eval(cfg.model, n, laguerre_floor).to_real();
    return *slot;
  };
  std::vector<double> lowering(static_cast<std::size_t>(dim), 0.0);  // sqrt((n+2k)!/n!)
  for (int n = 0; n + step < dim; ++n)
    lowering[static_cast<std::size_t>(n)] =
        std::exp(0.5 * (log_factorial(n + step) - log_factorial(n)));

  auto apply_g = [&](const std::vector<cplx>& w) {
    std::vector<cplx> out(w.size());
    for (int n = 0; n + step < dim; ++n) {
      const auto src = static_cast<std::size_t>(n + step);
      if (w[src] == cplx{}) continue;
      out[static_cast<std::size_t>(n)] = lowering[static_cast<std::size_t>(n)] * f_at(n + step) * w[src];
    }
    return out;
  };
  const std::vector<cplx> g2 = apply_g(apply_g(v.amps));
  const double eigenvalue = std::pow(cfg.xi, 2 * step);
  double num = 0.0;
  for (int n = 0; n < dim; ++n) {
    const auto i = static_cast<std::size_t>(n);
    num += std::norm(g2[i] - eigenvalue * v.amps[i]);
  }
  return std::sqrt(num / v.norm_sq());
}

bool support_check(const FockVector& v, int k) {
  if (k < 1) throw DomainError("support_check: k must be >= 1");
  const int period = 4 * k;
  for (int n = 0; n < v.dim(); ++n)
    if (n % period != 0 && std::abs(v.amps[static_cast<std::size_t>(n)]) >= 1e-12) return false;
  return true;
}

int oracle_dimension(const FanState& state, int guard, double tail_tol) {
  if (guard < 0) throw DomainError("oracle_dimension: negative guard");
  const int n_star = state.config().xi == 0.0 ? 0 : state.levels_for_tail(tail_tol);
  return 4 * state.config().k * n_star + guard + 1;
}

FockVector oracle_vector(const FanState& state, int guard, double tail_tol) {
  const int dim = oracle_dimension(state, guard, tail_tol);
  FockVector v = state.fock_coefficients(dim - guard);
  v.amps.resize(static_cast<std::size_t>(dim), {0.0, 0.0});
  return v;
}

}  // namespace fansq
