#include "fansq/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include "fansq/errors.hpp"
#include "optimize.hpp"

namespace fansq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FanConfig make_config(int k, double xi_sq, double eta_sq, ModelKind model) {
  return model == ModelKind::Identity ? FanConfig::identity(k, xi_sq)
                                      : FanConfig::trapped_ion(k, xi_sq, eta_sq);
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

}  // namespace

std::string_view to_string(ModelKind m) noexcept {
  return m == ModelKind::Identity ? "identity" : "trapped-ion";
}

std::string_view to_string(NodeStatus s) noexcept {
  switch (s) {
    case NodeStatus::OK:
      return "OK";
    case NodeStatus::Singular:
      return "Singular";
    case NodeStatus::NotConverged:
      return "NotConverged";
  }
  return "?";
}

double Axis::at(int i) const noexcept {
  if (i == count - 1) return max;
  return min + i * spacing();
}

void Axis::validate(const char* name, double lower_bound, bool strict) const {
  const std::string n(name);
  if (!std::isfinite(min) || !std::isfinite(max)) throw DomainError(n + ": bounds must be finite");
  if (!(min < max)) throw DomainError(n + ": min must be below max");
  if (count < 2) throw DomainError(n + ": count must be >= 2");
  if (strict ? !(min > lower_bound) : !(min >= lower_bound))
    throw DomainError(n + (strict ? ": values must be positive" : ": values must be >= 0"));
}

void GridSpec::validate(ModelKind model) const {
  xi_sq.validate("xi^2 axis", 0.0, false);
  if (model == ModelKind::TrappedIon)
    eta_sq.validate("eta^2 axis", 0.0, true);
  else
    eta_sq.validate("eta^2 axis", -std::numeric_limits<double>::infinity(), false);
  if (k < 1) throw DomainError("grid: k must be >= 1");
  SqueezeOrder{order};
  if (!std::isfinite(phi)) throw DomainError("grid: phi must be finite");
}

NodeValue evaluate_node(int k, SqueezeOrder order, double xi_sq, double eta_sq, ModelKind model,
                        double phi, const SeriesControl& ctl) {
  NodeValue v;
  try {
    const FanState state(make_config(k, xi_sq, eta_sq, model), ctl);
    const SqueezeCoeffs c = coefficients(state, order);
    v.A = c.A;
    v.B1 = c.b1();
    v.S = squeeze_parameter(c, phi);
  } catch (const SingularNonlinearity&) {
    v = {kNaN, kNaN, kNaN, NodeStatus::Singular};
  } catch (const SeriesNotConverged&) {
    v = {kNaN, kNaN, kNaN, NodeStatus::NotConverged};
  }
  return v;
}

int default_threads() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("FANSQ_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
  }
  return n;
}

PhaseDiagram scan(const GridSpec& grid, ModelKind model, const SeriesControl& ctl, int threads) {
  grid.validate(model);
  ctl.validate();
  const SqueezeOrder order(grid.order);
  PhaseDiagram d;
  d.grid = grid;
  d.model = model;
  const int nx = grid.xi_sq.count;
  const int ny = grid.eta_sq.count;
  d.nodes.resize(static_cast<std::size_t>(nx) * ny);
  detail::parallel_for(nx * ny, threads > 0 ? threads : default_threads(), [&](int idx) {
    const int row = idx / nx;
    const int col = idx % nx;
    d.nodes[static_cast<std::size_t>(idx)] = evaluate_node(
        grid.k, order, grid.xi_sq.at(col), grid.eta_sq.at(row), model, grid.phi, ctl);
  });
  return d;
}

std::vector<ParamPoint> trace_boundary(const PhaseDiagram& diagram, const SeriesControl& ctl,
                                       double tol) {
  const GridSpec& g = diagram.grid;
  const SqueezeOrder order(g.order);
  auto s_at = [&](double xi_sq, double eta_sq) -> std::optional<double> {
    const NodeValue v = evaluate_node(g.k, order, xi_sq, eta_sq, diagram.model, g.phi, ctl);
    if (v.status != NodeStatus::OK) return std::nullopt;
    return v.S;
  };

  std::vector<ParamPoint> pts;
  const int nx = g.xi_sq.count;
  const int ny = g.eta_sq.count;
  for (int r = 0; r < ny; ++r) {
    const double eta_sq = g.eta_sq.at(r);
    for (int c = 0; c + 1 < nx; ++c) {
      const NodeValue& a = diagram.at(r, c);
      const NodeValue& b = diagram.at(r, c + 1);
      if (a.status != NodeStatus::OK || b.status != NodeStatus::OK || !opposite(a.S, b.S))
        continue;
      auto along = [&](double x) { return s_at(x, eta_sq); };
      if (auto x = detail::bisect_root(along, g.xi_sq.at(c), a.S, g.xi_sq.at(c + 1), b.S, tol))
        pts.push_back({*x, eta_sq});
    }
  }
  for (int c = 0; c < nx; ++c) {
    const double xi_sq = g.xi_sq.at(c);
    for (int r = 0; r + 1 < ny; ++r) {
      const NodeValue& a = diagram.at(r, c);
      const NodeValue& b = diagram.at(r + 1, c);
      if (a.status != NodeStatus::OK || b.status != NodeStatus::OK || !opposite(a.S, b.S))
        continue;
      auto along = [&](double y) { return s_at(xi_sq, y); };
      if (auto y = detail::bisect_root(along, g.eta_sq.at(r), a.S, g.eta_sq.at(r + 1), b.S, tol))
        pts.push_back({xi_sq, *y});
    }
  }
  if (pts.empty()) throw EmptyBoundary("trace_boundary: S does not change sign on the grid");

  // Order as a polyline around the centroid, in axis-normalized coordinates.
  double cx = 0.0, cy = 0.0;
  for (const auto& p : pts) {
    cx += p.xi_sq;
    cy += p.eta_sq;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  const double sx = g.xi_sq.max - g.xi_sq.min;
  const double sy = g.eta_sq.max - g.eta_sq.min;
  auto angle = [&](const ParamPoint& p) {
    return std::atan2((p.eta_sq - cy) / sy, (p.xi_sq - cx) / sx);
  };
  std::stable_sort(pts.begin(), pts.end(), [&](const ParamPoint& a, const ParamPoint& b) {
    const double ta = angle(a), tb = angle(b);
    if (ta != tb) return ta < tb;
    return a.xi_sq != b.xi_sq ? a.xi_sq < b.xi_sq : a.eta_sq < b.eta_sq;
  });
  return pts;
}

std::vector<ParamPoint> trace_boundary(const GridSpec& grid, ModelKind model,
                                       const SeriesControl& ctl, double tol, int threads) {
  return trace_boundary(scan(grid, model, ctl, threads), ctl, tol);
}

IntersectionSet find_intersections(double xi_sq, int k, SqueezeOrder order, const Axis& eta_sq,
                                   ModelKind model, const SeriesControl& ctl, double tol) {
  if (order.value() < 4 * k)
    throw DomainError("find_intersections: requires N >= 4k, B(1) does not exist below");
  eta_sq.validate("eta^2 range", 0.0, model == ModelKind::TrappedIon);
  if (!(tol > 0.0)) throw DomainError("find_intersections: tolerance must be positive");

  IntersectionSet out;
  out.xi_sq = xi_sq;
  out.k = k;
  out.order = order.value();

  auto eval = [&](double y) { return evaluate_node(k, order, xi_sq, y, model, 0.0, ctl); };
  std::vector<NodeValue> nodes(static_cast<std::size_t>(eta_sq.count));
  for (int i = 0; i < eta_sq.count; ++i) {
    nodes[static_cast<std::size_t>(i)] = eval(eta_sq.at(i));
    if (nodes[static_cast<std::size_t>(i)].status != NodeStatus::OK)
      out.skipped.push_back(eta_sq.at(i));
  }

  std::vector<double> roots;
  for (int branch : {-1, 1}) {
    // branch -1: A - B(1); branch +1: A + B(1)
    auto h = [&](double y) -> std::optional<double> {
      const NodeValue v = eval(y);
      if (v.status != NodeStatus::OK) return std::nullopt;
      return v.A + branch * v.B1;
    };
    for (int i = 0; i + 1 < eta_sq.count; ++i) {
      const NodeValue& a = nodes[static_cast<std::size_t>(i)];
      const NodeValue& b = nodes[static_cast<std::size_t>(i + 1)];
      if (a.status != NodeStatus::OK || b.status != NodeStatus::OK) continue;
      const double ha = a.A + branch * a.B1;
      const double hb = b.A + branch * b.B1;
      if (!opposite(ha, hb)) continue;
      if (auto r = detail::bisect_root(h, eta_sq.at(i), ha, eta_sq.at(i + 1), hb, tol))
        roots.push_back(*r);
    }
  }
  std::sort(roots.begin(), roots.end());
  for (double r : roots) {
    if (out.roots.empty() || r - out.roots.back() > 10.0 * tol) out.roots.push_back(r);
  }

  std::vector<double> cuts{eta_sq.min};
  cuts.insert(cuts.end(), out.roots.begin(), out.roots.end());
  cuts.push_back(eta_sq.max);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    // Probe the segment midpoint, nudging off a singular point if needed.
    int sign = 0;
    for (double frac : {0.5, 0.37, 0.63, 0.21, 0.79}) {
      const NodeValue v = eval(cuts[s] + frac * (cuts[s + 1] - cuts[s]));
      if (v.status == NodeStatus::OK) {
        sign = sign_of(v.B1);
        break;
      }
    }
    out.signs.push_back(sign);
  }
  return out;
}

PolarProfile polar_profile(const FanState& state, SqueezeOrder order, int samples) {
  const int k = state.config().k;
  if (samples < 8 * k)
    throw DomainError("polar_profile: need at least 8k = " + std::to_string(8 * k) + " samples");
  const SqueezeCoeffs c = coefficients(state, order);
  PolarProfile p;
  p.reference = vacuum_benchmark(order);
  p.samples.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / samples;
    const double s = squeeze_parameter(c, phi);
    p.samples.push_back({phi, s, s + p.reference});
  }
  return p;
}

std::vector<CurvePoint> max_squeeze_curve(const PhaseDiagram& diagram, const SeriesControl& ctl,
                                          double tol) {
  const GridSpec& g = diagram.grid;
  const SqueezeOrder order(g.order);
  const int nx = g.xi_sq.count;
  const int ny = g.eta_sq.count;
  std::vector<CurvePoint> curve;
  bool any = false;
  for (int c = 0; c < nx; ++c) {
    const double xi_sq = g.xi_sq.at(c);
    int best = -1;
    for (int r = 0; r < ny; ++r) {
      const NodeValue& v = diagram.at(r, c);
      if (v.status != NodeStatus::OK) continue;
      if (best < 0 || v.S < diagram.at(best, c).S) best = r;
    }
    CurvePoint pt{xi_sq, kNaN, kNaN, false};
    if (best >= 0) {
      pt.eta_sq = g.eta_sq.at(best);
      pt.s_min = diagram.at(best, c).S;
    }
    if (best < 0 || !(pt.s_min < 0.0)) {
      curve.push_back(pt);
      continue;
    }
    auto s_at = [&](double y) {
      const NodeValue v = evaluate_node(g.k, order, xi_sq, y, diagram.model, g.phi, ctl);
      return v.status == NodeStatus::OK ? v.S : std::numeric_limits<double>::infinity();
    };
    const double lo = g.eta_sq.at(std::max(best - 1, 0));
    const double hi = g.eta_sq.at(std::min(best + 1, ny - 1));
    const double y = detail::golden_section(s_at, lo, hi, true, tol);
    const double sy = s_at(y);
    if (sy < pt.s_min) {
      pt.eta_sq = y;
      pt.s_min = sy;
    }
    pt.squeezing = true;
    any = true;
    curve.push_back(pt);
  }
  if (!any) throw EmptyBoundary("max_squeeze_curve: no column has S < 0");
  return curve;
}

std::vector<CurvePoint> max_squeeze_curve(const GridSpec& grid, ModelKind model,
                                          const SeriesControl& ctl, double tol, int threads) {
  return max_squeeze_curve(scan(grid, model, ctl, threads), ctl, tol);
}

}  // namespace fansq
