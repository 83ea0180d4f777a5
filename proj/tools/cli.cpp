#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fansq/fansq.hpp"
#include "serialize.hpp"

#ifndef FANSQ_VERSION
#define FANSQ_VERSION "0.0.0"
#endif

namespace fansq::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& flag, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw UsageError(flag + ": expected a real number, got '" + text + "'");
  return v;
}

double parse_single(const std::string& flag, const std::string& text) {
  if (text.find(':') != std::string::npos)
    throw UsageError(flag + ": expected a single value, got range '" + text + "'");
  return parse_real(flag, text);
}

/// "min:max[:count]"
Axis parse_range(const std::string& flag, const std::string& text, int default_count) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 2 || parts.size() > 3)
    throw UsageError(flag + ": expected min:max[:count], got '" + text + "'");
  Axis a;
  a.min = parse_real(flag, parts[0]);
  a.max = parse_real(flag, parts[1]);
  a.count = default_count;
  if (parts.size() == 3) {
    const std::string& c = parts[2];
    auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), a.count);
    if (ec != std::errc{} || ptr != c.data() + c.size())
      throw UsageError(flag + ": count must be an integer, got '" + c + "'");
  }
  if (!(a.min < a.max)) throw UsageError(flag + ": min must be below max");
  if (a.count < 2) throw UsageError(flag + ": count must be >= 2");
  return a;
}

struct Options {
  int k = 0;
  int order = 0;
  std::string xi_sq;
  std::string eta_sq;
  std::string model;
  std::vector<double> phis;
  double phi = 0.0;
  int samples = 0;
  double tol = 0.0;
  int threads = 0;
  int max_order = 8;
  double omega0 = 0.0;
  double omega1 = 0.0;
  double eta = 0.0;
  double phase = 0.0;
  int sideband = 0;
  std::string format = "json";
  std::string output;
  SeriesControl ctl;
};

struct Flags {
  CLI::Option* eta_sq = nullptr;
  CLI::Option* model = nullptr;
  CLI::Option* phi = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* tol = nullptr;
};

struct Result {
  Json params = Json::object();
  Json data = Json::object();
  Table table;
  std::vector<std::string> notes;
  int exit_code = kOk;
};

struct ModelChoice {
  ModelKind kind = ModelKind::Identity;
  double eta_sq = 0.0;
};

ModelKind parse_model_name(const std::string& name) {
  if (name == "identity") return ModelKind::Identity;
  if (name == "trapped-ion") return ModelKind::TrappedIon;
  throw UsageError("--model: expected 'identity' or 'trapped-ion', got '" + name + "'");
}

/// Single-point commands: model defaults to trapped-ion iff --eta-sq is present.
ModelChoice resolve_point_model(const Options& o, const Flags& f) {
  const bool have_eta = f.eta_sq && f.eta_sq->count() > 0;
  ModelChoice m;
  if (f.model && f.model->count() > 0) {
    m.kind = parse_model_name(o.model);
  } else {
    m.kind = have_eta ? ModelKind::TrappedIon : ModelKind::Identity;
  }
  if (m.kind == ModelKind::Identity && have_eta)
    throw UsageError("--eta-sq: contradicts --model identity (f = 1 has no eta dependence)");
  if (m.kind == ModelKind::TrappedIon) {
    if (!have_eta) throw UsageError("--eta-sq: required for the trapped-ion model");
    m.eta_sq = parse_single("--eta-sq", o.eta_sq);
    if (!(m.eta_sq > 0.0)) throw UsageError("--eta-sq: must be positive");
  }
  return m;
}

FanConfig make_config(int k, double xi_sq, const ModelChoice& m) {
  return m.kind == ModelKind::Identity ? FanConfig::identity(k, xi_sq)
                                       : FanConfig::trapped_ion(k, xi_sq, m.eta_sq);
}

void require_k(const Options& o) {
  if (o.k < 1) throw UsageError("--k: fan order must be >= 1");
}

SqueezeOrder require_order(const Options& o) {
  if (o.order < 2 || o.order % 2 != 0)
    throw UsageError("--N: squeezing order must be an even integer >= 2");
  return SqueezeOrder(o.order);
}

double require_xi_sq(const Options& o) {
  const double v = parse_single("--xi-sq", o.xi_sq);
  if (v < 0.0) throw UsageError("--xi-sq: must be >= 0");
  return v;
}

void put_model(Json& params, const ModelChoice& m) {
  params["model"] = std::string(to_string(m.kind));
  if (m.kind == ModelKind::TrappedIon) params["eta_sq"] = m.eta_sq;
}

Json coeffs_json(const SqueezeCoeffs& c) {
  Json b = Json::array();
  for (double x : c.B) b.push_back(real(x));
  return {{"A", real(c.A)}, {"B", b}, {"P", c.harmonics()}};
}

Json angles_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

// --- subcommands -----------------------------------------------------------

Result cmd_squeeze(const Options& o, const Flags& f) {
  require_k(o);
  const SqueezeOrder order = require_order(o);
  const double xi_sq = require_xi_sq(o);
  const ModelChoice m = resolve_point_model(o, f);
  if (f.phi->count() > 0 && f.samples->count() > 0)
    throw UsageError("--samples: contradicts --phi; give one or the other");

  std::vector<double> phis = o.phis;
  if (f.samples->count() > 0) {
    if (o.samples < 1) throw UsageError("--samples: must be >= 1");
    phis.clear();
    for (int i = 0; i < o.samples; ++i) phis.push_back(2.0 * kPi * i / o.samples);
  } else if (phis.empty()) {
    phis = {0.0, kPi / (4.0 * o.k)};
  }

  Result r;
  r.params = {{"k", o.k}, {"N", o.order}, {"xi_sq", xi_sq}};
  put_model(r.params, m);

  const FanState state(make_config(o.k, xi_sq, m), o.ctl);
  const SqueezeCoeffs c = coefficients(state, order);
  const double rn = vacuum_benchmark(order);
  r.data = coeffs_json(c);
  r.data["R_N"] = rn;
  r.data["min_order"] = min_order(o.k);
  const bool below = o.order < min_order(o.k);
  r.data["below_min_order"] = below;
  Json flags = Json::array();
  if (below) {
    const std::string note = "below minimum order " + std::to_string(min_order(o.k));
    flags.push_back(note);
    r.notes.push_back(note);
  }
  r.data["flags"] = flags;
  r.data["dominance_ratio"] = dominance_ratio(c);

  Json points = Json::array();
  r.table.columns = {"phi", "S", "raw_moment"};
  for (double phi : phis) {
    const double s = squeeze_parameter(c, phi);
    points.push_back({{"phi", phi}, {"S", s}, {"raw_moment", s + rn}});
    r.table.rows.push_back({phi, s, s + rn});
  }
  r.data["points"] = points;
  return r;
}

GridSpec grid_from(const Options& o, const Flags& f) {
  require_k(o);
  require_order(o);
  if (f.model->count() > 0 && parse_model_name(o.model) != ModelKind::TrappedIon)
    throw UsageError("--model: grids span eta^2, which only the trapped-ion model depends on");
  if (o.xi_sq.empty()) throw UsageError("--xi-sq: range min:max[:count] required");
  if (o.eta_sq.empty()) throw UsageError("--eta-sq: range min:max[:count] required");
  GridSpec g;
  g.xi_sq = parse_range("--xi-sq", o.xi_sq, 101);
  g.eta_sq = parse_range("--eta-sq", o.eta_sq, 101);
  if (g.xi_sq.min < 0.0) throw UsageError("--xi-sq: values must be >= 0");
  if (!(g.eta_sq.min > 0.0)) throw UsageError("--eta-sq: values must be positive");
  g.k = o.k;
  g.order = o.order;
  g.phi = f.phi->count() > 0 ? o.phis.front() : kPi / (4.0 * o.k);
  if (o.phis.size() > 1) throw UsageError("--phi: grids take a single angle");
  return g;
}

Json axis_json(const Axis& a) { return {{"min", a.min}, {"max", a.max}, {"count", a.count}}; }

Json grid_params(const GridSpec& g) {
  return {{"k", g.k},         {"N", g.order},
          {"phi", g.phi},     {"model", "trapped-ion"},
          {"xi_sq", axis_json(g.xi_sq)}, {"eta_sq", axis_json(g.eta_sq)}};
}

Result cmd_scan(const Options& o, const Flags& f) {
  const GridSpec g = grid_from(o, f);
  const PhaseDiagram d = scan(g, ModelKind::TrappedIon, o.ctl, o.threads);

  Result r;
  r.params = grid_params(g);
  r.table.columns = {"xi_sq", "eta_sq", "S", "A", "B1", "status"};
  Json s = Json::array(), a = Json::array(), b = Json::array(), st = Json::array();
  long long negative = 0, b1_nonpositive = 0, ok = 0;
  for (int row = 0; row < g.eta_sq.count; ++row) {
    Json srow = Json::array(), arow = Json::array(), brow = Json::array(), strow = Json::array();
    for (int col = 0; col < g.xi_sq.count; ++col) {
      const NodeValue& v = d.at(row, col);
      const std::string status(to_string(v.status));
      r.table.rows.push_back({g.xi_sq.at(col), g.eta_sq.at(row), v.S, v.A, v.B1, status});
      srow.push_back(real(v.S));
      arow.push_back(real(v.A));
      brow.push_back(real(v.B1));
      strow.push_back(status);
      if (v.status == NodeStatus::OK) {
        ++ok;
        if (v.S < 0.0) ++negative;
        if (!(v.B1 > 0.0) && g.xi_sq.at(col) > 0.0) ++b1_nonpositive;
      }
    }
    s.push_back(srow);
    a.push_back(arow);
    b.push_back(brow);
    st.push_back(strow);
  }
  r.data = {{"xi_sq", axis_json(g.xi_sq)},
            {"eta_sq", axis_json(g.eta_sq)},
            {"layout", "row = eta_sq index, column = xi_sq index"},
            {"S", s},
            {"A", a},
            {"B1", b},
            {"status", st},
            {"summary",
             {{"ok_nodes", ok}, {"squeezed_nodes", negative}, {"b1_nonpositive_nodes", b1_nonpositive}}}};
  return r;
}

Result cmd_boundary(const Options& o, const Flags& f) {
  const GridSpec g = grid_from(o, f);
  const double tol = f.tol->count() > 0 ? o.tol : 1e-6;
  if (!(tol > 0.0)) throw UsageError("--tol: must be positive");
  const PhaseDiagram d = scan(g, ModelKind::TrappedIon, o.ctl, o.threads);
  const std::vector<ParamPoint> pts = trace_boundary(d, o.ctl, tol);

  Result r;
  r.params = grid_params(g);
  r.params["tol"] = tol;
  r.table.columns = {"xi_sq", "eta_sq", "S"};
  Json boundary = Json::array();
  const SqueezeOrder order(g.order);
  for (const auto& p : pts) {
    const NodeValue v = evaluate_node(g.k, order, p.xi_sq, p.eta_sq, ModelKind::TrappedIon, g.phi, o.ctl);
    boundary.push_back({{"xi_sq", p.xi_sq}, {"eta_sq", p.eta_sq}, {"S", real(v.S)}});
    r.table.rows.push_back({p.xi_sq, p.eta_sq, v.S});
  }
  Json curve = Json::array();
  for (const auto& c : max_squeeze_curve(d, o.ctl, tol)) {
    if (!c.squeezing) continue;
    curve.push_back({{"xi_sq", c.xi_sq}, {"eta_sq", c.eta_sq}, {"S_min", c.s_min}});
  }
  r.data = {{"boundary", boundary}, {"max_squeeze_curve", curve}};
  return r;
}

Result cmd_intersect(const Options& o, const Flags& f) {
  require_k(o);
  const SqueezeOrder order = require_order(o);
  if (o.order < 4 * o.k)
    throw UsageError("--N: intersections need N >= 4k = " + std::to_string(4 * o.k));
  const double xi_sq = require_xi_sq(o);
  ModelKind kind = ModelKind::TrappedIon;
  if (f.model->count() > 0) kind = parse_model_name(o.model);
  const Axis range = parse_range("--eta-sq", o.eta_sq.empty() ? "0.05:0.45:401" : o.eta_sq, 401);
  if (kind == ModelKind::TrappedIon && !(range.min > 0.0))
    throw UsageError("--eta-sq: values must be positive");
  const double tol = f.tol->count() > 0 ? o.tol : 1e-6;
  if (!(tol > 0.0)) throw UsageError("--tol: must be positive");

  const IntersectionSet s = find_intersections(xi_sq, o.k, order, range, kind, o.ctl, tol);
  Result r;
  r.params = {{"k", o.k},
              {"N", o.order},
              {"xi_sq", xi_sq},
              {"model", std::string(to_string(kind))},
              {"eta_sq", axis_json(range)},
              {"tol", tol}};
  Json skipped = Json::array();
  for (double y : s.skipped) skipped.push_back(y);
  r.data = {{"roots", angles_json(s.roots)}, {"signs", s.signs}, {"skipped", skipped}};
  r.table.columns = {"index", "eta_sq"};
  for (std::size_t i = 0; i < s.roots.size(); ++i)
    r.table.rows.push_back({static_cast<long long>(i), s.roots[i]});
  return r;
}

Result cmd_polar(const Options& o, const Flags& f) {
  require_k(o);
  const SqueezeOrder order = require_order(o);
  const double xi_sq = require_xi_sq(o);
  const ModelChoice m = resolve_point_model(o, f);
  const int samples = f.samples->count() > 0 ? o.samples : 360;
  if (samples < 8 * o.k) throw UsageError("--samples: need at least 8k = " + std::to_string(8 * o.k));

  const FanState state(make_config(o.k, xi_sq, m), o.ctl);
  const PolarProfile p = polar_profile(state, order, samples);
  Result r;
  r.params = {{"k", o.k}, {"N", o.order}, {"xi_sq", xi_sq}, {"samples", samples}};
  put_model(r.params, m);
  Json phi = Json::array(), s = Json::array(), raw = Json::array();
  r.table.columns = {"phi", "S", "raw_moment"};
  for (const auto& x : p.samples) {
    phi.push_back(x.phi);
    s.push_back(x.S);
    raw.push_back(x.raw_moment);
    r.table.rows.push_back({x.phi, x.S, x.raw_moment});
  }
  r.data = {{"R_N", p.reference}, {"phi", phi}, {"S", s}, {"raw_moment", raw}};
  return r;
}

Result cmd_directions(const Options& o, const Flags& f) {
  require_k(o);
  const SqueezeOrder order = require_order(o);
  const double xi_sq = require_xi_sq(o);
  const ModelChoice m = resolve_point_model(o, f);

  const SqueezeCoeffs c = coefficients(FanState(make_config(o.k, xi_sq, m), o.ctl), order);
  const DirectionReport d = classify_directions(c);
  Result r;
  r.params = {{"k", o.k}, {"N", o.order}, {"xi_sq", xi_sq}};
  put_model(r.params, m);
  r.data = coeffs_json(c);
  r.data["regime"] = std::string(to_string(d.regime));
  r.data["squeeze_angles"] = angles_json(d.squeeze_angles);
  r.data["stretch_angles"] = angles_json(d.stretch_angles);
  r.data["s_min"] = d.s_min;
  r.data["s_max"] = d.s_max;
  r.table.columns = {"kind", "phi"};
  for (double a : d.squeeze_angles) r.table.rows.push_back({std::string("squeeze"), a});
  for (double a : d.stretch_angles) r.table.rows.push_back({std::string("stretch"), a});
  if (d.regime == Regime::NoSqueezing) r.notes.push_back("no squeezing at these parameters");
  return r;
}

double discrepancy(double series, double oracle) {
  const double diff = std::fabs(series - oracle);
  return std::fabs(oracle) < 1e-12 ? diff : diff / std::fabs(oracle);
}

Result cmd_oracle_check(const Options& o, const Flags& f) {
  require_k(o);
  const SqueezeOrder order = require_order(o);
  const double xi_sq = require_xi_sq(o);
  const ModelChoice m = resolve_point_model(o, f);
  if (o.max_order < 0) throw UsageError("--max-order: must be >= 0");
  const double tol = f.tol->count() > 0 ? o.tol : 1e-8;
  if (!(tol > 0.0)) throw UsageError("--tol: must be positive");

  const FanState state(make_config(o.k, xi_sq, m), o.ctl);
  const FockVector v = oracle_vector(state, std::max(o.order, 2 * o.max_order));

  Result r;
  r.params = {{"k", o.k}, {"N", o.order}, {"xi_sq", xi_sq}, {"max_order", o.max_order}, {"tol", tol}};
  put_model(r.params, m);
  r.table.columns = {"kind", "l", "m", "phi", "series", "oracle", "discrepancy"};

  double worst_moment = 0.0;
  Json moments = Json::array();
  for (int l = 0; l <= o.max_order; ++l) {
    for (int mm = 0; mm <= l; ++mm) {
      const double series = state.moment(l, mm);
      const std::complex<double> oracle = moment_oracle(v, l, mm);
      const double err = std::max(discrepancy(series, oracle.real()), std::fabs(oracle.imag()));
      worst_moment = std::max(worst_moment, err);
      moments.push_back({{"l", l}, {"m", mm}, {"series", series}, {"oracle", oracle.real()}, {"discrepancy", err}});
      r.table.rows.push_back({std::string("moment"), static_cast<long long>(l),
                              static_cast<long long>(mm), std::nan(""), series, oracle.real(), err});
    }
  }

  const SqueezeCoeffs c = coefficients(state, order);
  const double rn = vacuum_benchmark(order);
  double worst_quad = 0.0;
  Json quad = Json::array();
  for (double phi : {0.0, kPi / 8.0, kPi / (4.0 * o.k)}) {
    const double series = squeeze_parameter(c, phi) + rn;
    const double oracle = quadrature_moment(v, phi, order.value());
    const double err = discrepancy(series, oracle);
    worst_quad = std::max(worst_quad, err);
    quad.push_back({{"phi", phi}, {"series", series}, {"oracle", oracle}, {"discrepancy", err}});
    r.table.rows.push_back({std::string("quadrature"), -1LL, -1LL, phi, series, oracle, err});
  }
  const bool pass = worst_moment <= tol && worst_quad <= tol;
  r.data = {{"dim", v.dim()},
            {"tail_mass", v.tail_mass},
            {"max_moment_discrepancy", worst_moment},
            {"max_quadrature_discrepancy", worst_quad},
            {"pass", pass},
            {"moments", moments},
            {"quadrature", quad}};
  if (!pass) {
    r.exit_code = kCheckFailed;
    r.notes.push_back("series/oracle discrepancy exceeds tolerance");
  }
  return r;
}

Result cmd_xi_from_drive(const Options& o, const Flags&) {
  DriveParams d{o.omega0, o.omega1, o.eta, o.phase, o.sideband};
  d = d.normalized();
  const double xi = xi_from_drive(d);
  const std::complex<double> power = xi_power_from_drive(d);
  Result r;
  r.params = {{"omega0", d.omega0}, {"omega1", d.omega1}, {"eta", d.eta},
              {"phase", d.phase},   {"K", d.quantum_order}};
  r.data = {{"xi", xi}, {"xi_sq", xi * xi}, {"xi_power", {{"re", power.real()}, {"im", power.imag()}}}};
  r.table.columns = {"xi", "xi_sq"};
  r.table.rows.push_back({xi, xi * xi});
  return r;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("--output: cannot open '" + path + "' for writing");
  f << body;
  if (!f) throw UsageError("--output: failed writing '" + path + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher-order amplitude squeezing of fan states", "fansq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FANSQ_VERSION);

  Options o;
  std::map<CLI::App*, Flags> flags;
  using Handler = Result (*)(const Options&, const Flags&);
  std::map<CLI::App*, Handler> handlers;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", o.output, "Write to this file instead of stdout");
    sub->add_option("--rel-tol", o.ctl.rel_tol, "Series tail tolerance");
    sub->add_option("--n-max", o.ctl.n_max, "Series term cap");
    sub->add_option("--consecutive-small", o.ctl.consecutive_small, "Small terms required to stop");
    sub->add_option("--laguerre-floor", o.ctl.laguerre_floor, "|L^0| below this is singular");
  };
  auto physics = [&](CLI::App* sub, bool eta_is_range) {
    Flags& f = flags[sub];
    sub->add_option("--k", o.k, "Fan order k (2k-quantum components)")->required();
    sub->add_option("--N", o.order, "Even squeezing order N")->required();
    sub->add_option("--xi-sq", o.xi_sq, eta_is_range ? "xi^2 range min:max[:count]" : "xi^2")
        ->required();
    f.eta_sq = sub->add_option("--eta-sq", o.eta_sq,
                               eta_is_range ? "eta^2 range min:max[:count]" : "Lamb-Dicke eta^2");
    f.model = sub->add_option("--model", o.model, "identity | trapped-ion");
    common(sub);
    return &f;
  };
  auto subcommand = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    handlers[sub] = h;
    return sub;
  };

  {
    auto* sub = subcommand("squeeze", "A, B(p) and S at given or sampled angles", cmd_squeeze);
    Flags* f = physics(sub, false);
    f->phi = sub->add_option("--phi", o.phis, "Quadrature angle(s), radians");
    f->samples = sub->add_option("--samples", o.samples, "Uniform angles over [0, 2pi)");
  }
  {
    auto* sub = subcommand("scan", "Phase diagram of S over (xi^2, eta^2)", cmd_scan);
    Flags* f = physics(sub, true);
    f->phi = sub->add_option("--phi", o.phis, "Quadrature angle (default pi/4k)");
    sub->add_option("--threads", o.threads, "Worker threads (default: FANSQ_THREADS or all cores)");
  }
  {
    auto* sub = subcommand("boundary", "S = 0 boundary and maximal-squeezing curve", cmd_boundary);
    Flags* f = physics(sub, true);
    f->phi = sub->add_option("--phi", o.phis, "Quadrature angle (default pi/4k)");
    f->tol = sub->add_option("--tol", o.tol, "Bisection tolerance in the moving parameter");
    sub->add_option("--threads", o.threads, "Worker threads");
  }
  {
    auto* sub = subcommand("intersect", "eta^2 values where A = |B(1)|", cmd_intersect);
    Flags* f = physics(sub, true);
    f->tol = sub->add_option("--tol", o.tol, "Bisection tolerance in eta^2");
  }
  {
    auto* sub = subcommand("polar", "Polar profile of S and <(dX)^N>", cmd_polar);
    Flags* f = physics(sub, false);
    f->samples = sub->add_option("--samples", o.samples, "Angles over [0, 2pi) (default 360)");
  }
  {
    auto* sub = subcommand("directions", "Squeezing and stretching directions", cmd_directions);
    physics(sub, false);
  }
  {
    auto* sub = subcommand("oracle-check", "Series vs truncated-Fock oracle", cmd_oracle_check);
    Flags* f = physics(sub, false);
    sub->add_option("--max-order", o.max_order, "Largest l, m compared");
    f->tol = sub->add_option("--tol", o.tol, "Pass threshold (default 1e-8)");
  }
  {
    auto* sub = subcommand("xi-from-drive", "|xi| from trapped-ion drive parameters", cmd_xi_from_drive);
    flags[sub];
    sub->add_option("--omega0", o.omega0, "Carrier Rabi frequency")->required();
    sub->add_option("--omega1", o.omega1, "Sideband Rabi frequency")->required();
    sub->add_option("--eta", o.eta, "Lamb-Dicke parameter")->required();
    sub->add_option("--phase", o.phase, "Laser phase difference, radians");
    sub->add_option("--K", o.sideband, "Sideband order")->required();
    common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidArguments;
  }

  CLI::App* sub = app.get_subcommands().front();
  Flags& f = flags[sub];
  try {
    o.ctl.validate();
    Result r = handlers.at(sub)(o, f);

    RunManifest manifest;
    manifest.subcommand = sub->get_name();
    manifest.parameters = r.params;
    manifest.series = o.ctl;
    manifest.version = FANSQ_VERSION;
    manifest.timestamp = manifest_timestamp();

    const Format format = o.format == "csv" ? Format::Csv : Format::Json;
    const std::string body =
        format == Format::Json ? to_json_document(manifest, r.data) : to_csv(r.table);
    if (o.output.empty()) {
      out << body;
    } else {
      write_file(o.output, body);
      if (format == Format::Csv)
        write_file(o.output + ".manifest.json", manifest.to_json().dump(2) + "\n");
    }
    for (const auto& n : r.notes) err << "note: " << n << '\n';
    return r.exit_code;
  } catch (const UsageError& e) {
    err << "fansq " << sub->get_name() << ": " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const DomainError& e) {
    err << "fansq " << sub->get_name() << ": invalid parameters: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const Error& e) {
    err << "fansq " << sub->get_name() << ": " << e.what() << '\n';
    return kComputationFailed;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fansq::cli
