#pragma once

#include <string_view>
#include <vector>

#include "fansq/fanstate.hpp"
#include "fansq/squeeze.hpp"

namespace fansq {

enum class ModelKind { Identity, TrappedIon };

std::string_view to_string(ModelKind m) noexcept;

/// Uniform axis: count >= 2 nodes from min to max inclusive.
struct Axis {
  double min = 0.0;
  double max = 1.0;
  int count = 101;

  double at(int i) const noexcept;
  double spacing() const noexcept { return (max - min) / (count - 1); }
  void validate(const char* name, double lower_bound, bool strict) const;
};

struct GridSpec {
  Axis xi_sq;
  Axis eta_sq;
  int k = 1;
  int order = 4;
  double phi = 0.0;

  void validate(ModelKind model) const;
};

enum class NodeStatus { OK, Singular, NotConverged };

std::string_view to_string(NodeStatus s) noexcept;

struct NodeValue {
  double S = 0.0;
  double A = 0.0;
  double B1 = 0.0;
  NodeStatus status = NodeStatus::OK;
};

/// S, A and B(1) at one parameter point; singular or divergent points are
/// reported through status with NaN values.
NodeValue evaluate_node(int k, SqueezeOrder order, double xi_sq, double eta_sq, ModelKind model,
                        double phi, const SeriesControl& ctl);

/// Node values in row-major order: row = eta^2 index, column = xi^2 index.
struct PhaseDiagram {
  GridSpec grid;
  ModelKind model = ModelKind::TrappedIon;
  std::vector<NodeValue> nodes;

  const NodeValue& at(int eta_index, int xi_index) const {
    return nodes[static_cast<std::size_t>(eta_index) * grid.xi_sq.count + xi_index];
  }
};

/// Worker count for scans: hardware concurrency, capped by FANSQ_THREADS when set.
int default_threads();

/// threads <= 0 selects default_threads(). Results do not depend on the thread count.
PhaseDiagram scan(const GridSpec& grid, ModelKind model, const SeriesControl& ctl = {},
                  int threads = 0);

struct ParamPoint {
  double xi_sq = 0.0;
  double eta_sq = 0.0;
};

/// S = 0 crossings along every grid row and column, refined by bisection to
/// tol in the moving parameter, ordered by angle about their centroid.
std::vector<ParamPoint> trace_boundary(const PhaseDiagram& diagram, const SeriesControl& ctl = {},
                                       double tol = 1e-6);
std::vector<ParamPoint> trace_boundary(const GridSpec& grid, ModelKind model,
                                       const SeriesControl& ctl = {}, double tol = 1e-6,
                                       int threads = 0);

/// eta^2 values in a range where A = |B(1)| at fixed xi^2.
struct IntersectionSet {
  double xi_sq = 0.0;
  int k = 1;
  int order = 4;
  std::vector<double> roots;  // strictly increasing
  /// sign(B(1)) on each segment cut by the roots, from the range start to its end
  /// (roots.size() + 1 entries).
  std::vector<int> signs;
  /// Scan nodes skipped as singular or divergent.
  std::vector<double> skipped;
};

/// A = |B(1)| holds exactly where A - B(1) or A + B(1) vanishes. Both smooth
/// functions are scanned on eta_sq, sign changes bisected to tol, and roots
/// closer than 10 tol merged.
IntersectionSet find_intersections(double xi_sq, int k, SqueezeOrder order, const Axis& eta_sq,
                                   ModelKind model, const SeriesControl& ctl = {},
                                   double tol = 1e-6);

struct PolarSample {
  double phi = 0.0;
  double S = 0.0;
  double raw_moment = 0.0;  // S + R_N
};

struct PolarProfile {
  double reference = 0.0;  // R_N
  std::vector<PolarSample> samples;
};

/// S and <(dX_phi)^N> at `samples` uniform angles in [0, 2 pi). samples >= 8k.
PolarProfile polar_profile(const FanState& state, SqueezeOrder order, int samples);

struct CurvePoint {
  double xi_sq = 0.0;
  double eta_sq = 0.0;
  double s_min = 0.0;
  bool squeezing = false;
};

/// For each xi^2 column, the eta^2 minimizing S (grid seed, golden-section
/// refinement to tol). Columns without negative S carry squeezing = false.
/// Throws EmptyBoundary when no column squeezes.
std::vector<CurvePoint> max_squeeze_curve(const PhaseDiagram& diagram,
                                          const SeriesControl& ctl = {}, double tol = 1e-6);
std::vector<CurvePoint> max_squeeze_curve(const GridSpec& grid, ModelKind model,
                                          const SeriesControl& ctl = {}, double tol = 1e-6,
                                          int threads = 0);

}  // namespace fansq
