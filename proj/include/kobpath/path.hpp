#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "kobpath/metric.hpp"
#include "kobpath/types.hpp"

namespace kobpath {

struct ConstantSeg {
  CVec at;
};
struct AffineSeg {
  CVec from, to;
};
struct SampledSeg {
  std::vector<double> params;  // strictly increasing, spans the sub-interval
  std::vector<CVec> points;    // parallel to params
};

struct Segment {
  double t0 = 0.0, t1 = 0.0;
  std::variant<ConstantSeg, AffineSeg, SampledSeg> shape;
};

/// Piecewise-defined absolutely continuous path in a model domain.
/// Immutable after construction; the constructor validates the partition,
/// junction continuity (eps_join) and domain membership at probe points.
class Path {
 public:
  static constexpr double kEpsJoin = 1e-10;

  Path(Domain domain, double horizon, std::vector<Segment> segments);

  const Domain& domain() const { return domain_; }
  double horizon() const { return horizon_; }
  const std::vector<Segment>& segments() const { return segments_; }

  CVec evaluate(double t) const;
  std::size_t segment_index(double t) const;
  std::vector<double> breakpoints() const;

 private:
  Domain domain_;
  double horizon_ = 0.0;
  std::vector<Segment> segments_;
};

/// Derivative of the path at t: exact on Constant/Affine segment interiors,
/// central finite difference (step 1e-4 * horizon) on Sampled segments,
/// nullopt at junction parameters.
std::optional<CVec> derivative(const Path& path, double t);

/// Exact derivative of the piecewise representation: zero on Constant, the
/// chord on Affine, the containing linear piece's slope on Sampled. This is
/// what quadrature integrates; arc-length tables split at the sample nodes
/// so the integrand stays smooth on every sub-interval.
CVec interpolant_derivative(const Path& path, std::size_t seg_index, double t);

/// Finite-difference derivative backing the public `derivative`: central
/// with the h_fd step on Sampled segment interiors, one-sided second-order
/// near segment endpoints, exact on Constant/Affine. Defined everywhere on
/// the closed segment.
CVec smoothed_derivative(const Path& path, std::size_t seg_index, double t);

/// k_X(path(t); interpolant_derivative(t)) for the given segment.
double local_speed(const Path& path, std::size_t seg_index, double t);

/// k_X(path(t); smoothed_derivative(t)); second-order accurate at sample
/// nodes of a Sampled segment.
double smoothed_speed(const Path& path, std::size_t seg_index, double t);

struct SpeedSamples {
  std::vector<double> grid;    // strictly increasing, first = 0, last = T
  std::vector<double> speeds;  // k_X(path(t); path'(t)) at defined nodes
  std::vector<bool> defined;   // false at segment breakpoints
};

/// Samples the speed profile on all breakpoints plus n_per_segment interior
/// nodes per segment.
SpeedSamples speed_profile(const Path& path, int n_per_segment);

/// Ordered decomposition of the zero-speed set: disjoint closed intervals
/// of positive length plus isolated sub-threshold parameters.
struct IntervalSet {
  std::vector<std::pair<double, double>> intervals;
  std::vector<double> points;

  bool empty() const { return intervals.empty() && points.empty(); }
  double total_interval_length() const;
};

/// Detects the zero-speed set from samples: maximal sub-threshold runs
/// spanning at least min_length become intervals; Constant segments (and
/// zero-chord Affine segments) are reported exactly regardless of sampling;
/// shorter sub-threshold nodes are reported as points.
IntervalSet zero_speed_set(const SpeedSamples& samples, const Path& path,
                           double eps_speed, double min_length);

struct CollapsePlan {
  IntervalSet source;
  std::vector<double> cumulative_offsets;  // sum_{k<=j} (b_k - a_k)
  double tau = 0.0;                        // new horizon
};

/// Removes the given constant plateaus by the parameter-shift construction,
/// producing a path on [0, tau] with the same image. Requires the path to be
/// constant (variation <= 1e-9) on each interval.
std::pair<Path, CollapsePlan> collapse(const Path& path,
                                       const IntervalSet& zeros);

/// The continuous, surjective, monotone increasing, piecewise affine map A
/// with path = collapsed ∘ A: slope 1 off the plateaus, constant on each.
class PiecewiseAffineMap {
 public:
  PiecewiseAffineMap(std::vector<std::pair<double, double>> intervals,
                     std::vector<double> cumulative_offsets, double horizon,
                     double tau);
  double operator()(double t) const;
  double horizon() const { return horizon_; }
  double tau() const { return tau_; }

 private:
  std::vector<std::pair<double, double>> intervals_;
  std::vector<double> cum_;
  double horizon_ = 0.0, tau_ = 0.0;
};

PiecewiseAffineMap reparam_map(const CollapsePlan& plan);

/// Dense image sampling (breakpoints included).
std::vector<CVec> image_samples(const Path& path, int n);

/// Symmetric Hausdorff distance of finite point sets.
double hausdorff(const std::vector<CVec>& a, const std::vector<CVec>& b);

/// Largest Euclidean gap between consecutive image samples.
double max_sample_spacing(const std::vector<CVec>& pts);

}  // namespace kobpath
