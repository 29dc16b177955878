#include "kobpath/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kobpath/numerics.hpp"

namespace kobpath {

namespace {

constexpr double kEpsConst = 1e-9;   // constancy tolerance for collapse
constexpr double kFdFactor = 1e-4;   // finite-difference step = factor * T

double param_tol(double horizon) { return 1e-12 * (1.0 + horizon); }

const SampledSeg* as_sampled(const Segment& seg) {
  return std::get_if<SampledSeg>(&seg.shape);
}

CVec eval_segment(const Segment& seg, double t) {
  if (const auto* c = std::get_if<ConstantSeg>(&seg.shape)) return c->at;
  if (const auto* a = std::get_if<AffineSeg>(&seg.shape)) {
    const double frac = (t - seg.t0) / (seg.t1 - seg.t0);
    CVec p(a->from.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = a->from[i] + frac * (a->to[i] - a->from[i]);
    return p;
  }
  const auto& s = std::get<SampledSeg>(seg.shape);
  const double tc = std::clamp(t, s.params.front(), s.params.back());
  auto it = std::upper_bound(s.params.begin(), s.params.end(), tc);
  std::size_t i = static_cast<std::size_t>(it - s.params.begin());
  if (i == 0) i = 1;
  if (i >= s.params.size()) i = s.params.size() - 1;
  const double frac = (tc - s.params[i - 1]) / (s.params[i] - s.params[i - 1]);
  CVec p(s.points[i].size());
  for (std::size_t c = 0; c < p.size(); ++c)
    p[c] = s.points[i - 1][c] + frac * (s.points[i][c] - s.points[i - 1][c]);
  return p;
}

bool affine_is_constant(const AffineSeg& a) {
  return euclid_dist(a.from, a.to) <= kEpsConst;
}

}  // namespace

// ---------------------------------------------------------------------------
// Path

Path::Path(Domain domain, double horizon, std::vector<Segment> segments)
    : domain_(std::move(domain)),
      horizon_(horizon),
      segments_(std::move(segments)) {
  if (!(horizon_ > 0.0)) throw InvalidPath("path horizon must be positive");
  if (segments_.empty()) throw InvalidPath("path needs at least one segment");
  const double tol = param_tol(horizon_);
  if (std::abs(segments_.front().t0) > tol)
    throw InvalidPath("segments must start at t = 0");
  if (std::abs(segments_.back().t1 - horizon_) > tol)
    throw InvalidPath("segments must end at t = horizon");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    Segment& seg = segments_[i];
    if (!(seg.t1 > seg.t0))
      throw InvalidPath("segment sub-intervals must have positive length");
    if (i > 0 && std::abs(seg.t0 - segments_[i - 1].t1) > tol)
      throw InvalidPath("segment sub-intervals must partition [0, T]");
    if (const auto* s = as_sampled(seg)) {
      if (s->params.size() != s->points.size() || s->params.size() < 2)
        throw InvalidPath("sampled segment needs matching params/points, >= 2");
      if (std::abs(s->params.front() - seg.t0) > tol ||
          std::abs(s->params.back() - seg.t1) > tol)
        throw InvalidPath("sampled params must span the sub-interval");
      for (std::size_t k = 1; k < s->params.size(); ++k)
        if (!(s->params[k] > s->params[k - 1]))
          throw InvalidPath("sampled params must be strictly increasing");
    }
  }
  // Junction continuity.
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    const CVec left = eval_segment(segments_[i - 1], segments_[i - 1].t1);
    const CVec right = eval_segment(segments_[i], segments_[i].t0);
    if (left.size() != right.size())
      throw InvalidPath("segment dimensions disagree");
    if (euclid_dist(left, right) > kEpsJoin)
      throw InvalidPath("consecutive segments disagree at their junction");
  }
  // Domain membership probes (all sample nodes plus interior probes).
  for (const Segment& seg : segments_) {
    if (const auto* s = as_sampled(seg)) {
      for (const CVec& p : s->points)
        if (!contains(domain_, p, kInteriorMargin))
          throw PointOutsideDomain("sampled path point leaves the domain");
    } else {
      for (int k = 0; k <= 16; ++k) {
        const double t = seg.t0 + (seg.t1 - seg.t0) * k / 16.0;
        if (!contains(domain_, eval_segment(seg, t), kInteriorMargin))
          throw PointOutsideDomain("path point leaves the domain");
      }
    }
  }
}

std::size_t Path::segment_index(double t) const {
  if (t < -param_tol(horizon_) || t > horizon_ + param_tol(horizon_))
    throw OutOfRange("parameter outside [0, T]");
  // First segment whose right endpoint reaches t.
  std::size_t lo = 0, hi = segments_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (segments_[mid].t1 < t)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

CVec Path::evaluate(double t) const {
  const std::size_t i = segment_index(t);
  const Segment& seg = segments_[i];
  return eval_segment(seg, std::clamp(t, seg.t0, seg.t1));
}

std::vector<double> Path::breakpoints() const {
  std::vector<double> bps;
  bps.push_back(segments_.front().t0);
  for (const Segment& seg : segments_) bps.push_back(seg.t1);
  return bps;
}

// ---------------------------------------------------------------------------
// Derivatives

std::optional<CVec> derivative(const Path& path, double t) {
  const double tol = param_tol(path.horizon());
  if (t < -tol || t > path.horizon() + tol)
    throw OutOfRange("derivative parameter outside [0, T]");
  for (double bp : path.breakpoints())
    if (std::abs(t - bp) <= tol) return std::nullopt;
  return smoothed_derivative(path, path.segment_index(t), t);
}

CVec interpolant_derivative(const Path& path, std::size_t seg_index,
                            double t) {
  const Segment& seg = path.segments()[seg_index];
  if (const auto* c = std::get_if<ConstantSeg>(&seg.shape))
    return CVec(c->at.size(), cplx(0.0, 0.0));
  if (const auto* a = std::get_if<AffineSeg>(&seg.shape)) {
    const double len = seg.t1 - seg.t0;
    CVec d(a->from.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = (a->to[i] - a->from[i]) / len;
    return d;
  }
  const auto& s = std::get<SampledSeg>(seg.shape);
  const double tc = std::clamp(t, s.params.front(), s.params.back());
  auto it = std::upper_bound(s.params.begin(), s.params.end(), tc);
  std::size_t i = static_cast<std::size_t>(it - s.params.begin());
  if (i == 0) i = 1;
  if (i >= s.params.size()) i = s.params.size() - 1;
  const double len = s.params[i] - s.params[i - 1];
  CVec d(s.points[i].size());
  for (std::size_t c = 0; c < d.size(); ++c)
    d[c] = (s.points[i][c] - s.points[i - 1][c]) / len;
  return d;
}

CVec smoothed_derivative(const Path& path, std::size_t seg_index, double t) {
  const Segment& seg = path.segments()[seg_index];
  if (const auto* c = std::get_if<ConstantSeg>(&seg.shape))
    return CVec(c->at.size(), cplx(0.0, 0.0));
  if (const auto* a = std::get_if<AffineSeg>(&seg.shape)) {
    const double len = seg.t1 - seg.t0;
    CVec d(a->from.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = (a->to[i] - a->from[i]) / len;
    return d;
  }
  // At a sample node, combine the adjacent chord slopes with the weights of
  // the non-uniform central difference: second order for any node spacing.
  {
    const auto& s = std::get<SampledSeg>(seg.shape);
    const double node_eps = 1e-12 * (1.0 + path.horizon());
    const auto it = std::lower_bound(s.params.begin(), s.params.end(),
                                     t - node_eps);
    const std::size_t k = static_cast<std::size_t>(it - s.params.begin());
    if (k < s.params.size() && std::abs(s.params[k] - t) <= node_eps &&
        s.params.size() >= 3) {
      auto chord = [&](std::size_t j) {  // slope of piece [j, j+1]
        const double len = s.params[j + 1] - s.params[j];
        CVec d(s.points[j].size());
        for (std::size_t c = 0; c < d.size(); ++c)
          d[c] = (s.points[j + 1][c] - s.points[j][c]) / len;
        return d;
      };
      const std::size_t last = s.params.size() - 1;
      std::size_t jl, jr;
      double wl;
      if (k == 0) {
        jl = 0;
        jr = 1;
        const double g1 = s.params[1] - s.params[0];
        const double g2 = s.params[2] - s.params[1];
        wl = 1.0 + g1 / (g1 + g2);  // extrapolating weights
      } else if (k == last) {
        jl = last - 1;  // final piece
        jr = last - 2;
        const double g1 = s.params[last] - s.params[last - 1];
        const double g2 = s.params[last - 1] - s.params[last - 2];
        wl = 1.0 + g1 / (g1 + g2);
      } else {
        jl = k - 1;
        jr = k;
        const double gl = s.params[k] - s.params[k - 1];
        const double gr = s.params[k + 1] - s.params[k];
        wl = gr / (gl + gr);
      }
      const CVec cl = chord(jl);
      const CVec cr = chord(jr);
      CVec d(cl.size());
      for (std::size_t c = 0; c < d.size(); ++c)
        d[c] = wl * cl[c] + (1.0 - wl) * cr[c];
      return d;
    }
  }
  const double h_max = kFdFactor * path.horizon();
  const double t_clamped = std::clamp(t, seg.t0, seg.t1);
  auto eval = [&](double u) { return eval_segment(seg, u); };
  const double room_left = t_clamped - seg.t0;
  const double room_right = seg.t1 - t_clamped;
  if (room_left >= h_max && room_right >= h_max) {
    const CVec fp = eval(t_clamped + h_max);
    const CVec fm = eval(t_clamped - h_max);
    CVec d(fp.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = (fp[i] - fm[i]) / (2.0 * h_max);
    return d;
  }
  // Near a segment end: second-order one-sided difference.
  const bool forward = room_right >= room_left;
  const double room = forward ? room_right : room_left;
  const double h = std::min(h_max, room / 2.0);
  if (h <= 0.0) {
    // Degenerate sub-interval; fall back to the chord.
    const CVec f0 = eval(seg.t0);
    const CVec f1 = eval(seg.t1);
    CVec d(f0.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = (f1[i] - f0[i]) / (seg.t1 - seg.t0);
    return d;
  }
  const double sgn = forward ? 1.0 : -1.0;
  const CVec f0 = eval(t_clamped);
  const CVec f1 = eval(t_clamped + sgn * h);
  const CVec f2 = eval(t_clamped + sgn * 2.0 * h);
  CVec d(f0.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = sgn * (-3.0 * f0[i] + 4.0 * f1[i] - f2[i]) / (2.0 * h);
  return d;
}

double local_speed(const Path& path, std::size_t seg_index, double t) {
  const CVec z = path.evaluate(t);
  const CVec v = interpolant_derivative(path, seg_index, t);
  return infinitesimal_metric(path.domain(), z, v);
}

double smoothed_speed(const Path& path, std::size_t seg_index, double t) {
  const CVec z = path.evaluate(t);
  const CVec v = smoothed_derivative(path, seg_index, t);
  return infinitesimal_metric(path.domain(), z, v);
}

// ---------------------------------------------------------------------------
// Speed profile and zero-speed set

SpeedSamples speed_profile(const Path& path, int n_per_segment) {
  if (n_per_segment < 2)
    throw InvalidArgument("speed_profile needs n_per_segment >= 2");
  SpeedSamples out;
  const auto& segs = path.segments();
  for (std::size_t si = 0; si < segs.size(); ++si) {
    const Segment& seg = segs[si];
    if (si == 0) {
      out.grid.push_back(seg.t0);
      out.speeds.push_back(0.0);
      out.defined.push_back(false);
    }
    for (int k = 1; k <= n_per_segment; ++k) {
      const double t =
          seg.t0 + (seg.t1 - seg.t0) * k / (n_per_segment + 1.0);
      out.grid.push_back(t);
      out.speeds.push_back(smoothed_speed(path, si, t));
      out.defined.push_back(true);
    }
    out.grid.push_back(seg.t1);
    out.speeds.push_back(0.0);
    out.defined.push_back(false);
  }
  return out;
}

double IntervalSet::total_interval_length() const {
  double s = 0.0;
  for (const auto& [a, b] : intervals) s += b - a;
  return s;
}

IntervalSet zero_speed_set(const SpeedSamples& samples, const Path& path,
                           double eps_speed, double min_length) {
  if (!(min_length > 0.0))
    throw InvalidArgument("zero_speed_set needs min_length > 0");
  const double tol = param_tol(path.horizon());

  std::vector<std::pair<double, double>> candidates;
  std::vector<double> points;

  // Exact zero-speed intervals of the representation.
  for (const Segment& seg : path.segments()) {
    if (std::holds_alternative<ConstantSeg>(seg.shape) ||
        (std::holds_alternative<AffineSeg>(seg.shape) &&
         affine_is_constant(std::get<AffineSeg>(seg.shape))))
      candidates.emplace_back(seg.t0, seg.t1);
  }

  // Sampled runs of sub-threshold nodes.
  const std::size_t n = samples.grid.size();
  std::size_t i = 0;
  while (i < n) {
    if (!samples.defined[i] || samples.speeds[i] > eps_speed) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && samples.defined[j + 1] &&
           samples.speeds[j + 1] <= eps_speed)
      ++j;
    const double a = samples.grid[i];
    const double b = samples.grid[j];
    if (b - a >= min_length) {
      candidates.emplace_back(a, b);
    } else {
      for (std::size_t k = i; k <= j; ++k) points.push_back(samples.grid[k]);
    }
    i = j + 1;
  }

  // Merge overlapping or touching intervals.
  std::sort(candidates.begin(), candidates.end());
  IntervalSet out;
  for (const auto& [a, b] : candidates) {
    if (!out.intervals.empty() && a <= out.intervals.back().second + tol)
      out.intervals.back().second = std::max(out.intervals.back().second, b);
    else
      out.intervals.emplace_back(a, b);
  }
  for (double p : points) {
    bool covered = false;
    for (const auto& [a, b] : out.intervals)
      if (p >= a - tol && p <= b + tol) {
        covered = true;
        break;
      }
    if (!covered) out.points.push_back(p);
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

// ---------------------------------------------------------------------------
// Collapse

std::pair<Path, CollapsePlan> collapse(const Path& path,
                                       const IntervalSet& zeros) {
  const double T = path.horizon();
  const double tol = param_tol(T);

  CollapsePlan plan;
  plan.source = zeros;
  double removed = 0.0;
  for (const auto& [a, b] : zeros.intervals) {
    removed += b - a;
    plan.cumulative_offsets.push_back(removed);
  }
  plan.tau = T - removed;

  if (zeros.intervals.empty()) return {path, plan};
  if (!(plan.tau > tol))
    throw DegenerateResult("collapse removes the whole parameter interval");

  // The construction requires the path to be constant on each interval.
  for (std::size_t j = 0; j < zeros.intervals.size(); ++j) {
    const auto& [a, b] = zeros.intervals[j];
    const CVec ref = path.evaluate(a);
    for (int k = 0; k <= 32; ++k) {
      const double t = a + (b - a) * k / 32.0;
      if (euclid_dist(path.evaluate(t), ref) > kEpsConst)
        throw NotConstantOnInterval(static_cast<int>(j));
    }
  }

  // Keep-intervals: the complement of the plateaus in [0, T]. Seam anchors
  // pin both sides of a removed plateau to its value at the left endpoint,
  // so the collapsed path joins exactly even when the plateau is constant
  // only up to kEpsConst.
  struct Keep {
    double lo, hi, offset;  // result params are [lo - offset, hi - offset]
    CVec lo_anchor, hi_anchor;
  };
  std::vector<Keep> keeps;
  double cursor = 0.0, offset = 0.0;
  CVec cursor_anchor = path.evaluate(0.0);
  for (const auto& [a, b] : zeros.intervals) {
    const CVec canon = path.evaluate(a);
    if (a - cursor > tol)
      keeps.push_back({cursor, a, offset, cursor_anchor, canon});
    offset += b - a;
    cursor = b;
    cursor_anchor = canon;
  }
  if (T - cursor > tol)
    keeps.push_back({cursor, T, offset, cursor_anchor, path.evaluate(T)});
  if (keeps.empty())
    throw DegenerateResult("collapse removes the whole parameter interval");

  std::vector<Segment> out_segs;
  for (const Keep& keep : keeps) {
    const CVec& left_anchor = keep.lo_anchor;
    const CVec& right_anchor = keep.hi_anchor;
    for (const Segment& seg : path.segments()) {
      const double lo = std::max(seg.t0, keep.lo);
      const double hi = std::min(seg.t1, keep.hi);
      if (hi - lo <= tol) continue;
      Segment piece;
      piece.t0 = lo - keep.offset;
      piece.t1 = hi - keep.offset;
      const CVec start = (lo <= keep.lo + tol) ? left_anchor
                                               : eval_segment(seg, lo);
      const CVec end =
          (hi >= keep.hi - tol) ? right_anchor : eval_segment(seg, hi);
      if (const auto* c = std::get_if<ConstantSeg>(&seg.shape)) {
        piece.shape = ConstantSeg{c->at};
      } else if (std::holds_alternative<AffineSeg>(seg.shape)) {
        piece.shape = AffineSeg{start, end};
      } else {
        const auto& s = std::get<SampledSeg>(seg.shape);
        SampledSeg trimmed;
        trimmed.params.push_back(piece.t0);
        trimmed.points.push_back(start);
        for (std::size_t k = 0; k < s.params.size(); ++k) {
          if (s.params[k] > lo + tol && s.params[k] < hi - tol) {
            trimmed.params.push_back(s.params[k] - keep.offset);
            trimmed.points.push_back(s.points[k]);
          }
        }
        trimmed.params.push_back(piece.t1);
        trimmed.points.push_back(end);
        piece.shape = std::move(trimmed);
      }
      out_segs.push_back(std::move(piece));
    }
  }

  Path result(path.domain(), plan.tau, std::move(out_segs));
  return {std::move(result), std::move(plan)};
}

// ---------------------------------------------------------------------------
// Reparam map A with path = collapsed o A

PiecewiseAffineMap::PiecewiseAffineMap(
    std::vector<std::pair<double, double>> intervals,
    std::vector<double> cumulative_offsets, double horizon, double tau)
    : intervals_(std::move(intervals)),
      cum_(std::move(cumulative_offsets)),
      horizon_(horizon),
      tau_(tau) {}

double PiecewiseAffineMap::operator()(double t) const {
  t = std::clamp(t, 0.0, horizon_);
  double offset_before = 0.0;
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    const auto& [a, b] = intervals_[j];
    if (t < a) break;
    if (t <= b) return a - offset_before;  // constant on the plateau
    offset_before = cum_[j];
  }
  return t - offset_before;
}

PiecewiseAffineMap reparam_map(const CollapsePlan& plan) {
  const double removed =
      plan.cumulative_offsets.empty() ? 0.0 : plan.cumulative_offsets.back();
  return PiecewiseAffineMap(plan.source.intervals, plan.cumulative_offsets,
                            plan.tau + removed, plan.tau);
}

// ---------------------------------------------------------------------------
// Images

std::vector<CVec> image_samples(const Path& path, int n) {
  if (n < 2) throw InvalidArgument("image_samples needs n >= 2");
  std::vector<double> params = path.breakpoints();
  for (int k = 0; k < n; ++k)
    params.push_back(path.horizon() * k / (n - 1.0));
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end(),
                           [&](double a, double b) {
                             return std::abs(a - b) <=
                                    param_tol(path.horizon());
                           }),
               params.end());
  std::vector<CVec> pts;
  pts.reserve(params.size());
  for (double t : params) pts.push_back(path.evaluate(t));
  return pts;
}

double hausdorff(const std::vector<CVec>& a, const std::vector<CVec>& b) {
  return hausdorff_distance(a, b);
}

double max_sample_spacing(const std::vector<CVec>& pts) {
  double worst = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    worst = std::max(worst, euclid_dist(pts[i - 1], pts[i]));
  return worst;
}

}  // namespace kobpath
