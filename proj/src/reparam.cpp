#include "kobpath/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kobpath/numerics.hpp"

namespace kobpath {

namespace {

constexpr double kUnitSpeedTol = 1e-4;  // diagnostics threshold on |speed-1|

double clamp_param(double t, double lo, double hi) {
  return std::clamp(t, lo, hi);
}

}  // namespace

double ArcLengthTable::value_at(double t) const {
  if (grid.empty()) throw InvalidArgument("empty arc-length table");
  t = clamp_param(t, grid.front(), grid.back());
  const auto it = std::upper_bound(grid.begin(), grid.end(), t);
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  if (i == 0) i = 1;
  if (i >= grid.size()) i = grid.size() - 1;
  const double frac = (t - grid[i - 1]) / (grid[i] - grid[i - 1]);
  return values[i - 1] + frac * (values[i] - values[i - 1]);
}

namespace {

// Integrand with the representation derivative pinned to the sub-interval's
// midpoint piece, so evaluations at shared endpoints cannot pick up the
// neighboring piece's chord.
std::function<double(double)> pinned_speed(const Path& path, std::size_t seg,
                                           double lo, double hi) {
  const CVec chord = interpolant_derivative(path, seg, 0.5 * (lo + hi));
  return [&path, chord](double t) {
    return infinitesimal_metric(path.domain(), path.evaluate(t), chord);
  };
}

}  // namespace

double ArcLengthTable::refined_value_at(double t, double tol) const {
  if (!path) return value_at(t);
  t = clamp_param(t, grid.front(), grid.back());
  const auto it = std::upper_bound(grid.begin(), grid.end(), t);
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  if (i == 0) i = 1;
  if (i >= grid.size()) i = grid.size() - 1;
  const double a = grid[i - 1];
  if (t - a <= 0.0) return values[i - 1];
  const auto speed = pinned_speed(*path, interval_seg[i - 1], a, grid[i]);
  return values[i - 1] +
         adaptive_simpson(speed, a, t, QuadConfig{std::max(tol, 1e-15), 40});
}

ArcLengthTable arc_length(const Path& path, const QuadConfig& quad,
                          int nodes_per_segment) {
  if (!(quad.tol > 0.0)) throw InvalidArgument("quad.tol must be positive");
  if (nodes_per_segment < 1)
    throw InvalidArgument("nodes_per_segment must be >= 1");

  ArcLengthTable table;
  table.quad_tol = quad.tol;
  table.path = std::make_shared<const Path>(path);
  table.grid.push_back(0.0);
  table.values.push_back(0.0);

  const auto& segs = path.segments();
  for (std::size_t si = 0; si < segs.size(); ++si) {
    const Segment& seg = segs[si];
    // Sampled segments split at their own sample nodes, where the
    // interpolant derivative jumps; the integrand is smooth in between.
    std::vector<double> cuts;
    if (const auto* s = std::get_if<SampledSeg>(&seg.shape)) {
      cuts.assign(s->params.begin() + 1, s->params.end());
      cuts.back() = seg.t1;
    } else {
      const double len = seg.t1 - seg.t0;
      for (int k = 1; k <= nodes_per_segment; ++k)
        cuts.push_back(k == nodes_per_segment
                           ? seg.t1
                           : seg.t0 + len * k / nodes_per_segment);
    }
    // Tolerance budget split across the segment so the per-segment sum
    // stays within quad.tol.
    QuadConfig sub = quad;
    sub.tol = std::max(quad.tol / static_cast<double>(cuts.size()), 1e-16);
    double a = seg.t0;
    for (double b : cuts) {
      double inc = 0.0;
      if (b > a) {
        const auto speed = pinned_speed(path, si, a, b);
        inc = adaptive_simpson(speed, a, b, sub);
      }
      table.grid.push_back(b);
      table.values.push_back(table.values.back() + std::max(inc, 0.0));
      table.interval_seg.push_back(si);
      a = b;
    }
  }
  table.total = table.values.back();
  return table;
}

MonotoneCheck check_strictly_increasing(const ArcLengthTable& table,
                                        double eps_G, double min_length) {
  MonotoneCheck out;
  if (table.grid.size() < 2) return out;
  if (min_length <= 0.0) {
    double max_step = 0.0;
    for (std::size_t i = 1; i < table.grid.size(); ++i)
      max_step = std::max(max_step, table.grid[i] - table.grid[i - 1]);
    min_length = 2.0 * max_step;
  }
  double best_len = 0.0;
  std::size_t i = 1;
  while (i < table.grid.size()) {
    if (table.values[i] - table.values[i - 1] > eps_G) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < table.grid.size() &&
           table.values[j + 1] - table.values[j] <= eps_G)
      ++j;
    const double a = table.grid[i - 1];
    const double b = table.grid[j];
    if (b - a >= min_length && b - a > best_len) {
      best_len = b - a;
      out.witness = FlatWitness{a, b};
    }
    i = j + 1;
  }
  out.strictly_increasing = !out.witness.has_value();
  return out;
}

double invert(const ArcLengthTable& table, double s, double eps_inv) {
  const double slack = std::max(eps_inv, 1e-12 * (1.0 + table.total));
  if (s < -slack || s > table.total + slack)
    throw OutOfRange("invert: arc-length value outside [0, ell]");
  s = clamp_param(s, 0.0, table.total);
  if (s <= 0.0) return table.grid.front();
  if (s >= table.total) return table.grid.back();

  // Leftmost bracketing interval.
  const auto it = std::lower_bound(table.values.begin(), table.values.end(), s);
  std::size_t i = static_cast<std::size_t>(it - table.values.begin());
  if (i == 0) return table.grid.front();
  const double v0 = table.values[i - 1];
  const double v1 = table.values[i];
  const double a = table.grid[i - 1];
  const double b = table.grid[i];
  if (v1 - v0 <= eps_inv) return a;  // numerical flat: leftmost preimage
  if (!table.path) return monotone_interp_invert(table.grid, table.values, s);

  const auto speed = pinned_speed(*table.path, table.interval_seg[i - 1], a, b);
  const QuadConfig qc{std::max(eps_inv / 4.0, 1e-15), 40};
  auto G_minus_s = [&](double t) {
    if (t <= a) return v0 - s;
    return v0 + adaptive_simpson(speed, a, t, qc) - s;
  };

  // Regula falsi safeguarded by bisection; ties resolve to the left.
  double lo = a, hi = b;
  double flo = v0 - s, fhi = v1 - s;
  double t = a + (s - v0) / (v1 - v0) * (b - a);
  for (int iter = 0; iter < 120; ++iter) {
    t = clamp_param(t, lo, hi);
    const double f = G_minus_s(t);
    if (f >= 0.0 && f <= eps_inv) return t;
    if (f < 0.0) {
      lo = t;
      flo = f;
    } else {
      hi = t;
      fhi = f;
    }
    if (hi - lo <= 1e-16 * (1.0 + table.grid.back())) break;
    double next = (fhi > flo) ? hi - fhi * (hi - lo) / (fhi - flo)
                              : 0.5 * (lo + hi);
    // Periodic bisection step guards against one-sided stagnation.
    if (!(next > lo && next < hi) || iter % 3 == 2) next = 0.5 * (lo + hi);
    t = next;
  }
  return hi;  // G(hi) >= s: the left-biased side of the bracket
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

struct PipelineParts {
  Path source;   // original or collapsed
  bool collapsed = false;
  std::optional<CollapsePlan> plan;
  IntervalSet zeros;
};

IntervalSet detect_zeros(const Path& path, const ReparamConfig& cfg) {
  const SpeedSamples samples =
      speed_profile(path, cfg.profile_nodes_per_segment);
  double min_len = cfg.min_zero_length;
  if (min_len <= 0.0) {
    double max_step = 0.0;
    for (std::size_t i = 1; i < samples.grid.size(); ++i)
      max_step = std::max(max_step, samples.grid[i] - samples.grid[i - 1]);
    min_len = 2.0 * max_step;
  }
  return zero_speed_set(samples, path, cfg.eps_speed, min_len);
}

Path build_sigma(const Path& source, const ArcLengthTable& table,
                 const ReparamConfig& cfg) {
  const double ell = table.total;
  const int n_out = std::max(cfg.n_out, 8);
  const double eps_inv = cfg.eps_inv_rel * (1.0 + ell);
  const double utol = 1e-12 * (1.0 + ell);

  // Uniform grid on [0, ell] plus the images of the source breakpoints.
  std::vector<double> us;
  us.reserve(static_cast<std::size_t>(n_out) + 8);
  for (int k = 0; k < n_out; ++k) us.push_back(ell * k / (n_out - 1.0));
  std::vector<double> cuts;
  cuts.push_back(0.0);
  for (double bp : source.breakpoints()) {
    const double gu = table.value_at(bp);
    us.push_back(gu);
    if (gu > cuts.back() + utol) cuts.push_back(gu);
  }
  if (cuts.back() < ell - utol) cuts.push_back(ell);
  cuts.back() = ell;
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end(),
                       [&](double x, double y) {
                         return std::abs(x - y) <= utol;
                       }),
           us.end());
  us.front() = 0.0;
  us.back() = ell;

  std::vector<CVec> pts;
  pts.reserve(us.size());
  for (double u : us)
    pts.push_back(source.evaluate(invert(table, u, eps_inv)));

  // Cut the sampled graph into segments at breakpoint images so corners of
  // the source stay junctions of sigma.
  std::vector<Segment> segs;
  std::size_t start = 0;
  for (std::size_t ci = 1; ci < cuts.size(); ++ci) {
    const double hi = cuts[ci];
    std::size_t end = start;
    while (end + 1 < us.size() && us[end + 1] <= hi + utol) ++end;
    if (end == start) continue;
    SampledSeg s;
    s.params.assign(us.begin() + start, us.begin() + end + 1);
    s.points.assign(pts.begin() + start, pts.begin() + end + 1);
    s.params.front() = (segs.empty() ? 0.0 : segs.back().t1);
    s.params.back() = hi;
    Segment seg;
    seg.t0 = s.params.front();
    seg.t1 = s.params.back();
    seg.shape = std::move(s);
    segs.push_back(std::move(seg));
    start = end;
  }
  return Path(source.domain(), ell, std::move(segs));
}

ReparamDiagnostics make_diagnostics(const Path& original, const Path& sigma,
                                    const ArcLengthTable& table,
                                    const ReparamConfig& cfg) {
  ReparamDiagnostics d;
  int within = 0;
  for (std::size_t si = 0; si < sigma.segments().size(); ++si) {
    const Segment& seg = sigma.segments()[si];
    const auto& s = std::get<SampledSeg>(seg.shape);
    for (std::size_t k = 1; k + 1 < s.params.size(); ++k) {
      const double speed = smoothed_speed(sigma, si, s.params[k]);
      const double dev = std::abs(speed - 1.0);
      d.max_speed_deviation = std::max(d.max_speed_deviation, dev);
      if (dev <= kUnitSpeedTol) ++within;
      ++d.interior_nodes;
    }
  }
  d.unit_speed_fraction =
      d.interior_nodes > 0 ? static_cast<double>(within) / d.interior_nodes
                           : 1.0;

  const auto img_orig = image_samples(original, 512);
  const auto img_sigma = image_samples(sigma, 512);
  d.image_hausdorff = hausdorff(img_orig, img_sigma);
  d.max_spacing =
      std::max(max_sample_spacing(img_orig), max_sample_spacing(img_sigma));

  const ArcLengthTable check =
      arc_length(sigma, cfg.quad, std::max(cfg.table_nodes_per_segment / 4, 16));
  d.length_discrepancy = std::abs(check.total - table.total);
  return d;
}

ReparamResult run_pipeline(const Path& path, const ReparamConfig& cfg,
                           bool allow_collapse) {
  IntervalSet zeros = detect_zeros(path, cfg);

  PipelineParts parts{path, false, std::nullopt, zeros};
  if (!zeros.intervals.empty()) {
    if (zeros.total_interval_length() >=
        path.horizon() - 1e-12 * (1.0 + path.horizon()))
      throw ConstantPath("path is constant (zero speed everywhere)");
    if (!allow_collapse) {
      const auto& [a, b] = zeros.intervals.front();
      throw NotInvertible(a, b);
    }
    auto [gamma_aux, plan] = collapse(path, zeros);
    parts.source = std::move(gamma_aux);
    parts.plan = std::move(plan);
    parts.collapsed = true;
  }

  ArcLengthTable table =
      arc_length(parts.source, cfg.quad, cfg.table_nodes_per_segment);
  if (table.total <= cfg.eps_length)
    throw ConstantPath("path has zero k_X-length");

  Path sigma = build_sigma(parts.source, table, cfg);
  ReparamDiagnostics diag = make_diagnostics(path, sigma, table, cfg);

  ReparamResult result{std::move(sigma), std::move(table), parts.collapsed,
                       std::move(parts.plan), diag};
  return result;
}

}  // namespace

ReparamResult unit_speed_reparametrize(const Path& path,
                                       const ReparamConfig& cfg) {
  return run_pipeline(path, cfg, /*allow_collapse=*/true);
}

ReparamResult direct_reparametrize_by_g(const Path& path,
                                        const ReparamConfig& cfg) {
  return run_pipeline(path, cfg, /*allow_collapse=*/false);
}

double verify_key_equation(const ReparamResult& result, int n_checks) {
  if (n_checks < 1) throw InvalidArgument("n_checks must be >= 1");
  const double ell = result.table.total;
  const ArcLengthTable sigma_table =
      arc_length(result.sigma, QuadConfig{result.table.quad_tol, 30}, 256);
  double worst = 0.0;
  for (int k = 0; k <= n_checks; ++k) {
    const double t = ell * k / n_checks;
    const double integral =
        sigma_table.refined_value_at(t, result.table.quad_tol / 4.0);
    worst = std::max(worst, std::abs(integral - t));
  }
  return worst;
}

}  // namespace kobpath
