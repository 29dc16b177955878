#include "kobpath/properties.hpp"

#include <algorithm>
#include <cmath>

namespace kobpath {

namespace {

std::vector<double> uniform_grid(double horizon, int n_grid) {
  if (n_grid < 2) throw InvalidArgument("n_grid must be >= 2");
  std::vector<double> g(static_cast<std::size_t>(n_grid));
  for (int i = 0; i < n_grid; ++i) g[i] = horizon * i / (n_grid - 1.0);
  return g;
}

void fold(PropertyReport& report, std::vector<PairCheck>* rows,
          const PairCheck& check, bool first) {
  if (rows) rows->push_back(check);
  if (first || check.slack > report.worst_slack) {
    report.worst_slack = check.slack;
    report.witness_s = check.s;
    report.witness_t = check.t;
  }
}

}  // namespace

void validate(const GeodesicParams& params) {
  if (!(params.lambda >= 1.0))
    throw InvalidArgument("lambda must be >= 1");
  if (!(params.kappa >= 0.0)) throw InvalidArgument("kappa must be >= 0");
}

double default_property_tol(double ell) { return 1e-6 * (1.0 + ell); }

double arc_length_between(const Path& path, const ArcLengthTable& table,
                          double s, double t) {
  const double tol = 1e-12 * (1.0 + path.horizon());
  if (s < -tol || t > path.horizon() + tol || !(s < t))
    throw OutOfRange("arc_length_between requires 0 <= s < t <= horizon");
  return table.value_at(t) - table.value_at(s);
}

PropertyReport verify_almost_geodesic(const Path& path,
                                      const GeodesicParams& params,
                                      int n_grid, double tol,
                                      std::vector<PairCheck>* rows) {
  validate(params);
  const auto grid = uniform_grid(path.horizon(), n_grid);
  if (tol < 0.0) {
    const ArcLengthTable t0 = arc_length(path, QuadConfig{}, 64);
    tol = default_property_tol(t0.total);
  }

  PropertyReport report;
  report.grid_size = n_grid;
  report.tolerance = tol;
  bool first = true;

  // (a) two-sided distance bounds on all grid pairs.
  std::vector<CVec> pts;
  pts.reserve(grid.size());
  for (double t : grid) pts.push_back(path.evaluate(t));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double gap = grid[j] - grid[i];
      const double K = distance(path.domain(), pts[i], pts[j]);
      const double lower = gap / params.lambda - params.kappa;
      fold(report, rows, {grid[i], grid[j], lower, K, lower - K}, first);
      first = false;
      const double upper = params.lambda * gap + params.kappa;
      fold(report, rows, {grid[i], grid[j], K, upper, K - upper}, false);
    }
  }

  // (b) speed bound at interior quadrature nodes, junctions excluded: the
  // sample nodes of Sampled segments (where finite differences are
  // second-order) and uniform interior nodes elsewhere.
  for (std::size_t si = 0; si < path.segments().size(); ++si) {
    const Segment& seg = path.segments()[si];
    std::vector<double> nodes;
    if (const auto* s = std::get_if<SampledSeg>(&seg.shape)) {
      nodes.assign(s->params.begin() + 1, s->params.end() - 1);
    } else {
      for (int k = 1; k <= 16; ++k)
        nodes.push_back(seg.t0 + (seg.t1 - seg.t0) * k / 17.0);
    }
    for (double t : nodes) {
      const double speed = smoothed_speed(path, si, t);
      fold(report, rows, {t, t, speed, params.lambda, speed - params.lambda},
           first);
      first = false;
    }
  }

  report.pass = report.worst_slack <= tol;
  return report;
}

PropertyReport verify_chord_arc(const Path& path, const GeodesicParams& params,
                                int n_grid, double tol,
                                std::vector<PairCheck>* rows) {
  validate(params);
  const auto grid = uniform_grid(path.horizon(), n_grid);
  const ArcLengthTable table = arc_length(path, QuadConfig{}, 512);
  if (tol < 0.0) tol = default_property_tol(table.total);

  PropertyReport report;
  report.grid_size = n_grid;
  report.tolerance = tol;
  bool first = true;

  std::vector<CVec> pts;
  pts.reserve(grid.size());
  for (double t : grid) pts.push_back(path.evaluate(t));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double l = arc_length_between(path, table, grid[i], grid[j]);
      const double K = distance(path.domain(), pts[i], pts[j]);
      const double rhs = params.lambda * K + params.kappa;
      fold(report, rows, {grid[i], grid[j], l, rhs, l - rhs}, first);
      first = false;
    }
  }

  report.pass = report.worst_slack <= tol;
  return report;
}

CorollaryAResult chord_arc_to_almost_geodesic(const Path& path,
                                              const GeodesicParams& params,
                                              const ReparamConfig& cfg,
                                              int n_grid, double tol) {
  const PropertyReport hypothesis =
      verify_chord_arc(path, params, n_grid, tol);
  if (!hypothesis.pass)
    throw HypothesisViolated(
        "the path is not a (lambda, kappa)-chord-arc curve at the given "
        "parameters (worst slack " +
        std::to_string(hypothesis.worst_slack) + ")");

  CorollaryAResult out{unit_speed_reparametrize(path, cfg), {}, {}};
  const double sigma_tol =
      tol < 0.0 ? default_property_tol(out.reparam.table.total) : tol;
  out.sigma_chord_arc =
      verify_chord_arc(out.reparam.sigma, params, n_grid, sigma_tol);
  out.sigma_almost_geodesic =
      verify_almost_geodesic(out.reparam.sigma, params, n_grid, sigma_tol);
  return out;
}

GeodesicParams almost_geodesic_to_chord_arc_params(const GeodesicParams& p) {
  validate(p);
  return {p.lambda * p.lambda, p.lambda * p.lambda * p.kappa};
}

PropertyReport verify_corollary_b(const Path& path,
                                  const GeodesicParams& params, int n_grid,
                                  double tol) {
  const PropertyReport hypothesis =
      verify_almost_geodesic(path, params, n_grid, tol);
  if (!hypothesis.pass)
    throw HypothesisViolated(
        "the path is not a (lambda, kappa)-almost-geodesic at the given "
        "parameters (worst slack " +
        std::to_string(hypothesis.worst_slack) + ")");
  return verify_chord_arc(path, almost_geodesic_to_chord_arc_params(params),
                          n_grid, tol);
}

double min_kappa_chord_arc(const Path& path, double lambda, int n_grid,
                           double tol, double kappa_tol) {
  // kappa = total length always passes, so it brackets the bisection.
  const ArcLengthTable table = arc_length(path, QuadConfig{}, 256);
  double lo = 0.0, hi = table.total + 1.0;
  if (verify_chord_arc(path, {lambda, lo}, n_grid, tol).pass) return lo;
  while (hi - lo > kappa_tol) {
    const double mid = 0.5 * (lo + hi);
    if (verify_chord_arc(path, {lambda, mid}, n_grid, tol).pass)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace kobpath
