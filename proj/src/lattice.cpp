#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>

#include "kobpath/numerics.hpp"

namespace kobpath {

namespace {

constexpr double kInfeasible = 1e30;

std::vector<double> flatten(const CVec& z) {
  std::vector<double> x(2 * z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    x[2 * i] = z[i].real();
    x[2 * i + 1] = z[i].imag();
  }
  return x;
}

CVec unflatten(const std::vector<double>& x) {
  CVec z(x.size() / 2);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = cplx(x[2 * i], x[2 * i + 1]);
  return z;
}

bool feasible(const Domain& domain, const CVec& z) {
  return domain.boundary_slack(z) >= kInteriorMargin;
}

// Midpoint-rule weight of the straight edge from p to q; kInfeasible when
// the midpoint leaves the domain (which is how the annulus hole cuts the
// graph into homotopy classes). The tiny energy term breaks the ties of the
// max metric so the lattice route prefers simultaneous factor progress.
constexpr double kTieBreak = 1e-6;

double edge_weight(const Domain& domain, const CVec& p, const CVec& q) {
  CVec mid(p.size()), step(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    mid[i] = 0.5 * (p[i] + q[i]);
    step[i] = q[i] - p[i];
  }
  if (!feasible(domain, mid)) return kInfeasible;
  return infinitesimal_metric(domain, mid, step) +
         kTieBreak * std::sqrt(infinitesimal_metric_energy(domain, mid, step));
}

// Squared-cost edge term for the descent objective.
double edge_energy(const Domain& domain, const CVec& p, const CVec& q) {
  CVec mid(p.size()), step(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    mid[i] = 0.5 * (p[i] + q[i]);
    step[i] = q[i] - p[i];
  }
  if (!feasible(domain, mid)) return kInfeasible;
  return infinitesimal_metric_energy(domain, mid, step);
}

// Moore neighborhood {-1,0,1}^{2n} \ {0}: the 8-neighborhood in C^1. The
// simultaneous-coordinate moves matter for product metrics, where the max
// of the factor costs makes axis-only routes much longer than diagonal
// ones. For n >= 3 the full set is too large; axis 8-neighborhoods plus the
// all-coordinate diagonals keep both move families available.
std::vector<std::vector<int>> neighbor_offsets(int n) {
  std::vector<std::vector<int>> offsets;
  if (n <= 2) {
    const int axes = 2 * n;
    std::vector<int> off(axes, -1);
    while (true) {
      if (std::any_of(off.begin(), off.end(), [](int v) { return v != 0; }))
        offsets.push_back(off);
      int a = 0;
      for (; a < axes; ++a) {
        if (off[a] < 1) {
          ++off[a];
          break;
        }
        off[a] = -1;
      }
      if (a == axes) break;
    }
    return offsets;
  }
  for (int c = 0; c < n; ++c) {
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        std::vector<int> off(2 * n, 0);
        off[2 * c] = dx;
        off[2 * c + 1] = dy;
        offsets.push_back(std::move(off));
      }
    }
  }
  for (int mask = 0; mask < (1 << (2 * n)); ++mask) {
    std::vector<int> off(2 * n);
    for (int a = 0; a < 2 * n; ++a) off[a] = (mask >> a) & 1 ? 1 : -1;
    offsets.push_back(std::move(off));
  }
  return offsets;
}

struct Lattice {
  std::vector<double> lo;       // per-axis origin
  std::vector<int> counts;      // nodes per axis
  double spacing = 0.0;
  int axes = 0;

  std::int64_t size() const {
    std::int64_t s = 1;
    for (int c : counts) s *= c;
    return s;
  }
  std::vector<double> coords(std::int64_t id) const {
    std::vector<double> x(axes);
    for (int a = 0; a < axes; ++a) {
      x[a] = lo[a] + spacing * static_cast<double>(id % counts[a]);
      id /= counts[a];
    }
    return x;
  }
  std::int64_t id_of(const std::vector<int>& idx) const {
    std::int64_t id = 0;
    for (int a = axes - 1; a >= 0; --a) id = id * counts[a] + idx[a];
    return id;
  }
};

Lattice build_lattice(const Domain& domain, const CVec& z, const CVec& w,
                      const OptConfig& cfg) {
  const int axes = 2 * domain.dim();
  const auto zx = flatten(z);
  const auto wx = flatten(w);
  const auto dom_box = domain.bounding_box();

  double seg_diag = 0.0;
  for (int a = 0; a < axes; ++a) {
    const double d = zx[a] - wx[a];
    seg_diag += d * d;
  }
  seg_diag = std::sqrt(seg_diag);

  double diameter = domain.euclidean_diameter();
  if (!std::isfinite(diameter)) diameter = 2.0 * seg_diag + 2.0;
  const double spacing = diameter / std::max(cfg.lattice_resolution, 4);

  // C^1 keeps the full domain box so paths around a hole stay available;
  // higher dimensions shrink to a padded endpoint box to keep the graph
  // tractable.
  const double pad =
      domain.dim() == 1 ? diameter : 0.35 * seg_diag + 3.0 * spacing;
  Lattice lat;
  lat.axes = axes;
  lat.spacing = spacing;
  lat.lo.resize(axes);
  lat.counts.resize(axes);
  for (int a = 0; a < axes; ++a) {
    double lo = std::min(zx[a], wx[a]) - pad;
    double hi = std::max(zx[a], wx[a]) + pad;
    if (std::isfinite(dom_box[a].first)) lo = std::max(lo, dom_box[a].first);
    if (std::isfinite(dom_box[a].second)) hi = std::min(hi, dom_box[a].second);
    lat.lo[a] = lo;
    lat.counts[a] = std::max(2, static_cast<int>(std::floor((hi - lo) / spacing)) + 1);
  }
  return lat;
}

}  // namespace

Polyline lattice_shortest_path(const Domain& domain, const CVec& z,
                               const CVec& w, const OptConfig& cfg) {
  if (!feasible(domain, z) || !feasible(domain, w))
    throw PointOutsideDomain("lattice_shortest_path endpoints must be inside");
  if (euclid_dist(z, w) < 1e-15) return {z};

  const Lattice lat = build_lattice(domain, z, w, cfg);
  const std::int64_t n_nodes = lat.size();
  if (n_nodes > 40'000'000)
    throw NoFeasiblePath("lattice too large; raise spacing or shrink domain");

  std::vector<CVec> node_point(static_cast<std::size_t>(n_nodes));
  std::vector<std::uint8_t> inside(static_cast<std::size_t>(n_nodes), 0);
  for (std::int64_t id = 0; id < n_nodes; ++id) {
    node_point[id] = unflatten(lat.coords(id));
    inside[id] = feasible(domain, node_point[id]) ? 1 : 0;
  }

  const auto offsets = neighbor_offsets(domain.dim());

  // Virtual source/target nodes for the exact endpoints.
  const std::int64_t src = n_nodes;
  const std::int64_t dst = n_nodes + 1;
  const double link_radius = 1.75 * lat.spacing;

  auto neighbors = [&](std::int64_t id, auto&& visit) {
    if (id == src || id == dst) {
      const CVec& p = (id == src) ? z : w;
      for (std::int64_t j = 0; j < n_nodes; ++j) {
        if (!inside[j]) continue;
        if (euclid_dist(p, node_point[j]) > link_radius) continue;
        const double cost = edge_weight(domain, p, node_point[j]);
        if (cost < kInfeasible) visit(j, cost);
      }
      // Direct hop when the endpoints are a single cell apart.
      const CVec& other = (id == src) ? w : z;
      if (euclid_dist(p, other) <= link_radius) {
        const double cost = edge_weight(domain, p, other);
        if (cost < kInfeasible) visit(id == src ? dst : src, cost);
      }
      return;
    }
    std::vector<int> idx(lat.axes);
    std::int64_t rest = id;
    for (int a = 0; a < lat.axes; ++a) {
      idx[a] = static_cast<int>(rest % lat.counts[a]);
      rest /= lat.counts[a];
    }
    for (const auto& off : offsets) {
      std::vector<int> nidx = idx;
      bool ok = true;
      for (int a = 0; a < lat.axes; ++a) {
        nidx[a] += off[a];
        if (nidx[a] < 0 || nidx[a] >= lat.counts[a]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const std::int64_t j = lat.id_of(nidx);
      if (!inside[j]) continue;
      const double cost = edge_weight(domain, node_point[id], node_point[j]);
      if (cost < kInfeasible) visit(j, cost);
    }
    // Late hops into the exact endpoints.
    if (euclid_dist(node_point[id], z) <= link_radius) {
      const double cost = edge_weight(domain, node_point[id], z);
      if (cost < kInfeasible) visit(src, cost);
    }
    if (euclid_dist(node_point[id], w) <= link_radius) {
      const double cost = edge_weight(domain, node_point[id], w);
      if (cost < kInfeasible) visit(dst, cost);
    }
  };

  const std::int64_t total = n_nodes + 2;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(total), inf);
  std::vector<std::int64_t> pred(static_cast<std::size_t>(total), -1);
  using Entry = std::pair<double, std::int64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    const auto [d, id] = heap.top();
    heap.pop();
    if (d > dist[id]) continue;
    if (id == dst) break;
    neighbors(id, [&](std::int64_t j, double cost) {
      const double nd = d + cost;
      if (nd < dist[j]) {
        dist[j] = nd;
        pred[j] = id;
        heap.emplace(nd, j);
      }
    });
  }
  if (!std::isfinite(dist[dst]))
    throw NoFeasiblePath(
        "lattice graph disconnects the endpoints (lattice too coarse near "
        "the boundary or a hole)");

  Polyline poly;
  for (std::int64_t id = dst; id != -1; id = pred[id]) {
    if (id == src)
      poly.push_back(z);
    else if (id == dst)
      poly.push_back(w);
    else
      poly.push_back(node_point[id]);
  }
  std::reverse(poly.begin(), poly.end());
  return poly;
}

namespace {

double discrete_length(const Domain& domain, const Polyline& poly) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const double c = edge_weight(domain, poly[i], poly[i + 1]);
    if (c >= kInfeasible) return kInfeasible;
    total += c;
  }
  return total;
}

Polyline resample_polyline(const Polyline& poly, int interior) {
  if (poly.size() < 2 || interior < 1) return poly;
  std::vector<double> cum(poly.size(), 0.0);
  for (std::size_t i = 1; i < poly.size(); ++i)
    cum[i] = cum[i - 1] + euclid_dist(poly[i - 1], poly[i]);
  const double total = cum.back();
  if (total <= 0.0) return {poly.front(), poly.back()};
  Polyline out;
  out.push_back(poly.front());
  for (int k = 1; k <= interior; ++k) {
    const double target = total * k / (interior + 1);
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    std::size_t i = static_cast<std::size_t>(it - cum.begin());
    if (i == 0) i = 1;
    const double frac = (target - cum[i - 1]) / (cum[i] - cum[i - 1]);
    CVec p(poly[i].size());
    for (std::size_t c = 0; c < p.size(); ++c)
      p[c] = poly[i - 1][c] + frac * (poly[i][c] - poly[i - 1][c]);
    out.push_back(std::move(p));
  }
  out.push_back(poly.back());
  return out;
}

}  // namespace

Polyline refine_path(const Domain& domain, Polyline poly,
                     const OptConfig& cfg) {
  if (poly.size() < 3) return poly;
  const int axes = 2 * static_cast<int>(poly.front().size());
  // Relaxing the squared edge costs (discrete energy) instead of their sum
  // keeps the minimizer of the length functional while forcing uniform cost
  // pacing; plain length is flat under tangential redistribution, which is
  // exactly where coordinate descent stalls on product metrics.
  auto relax_point = [&](std::size_t i) {
    const double scale = 0.5 * (euclid_dist(poly[i - 1], poly[i]) +
                                euclid_dist(poly[i], poly[i + 1]));
    if (scale <= 0.0) return;
    for (int a = 0; a < axes; ++a) {
      const std::size_t c = static_cast<std::size_t>(a) / 2;
      const bool im = (a % 2) != 0;
      const double cur = im ? poly[i][c].imag() : poly[i][c].real();
      auto local = [&](double x) {
        CVec p = poly[i];
        p[c] = im ? cplx(p[c].real(), x) : cplx(x, p[c].imag());
        if (!feasible(domain, p)) return kInfeasible;
        const double l = edge_energy(domain, poly[i - 1], p);
        const double r = edge_energy(domain, p, poly[i + 1]);
        return (l >= kInfeasible || r >= kInfeasible) ? kInfeasible : l + r;
      };
      const double f0 = local(cur);
      const double half = 0.75 * scale;
      const double xbest =
          golden_section_min(local, cur - half, cur + half, 1e-5 * scale, 80);
      if (local(xbest) < f0)
        poly[i][c] =
            im ? cplx(poly[i][c].real(), xbest) : cplx(xbest, poly[i][c].imag());
    }
  };
  // Gauss-Seidel relaxation converges geometrically; the raw per-sweep
  // delta understates what is still recoverable, so the stop rule compares
  // the projected tail delta * rho / (1 - rho) against target_gap / 10.
  double current = discrete_length(domain, poly);
  double prev_delta = -1.0;
  for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
    const double before = current;
    // Symmetric pass so corrections propagate both ways.
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) relax_point(i);
    for (std::size_t i = poly.size() - 2; i >= 1; --i) relax_point(i);
    current = discrete_length(domain, poly);
    const double delta = before - current;
    if (delta <= 0.0) break;
    double rho = (prev_delta > 0.0 && delta < prev_delta) ? delta / prev_delta
                                                          : 0.95;
    rho = std::min(rho, 0.995);
    if (delta * rho / (1.0 - rho) < cfg.target_gap / 10.0) break;
    prev_delta = delta;
  }
  return poly;
}

double polyline_klength(const Domain& domain, const Polyline& poly,
                        const QuadConfig& cfg) {
  if (poly.size() < 2) return 0.0;
  double total = 0.0;
  QuadConfig edge_cfg = cfg;
  edge_cfg.tol = cfg.tol / static_cast<double>(poly.size() - 1);
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const CVec& p = poly[i];
    const CVec step = vsub(poly[i + 1], p);
    auto density = [&](double t) {
      CVec at(p.size());
      for (std::size_t c = 0; c < p.size(); ++c) at[c] = p[c] + t * step[c];
      return infinitesimal_metric(domain, at, step);
    };
    total += adaptive_simpson(density, 0.0, 1.0, edge_cfg);
  }
  return total;
}

PathOptTrace distance_via_path_optimization_traced(const Domain& domain,
                                                   const CVec& z,
                                                   const CVec& w,
                                                   const OptConfig& cfg) {
  if (cfg.lattice_resolution <= 0 || cfg.control_points <= 0 ||
      cfg.max_iters <= 0 || !(cfg.target_gap > 0.0))
    throw InvalidArgument("OptConfig fields must all be positive");
  if (!contains(domain, z, kInteriorMargin) ||
      !contains(domain, w, kInteriorMargin))
    throw PointOutsideDomain("path optimization endpoints must be inside");

  PathOptTrace trace;
  if (euclid_dist(z, w) < 1e-15) {
    trace.value = 0.0;
    trace.polyline = {z};
    trace.level_lengths = {0.0};
    return trace;
  }

  Polyline poly = lattice_shortest_path(domain, z, w, cfg);
  int interior = cfg.control_points;
  poly = resample_polyline(poly, interior);

  const QuadConfig len_cfg{std::min(1e-8, cfg.target_gap / 100.0), 30};
  double best = std::numeric_limits<double>::infinity();
  Polyline best_poly = poly;
  constexpr int kLevels = 4;
  for (int level = 0; level < kLevels; ++level) {
    poly = refine_path(domain, poly, cfg);
    double len = std::numeric_limits<double>::infinity();
    try {
      len = polyline_klength(domain, poly, len_cfg);
    } catch (const NumericalError&) {
      // Edge escaped the domain under quadrature refinement; keep previous.
    } catch (const PointOutsideDomain&) {
    }
    if (len < best) {
      best = len;
      best_poly = poly;
    }
    trace.level_lengths.push_back(best);
    if (level + 1 < kLevels) {
      interior = 2 * interior + 1;
      poly = resample_polyline(best_poly, interior);
    }
  }
  if (!std::isfinite(best))
    throw NoFeasiblePath("no feasible polyline survived refinement");
  trace.value = best;
  trace.polyline = std::move(best_poly);
  return trace;
}

double distance_via_path_optimization(const Domain& domain, const CVec& z,
                                      const CVec& w, const OptConfig& cfg) {
  return distance_via_path_optimization_traced(domain, z, w, cfg).value;
}

}  // namespace kobpath
