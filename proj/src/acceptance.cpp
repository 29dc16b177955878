#include "kobpath/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "kobpath/numerics.hpp"
#include "kobpath/properties.hpp"

namespace kobpath::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

// --- fixtures --------------------------------------------------------------

Path radial_geodesic_path() {
  // gamma(t) = t on [0, 0.5] in the unit disc.
  Segment seg;
  seg.t0 = 0.0;
  seg.t1 = 0.5;
  seg.shape = AffineSeg{{cplx(0.0, 0.0)}, {cplx(0.5, 0.0)}};
  return Path(Domain::disc(), 0.5, {seg});
}

Path plateau_path() {
  // affine on [0,1], constant on [1,2], affine on [2,3].
  Segment s1{0.0, 1.0, AffineSeg{{cplx(0.0, 0.0)}, {cplx(0.3, 0.0)}}};
  Segment s2{1.0, 2.0, ConstantSeg{{cplx(0.3, 0.0)}}};
  Segment s3{2.0, 3.0, AffineSeg{{cplx(0.3, 0.0)}, {cplx(0.6, 0.0)}}};
  return Path(Domain::disc(), 3.0, {s1, s2, s3});
}

Path two_plateau_path() {
  // plateaus [0.5, 1] and [2, 2.5] inside [0, 3].
  Segment s1{0.0, 0.5, AffineSeg{{cplx(0.0, 0.0)}, {cplx(0.25, 0.0)}}};
  Segment s2{0.5, 1.0, ConstantSeg{{cplx(0.25, 0.0)}}};
  Segment s3{1.0, 2.0, AffineSeg{{cplx(0.25, 0.0)}, {cplx(0.5, 0.0)}}};
  Segment s4{2.0, 2.5, ConstantSeg{{cplx(0.5, 0.0)}}};
  Segment s5{2.5, 3.0, AffineSeg{{cplx(0.5, 0.0)}, {cplx(0.7, 0.0)}}};
  return Path(Domain::disc(), 3.0, {s1, s2, s3, s4, s5});
}

// Unit-speed geodesic with the parameter slowed by rho; realized as a
// sampled path t -> tanh(rho(t)) on the real diameter of the disc.
Path slowed_geodesic(const std::vector<std::pair<double, double>>& knots,
                     int nodes_per_segment) {
  std::vector<Segment> segs;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const auto [t0, r0] = knots[i - 1];
    const auto [t1, r1] = knots[i];
    SampledSeg s;
    for (int k = 0; k <= nodes_per_segment; ++k) {
      const double t = t0 + (t1 - t0) * k / nodes_per_segment;
      const double rho = r0 + (r1 - r0) * (t - t0) / (t1 - t0);
      s.params.push_back(t);
      s.points.push_back({cplx(std::tanh(rho), 0.0)});
    }
    segs.push_back(Segment{t0, t1, std::move(s)});
  }
  return Path(Domain::disc(), knots.back().first, std::move(segs));
}

// --- randomized paths for the unit-speed suite ------------------------------

CVec random_point(std::mt19937_64& rng, const Domain& domain, double rmax) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int n = domain.dim();
  while (true) {
    CVec p(n);
    for (int i = 0; i < n; ++i) p[i] = cplx(unif(rng), unif(rng));
    if (domain.kind() == DomainKind::UnitBall) {
      const double nrm = euclid_norm(p);
      if (nrm > 1e-6) {
        p = vscale(p, rmax / nrm * std::pow(std::abs(unif(rng)), 0.5));
        return p;
      }
      continue;
    }
    bool ok = true;
    for (int i = 0; i < n; ++i)
      if (std::abs(p[i]) > rmax) ok = false;
    if (ok) return p;
  }
}

Path random_path(std::mt19937_64& rng, const Domain& domain) {
  std::uniform_int_distribution<int> n_segs_dist(2, 4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n_segs = n_segs_dist(rng);

  std::vector<CVec> waypoints;
  waypoints.push_back(random_point(rng, domain, 0.55));
  for (int i = 0; i < n_segs; ++i) {
    CVec next;
    do {
      next = random_point(rng, domain, 0.55);
    } while (euclid_dist(next, waypoints.back()) < 0.08);
    waypoints.push_back(std::move(next));
  }

  std::vector<Segment> segs;
  for (int i = 0; i < n_segs; ++i) {
    const double t0 = i, t1 = i + 1;
    if (unif(rng) < 0.4) {
      // Quadratic Bezier arc, sampled; stays in the convex hull.
      CVec ctrl(waypoints[i].size());
      const CVec mid_ctrl = random_point(rng, domain, 0.55);
      for (std::size_t c = 0; c < ctrl.size(); ++c)
        ctrl[c] = 0.5 * (waypoints[i][c] + waypoints[i + 1][c]) +
                  0.5 * (mid_ctrl[c] -
                         0.5 * (waypoints[i][c] + waypoints[i + 1][c]));
      SampledSeg s;
      const int m = 2000;
      for (int k = 0; k <= m; ++k) {
        const double u = static_cast<double>(k) / m;
        CVec p(ctrl.size());
        for (std::size_t c = 0; c < p.size(); ++c)
          p[c] = (1 - u) * (1 - u) * waypoints[i][c] +
                 2 * u * (1 - u) * ctrl[c] + u * u * waypoints[i + 1][c];
        s.params.push_back(t0 + u * (t1 - t0));
        s.points.push_back(std::move(p));
      }
      segs.push_back(Segment{t0, t1, std::move(s)});
    } else {
      segs.push_back(Segment{t0, t1, AffineSeg{waypoints[i], waypoints[i + 1]}});
    }
  }
  return Path(domain, n_segs, std::move(segs));
}

// --- criteria ---------------------------------------------------------------

CriterionResult criterion1(const SuiteConfig& suite) {
  const auto t0 = Clock::now();
  CriterionResult r{1, "Geodesic recovery (radial disc path)", false, "", 0};

  const Path gamma = radial_geodesic_path();
  ReparamConfig cfg;
  cfg.quad.tol = suite.quad_tol;
  const ReparamResult result = unit_speed_reparametrize(gamma, cfg);
  const double ell = result.table.total;
  const double ell_expected = std::atanh(0.5);

  double max_dev = 0.0;
  for (int k = 0; k < 512; ++k) {
    const double u = ell * k / 511.0;
    const CVec p = result.sigma.evaluate(u);
    max_dev = std::max(max_dev, std::abs(p[0] - cplx(std::tanh(u), 0.0)));
  }

  double max_dist_dev = 0.0;
  const Domain disc = Domain::disc();
  for (int i = 0; i < 32; ++i) {
    for (int j = i + 1; j < 32; ++j) {
      const double s = ell * i / 31.0;
      const double t = ell * j / 31.0;
      const double K =
          distance(disc, result.sigma.evaluate(s), result.sigma.evaluate(t));
      max_dist_dev = std::max(max_dist_dev, std::abs(K - (t - s)));
    }
  }

  r.seconds = seconds_since(t0);
  const bool ok_sigma = max_dev <= 1e-6;
  const bool ok_ell = std::abs(ell - ell_expected) <= 1e-8;
  const bool ok_dist = max_dist_dev <= 1e-8;
  const bool ok_time = r.seconds < 1.0;
  r.pass = ok_sigma && ok_ell && ok_dist && ok_time;
  r.detail = "max|sigma-tanh|=" + fmt(max_dev) +
             " |ell-atanh(.5)|=" + fmt(std::abs(ell - ell_expected)) +
             " max|K-|s-t||=" + fmt(max_dist_dev);
  return r;
}

CriterionResult criterion2(const SuiteConfig& suite) {
  const auto t0 = Clock::now();
  CriterionResult r{2, "Unit-speed property suite (10 random paths)", false,
                    "", 0};
  std::mt19937_64 rng(2024);
  const Domain domains[3] = {Domain::disc(), Domain::polydisc({1.0, 1.0}),
                             Domain::ball(2)};
  ReparamConfig cfg;
  cfg.quad.tol = suite.quad_tol;
  cfg.n_out = 4096;  // resolve the curvature scale of the sampled fixtures
  double worst_frac = 1.0, worst_key = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Path gamma = random_path(rng, domains[i % 3]);
    const ReparamResult result = unit_speed_reparametrize(gamma, cfg);
    worst_frac = std::min(worst_frac, result.diagnostics.unit_speed_fraction);
    worst_key = std::max(worst_key, verify_key_equation(result, 16));
  }
  r.seconds = seconds_since(t0);
  r.pass = worst_frac >= 0.99 && worst_key <= 1e-4 && r.seconds < 10.0;
  r.detail = "min unit-speed fraction=" + fmt(worst_frac) +
             " max key-equation deviation=" + fmt(worst_key);
  return r;
}

CriterionResult criterion3(const SuiteConfig& suite) {
  const auto t0 = Clock::now();
  CriterionResult r{3, "Theorem iff clause (plateau path)", false, "", 0};
  const Path gamma = plateau_path();

  bool not_invertible = false;
  double wa = 0.0, wb = 0.0;
  try {
    direct_reparametrize_by_g(gamma);
  } catch (const NotInvertible& e) {
    not_invertible = true;
    wa = e.witness_a;
    wb = e.witness_b;
  }
  const bool witness_overlaps = not_invertible && wa < 2.0 && wb > 1.0;

  ReparamConfig cfg;
  cfg.quad.tol = suite.quad_tol;
  const ReparamResult result = unit_speed_reparametrize(gamma, cfg);
  const ArcLengthTable original =
      arc_length(gamma, QuadConfig{suite.quad_tol, 30}, 512);
  const double length_gap = std::abs(result.table.total - original.total);
  const bool image_ok = result.diagnostics.image_hausdorff <=
                        2.0 * result.diagnostics.max_spacing;

  r.seconds = seconds_since(t0);
  r.pass = witness_overlaps && result.collapsed && length_gap <= 1e-8 &&
           image_ok;
  r.detail = std::string("witness=[") + fmt(wa) + "," + fmt(wb) +
             "] collapsed=" + (result.collapsed ? "yes" : "no") +
             " length gap=" + fmt(length_gap) +
             " hausdorff=" + fmt(result.diagnostics.image_hausdorff);
  return r;
}

CriterionResult criterion4() {
  const auto t0 = Clock::now();
  CriterionResult r{4, "Interval collapse (two plateaus)", false, "", 0};
  const Path gamma = two_plateau_path();

  const SpeedSamples samples = speed_profile(gamma, 64);
  const IntervalSet zeros = zero_speed_set(samples, gamma, 1e-12, 0.02);
  const auto [aux, plan] = collapse(gamma, zeros);
  const bool tau_ok = std::abs(plan.tau - 2.0) <= 1e-12;

  const PiecewiseAffineMap A = reparam_map(plan);
  double comp_dev = 0.0;
  for (int k = 0; k < 512; ++k) {
    const double t = 3.0 * k / 511.0;
    comp_dev =
        std::max(comp_dev, euclid_dist(gamma.evaluate(t), aux.evaluate(A(t))));
  }

  const SpeedSamples aux_samples = speed_profile(aux, 64);
  const IntervalSet aux_zeros = zero_speed_set(aux_samples, aux, 1e-12, 0.02);

  r.seconds = seconds_since(t0);
  r.pass = tau_ok && comp_dev <= 1e-8 && aux_zeros.intervals.empty();
  r.detail = "tau=" + fmt(plan.tau) + " max|gamma-aux(A)|=" + fmt(comp_dev) +
             " residual intervals=" +
             std::to_string(aux_zeros.intervals.size());
  return r;
}

CriterionResult criterion5(const SuiteConfig& suite) {
  const auto t0 = Clock::now();
  CriterionResult r{5, "Corollary (a) on 5 chord-arc curves", false, "", 0};

  std::vector<std::pair<Path, GeodesicParams>> cases;
  cases.emplace_back(radial_geodesic_path(), GeodesicParams{1.0, 0.0});
  cases.emplace_back(plateau_path(), GeodesicParams{1.0, 0.0});
  {
    // Product geodesic in the bidisc: second factor frozen.
    Segment seg{0.0, 0.5,
                AffineSeg{{cplx(0.0, 0.0), cplx(0.2, 0.0)},
                          {cplx(0.5, 0.0), cplx(0.2, 0.0)}}};
    cases.emplace_back(Path(Domain::polydisc({1.0, 1.0}), 0.5, {seg}),
                       GeodesicParams{1.0, 0.0});
  }
  {
    // Two-spoke polyline: chord-arc only with a length-sized kappa.
    Segment s1{0.0, 1.0, AffineSeg{{cplx(0.4, 0.0)}, {cplx(0.05, 0.0)}}};
    Segment s2{1.0, 2.0, AffineSeg{{cplx(0.05, 0.0)}, {cplx(0.0, 0.4)}}};
    Path p(Domain::disc(), 2.0, {s1, s2});
    const double len = arc_length(p, QuadConfig{}, 128).total;
    cases.emplace_back(std::move(p), GeodesicParams{1.0, len + 0.01});
  }
  {
    // Sampled quarter circle at radius 0.5.
    SampledSeg s;
    const int m = 400;
    for (int k = 0; k <= m; ++k) {
      const double th = 0.5 * std::numbers::pi * k / m;
      s.params.push_back(static_cast<double>(k) / m);
      s.points.push_back({0.5 * cplx(std::cos(th), std::sin(th))});
    }
    Path p(Domain::disc(), 1.0, {Segment{0.0, 1.0, std::move(s)}});
    const double len = arc_length(p, QuadConfig{}, 128).total;
    cases.emplace_back(std::move(p), GeodesicParams{1.0, len + 0.01});
  }

  bool all_ok = true;
  double worst = -1e30;
  bool plateau_collapsed = false;
  ReparamConfig cfg;
  cfg.quad.tol = suite.quad_tol;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const CorollaryAResult out =
        chord_arc_to_almost_geodesic(cases[i].first, cases[i].second, cfg);
    if (i == 1) plateau_collapsed = out.reparam.collapsed;
    all_ok = all_ok && out.sigma_chord_arc.pass &&
             out.sigma_almost_geodesic.pass;
    worst = std::max({worst, out.sigma_chord_arc.worst_slack,
                      out.sigma_almost_geodesic.worst_slack});
  }

  r.seconds = seconds_since(t0);
  r.pass = all_ok && plateau_collapsed;
  r.detail = std::string("all reports pass=") + (all_ok ? "yes" : "no") +
             " worst slack=" + fmt(worst) +
             " plateau case collapsed=" + (plateau_collapsed ? "yes" : "no");
  return r;
}

CriterionResult criterion6() {
  const auto t0 = Clock::now();
  CriterionResult r{6, "Corollary (b) parameter conversion", false, "", 0};

  // Geodesic slowed to speed 1/2 on half its domain: a (2,0)-almost-geodesic.
  const Path half_speed =
      slowed_geodesic({{0.0, 0.0}, {0.35, 0.35}, {0.75, 0.55}}, 1200);
  const PropertyReport rep_a = verify_corollary_b(half_speed, {2.0, 0.0}, 64,
                                                  -1.0);

  // Uniformly slowed geodesic: a (1, 0.1)-almost-geodesic.
  const double c = 1.0 - 0.1 / 0.75;
  const Path slow = slowed_geodesic({{0.0, 0.0}, {0.75, c * 0.75}}, 1200);
  const PropertyReport rep_b = verify_corollary_b(slow, {1.0, 0.1}, 64, -1.0);

  r.seconds = seconds_since(t0);
  r.pass = rep_a.pass && rep_b.pass;
  r.detail = "(2,0)->(4,0) slack=" + fmt(rep_a.worst_slack) +
             " (1,0.1)->(1,0.1) slack=" + fmt(rep_b.worst_slack);
  return r;
}

CriterionResult criterion7() {
  const auto t0 = Clock::now();
  CriterionResult r{7, "Metric layer (Moebius suite + path optimization)",
                    false, "", 0};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Domain disc = Domain::disc();

  auto rand_disc_point = [&](double rmax) {
    const double rho = rmax * std::sqrt(unif(rng));
    const double th = 2.0 * std::numbers::pi * unif(rng);
    return cplx(rho * std::cos(th), rho * std::sin(th));
  };

  double worst_rel = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const cplx a = rand_disc_point(0.8);
    const double th = 2.0 * std::numbers::pi * unif(rng);
    const cplx phase(std::cos(th), std::sin(th));
    auto moebius = [&](cplx z) { return phase * (z - a) / (1.0 - std::conj(a) * z); };
    auto moebius_deriv = [&](cplx z) {
      const cplx d = 1.0 - std::conj(a) * z;
      return phase * (1.0 - std::norm(a)) / (d * d);
    };
    const cplx z = rand_disc_point(0.9);
    const cplx w = rand_disc_point(0.9);
    const cplx v(unif(rng) * 2 - 1, unif(rng) * 2 - 1);

    const double k1 = infinitesimal_metric(disc, {z}, {v});
    const double k2 =
        infinitesimal_metric(disc, {moebius(z)}, {moebius_deriv(z) * v});
    worst_rel = std::max(worst_rel, std::abs(k1 - k2) / std::max(k1, 1e-300));

    const double d1 = distance(disc, {z}, {w});
    const double d2 = distance(disc, {moebius(z)}, {moebius(w)});
    if (d1 > 1e-12)
      worst_rel = std::max(worst_rel, std::abs(d1 - d2) / d1);
  }

  double worst_gap = 0.0;
  bool upper_bound_ok = true;
  const Domain bidisc = Domain::polydisc({1.0, 1.0});
  for (int i = 0; i < 10; ++i) {
    const bool two = i >= 5;
    const Domain& domain = two ? bidisc : disc;
    CVec z, w;
    if (two) {
      z = {rand_disc_point(0.6), rand_disc_point(0.6)};
      w = {rand_disc_point(0.6), rand_disc_point(0.6)};
    } else {
      z = {rand_disc_point(0.6)};
      w = {rand_disc_point(0.6)};
    }
    const double closed = distance(domain, z, w);
    const double upper = distance_via_path_optimization(domain, z, w);
    worst_gap = std::max(worst_gap, std::abs(upper - closed));
    upper_bound_ok = upper_bound_ok && upper >= closed - 1e-12;
  }

  r.seconds = seconds_since(t0);
  r.pass = worst_rel <= 1e-10 && worst_gap <= 1e-3 && upper_bound_ok &&
           r.seconds < 30.0;
  r.detail = "max Moebius rel err=" + fmt(worst_rel) +
             " max path-opt gap=" + fmt(worst_gap);
  return r;
}

CriterionResult criterion8() {
  const auto t0 = Clock::now();
  CriterionResult r{8, "Royden lower-bound diagnostic", false, "", 0};

  const double disc_bound =
      royden_lower_bound(Domain::disc(), {cplx(0.0, 0.0)}, 0.25, 64, 16);
  const bool exact = std::abs(disc_bound - 1.0) <= 1e-10;

  struct Fixture {
    Domain domain;
    CVec x;
    double radius;
  };
  const std::vector<Fixture> fixtures = {
      {Domain::disc(), {cplx(0.2, 0.1)}, 0.3},
      {Domain::ball(2), {cplx(0.0, 0.0), cplx(0.0, 0.0)}, 0.3},
      {Domain::polydisc({1.0, 1.0}), {cplx(0.0, 0.2), cplx(0.1, 0.0)}, 0.3},
      {Domain::halfplane(), {cplx(0.0, 1.0)}, 0.4},
      {Domain::punctured_disc(), {cplx(0.5, 0.0)}, 0.2},
      {Domain::annulus(0.25), {cplx(0.6, 0.0)}, 0.1},
      {Domain::product({Domain::disc(), Domain::annulus(0.25)}),
       {cplx(0.0, 0.0), cplx(0.6, 0.0)},
       0.1},
  };
  bool all_positive = true;
  double min_bound = 1e300;
  for (const Fixture& f : fixtures) {
    const double b = royden_lower_bound(f.domain, f.x, f.radius, 64, 16);
    all_positive = all_positive && b > 0.0;
    min_bound = std::min(min_bound, b);
  }

  r.seconds = seconds_since(t0);
  r.pass = exact && all_positive;
  r.detail = "disc bound=" + fmt(disc_bound) +
             " min fixture bound=" + fmt(min_bound);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_all(std::ostream* out,
                                     const SuiteConfig& cfg) {
  std::vector<CriterionResult> results;
  results.push_back(criterion1(cfg));
  results.push_back(criterion2(cfg));
  results.push_back(criterion3(cfg));
  results.push_back(criterion4());
  results.push_back(criterion5(cfg));
  results.push_back(criterion6());
  results.push_back(criterion7());
  results.push_back(criterion8());
  if (out) {
    for (const CriterionResult& r : results) {
      *out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.title
           << ": " << r.detail << " (" << std::fixed << std::setprecision(2)
           << r.seconds << " s)\n";
      out->unsetf(std::ios_base::floatfield);
    }
  }
  return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

}  // namespace kobpath::acceptance
