#include <doctest.h>

#include <cmath>
#include <random>

#include "kobpath/reparam.hpp"
#include "helpers.hpp"

using namespace kobpath;
using namespace kobpath::testing;

namespace {
constexpr double kAtanhHalf = 0.5493061443340548;
constexpr double kAtanhQuarter = 0.2554128118829953;
}

TEST_CASE("arc length of the radial disc path") {
  const Path gamma = radial_path(0.5);
  const ArcLengthTable table = arc_length(gamma, QuadConfig{});
  CHECK(std::abs(table.total - kAtanhHalf) < 1e-8);
  CHECK(table.values.front() == 0.0);
  for (std::size_t i = 1; i < table.values.size(); ++i)
    CHECK(table.values[i] >= table.values[i - 1]);
}

TEST_CASE("arc length of a constant path is zero") {
  Segment c{0.0, 1.0, ConstantSeg{{cplx(0.3, 0.0)}}};
  const Path constant(Domain::disc(), 1.0, {c});
  const ArcLengthTable table = arc_length(constant, QuadConfig{});
  CHECK(table.total == 0.0);
}

TEST_CASE("arc length is invariant under segment splitting") {
  const Path whole = radial_path(0.5);
  Segment a{0.0, 0.2, AffineSeg{{cplx(0, 0)}, {cplx(0.2, 0)}}};
  Segment b{0.2, 0.5, AffineSeg{{cplx(0.2, 0)}, {cplx(0.5, 0)}}};
  const Path split(Domain::disc(), 0.5, {a, b});
  const QuadConfig quad{};
  const ArcLengthTable t1 = arc_length(whole, quad);
  const ArcLengthTable t2 = arc_length(split, quad);
  for (double t : {0.1, 0.2, 0.3, 0.45})
    CHECK(std::abs(t1.value_at(t) - t2.value_at(t)) <= 2.0 * quad.tol + 1e-7);
  CHECK(std::abs(t1.total - t2.total) <= 2.0 * quad.tol);
}

TEST_CASE("strict-increase check and flat witness") {
  const Path radial = radial_path(0.5);
  const MonotoneCheck ok =
      check_strictly_increasing(arc_length(radial, QuadConfig{}), 1e-14);
  CHECK(ok.strictly_increasing);

  const Path gamma = plateau_path();
  const MonotoneCheck flat =
      check_strictly_increasing(arc_length(gamma, QuadConfig{}), 1e-14);
  CHECK_FALSE(flat.strictly_increasing);
  REQUIRE(flat.witness.has_value());
  CHECK(flat.witness->a <= 1.0 + 1e-6);
  CHECK(flat.witness->b >= 2.0 - 1e-6);

  // A single interval with positive increment is strictly increasing.
  ArcLengthTable trivial;
  trivial.grid = {0.0, 1.0};
  trivial.values = {0.0, 0.5};
  trivial.total = 0.5;
  CHECK(check_strictly_increasing(trivial, 1e-14).strictly_increasing);
}

TEST_CASE("invert hits the closed-form inverse of atanh") {
  const Path gamma = radial_path(0.5);
  const ArcLengthTable table = arc_length(gamma, QuadConfig{});
  const double eps_inv = 1e-10 * (1.0 + table.total);
  CHECK(invert(table, 0.0, eps_inv) == 0.0);
  CHECK(invert(table, table.total, eps_inv) == doctest::Approx(0.5));
  CHECK(std::abs(invert(table, kAtanhQuarter, eps_inv) - 0.25) < 1e-6);
  CHECK_THROWS_AS(invert(table, table.total + 0.1, eps_inv), OutOfRange);
}

TEST_CASE("invert round-trip and monotonicity") {
  const Path gamma = radial_path(0.5);
  const ArcLengthTable table = arc_length(gamma, QuadConfig{});
  const double eps_inv = 1e-10 * (1.0 + table.total);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(0.0, table.total);
  std::vector<double> ss;
  for (int i = 0; i < 1000; ++i) ss.push_back(unif(rng));
  std::sort(ss.begin(), ss.end());
  double prev_t = -1.0;
  for (double s : ss) {
    const double t = invert(table, s, eps_inv);
    CHECK(std::abs(table.refined_value_at(t, eps_inv / 8) - s) <= 2 * eps_inv);
    CHECK(t >= prev_t - 1e-12);
    prev_t = t;
  }
}

TEST_CASE("unit-speed reparametrisation of the radial geodesic") {
  const Path gamma = radial_path(0.5);
  const ReparamResult result = unit_speed_reparametrize(gamma);
  CHECK_FALSE(result.collapsed);
  CHECK(std::abs(result.table.total - kAtanhHalf) < 1e-8);
  double worst = 0.0;
  for (int k = 0; k < 257; ++k) {
    const double u = result.table.total * k / 256.0;
    worst = std::max(worst,
                     std::abs(result.sigma.evaluate(u)[0] -
                              cplx(std::tanh(u), 0.0)));
  }
  CHECK(worst < 1e-6);
  CHECK(result.diagnostics.max_speed_deviation <= 1e-4);
  CHECK(result.diagnostics.unit_speed_fraction >= 0.99);
}

TEST_CASE("pipeline collapses the plateau and preserves image and length") {
  const Path gamma = plateau_path();
  const ReparamResult result = unit_speed_reparametrize(gamma);
  CHECK(result.collapsed);
  REQUIRE(result.plan.has_value());
  CHECK(result.plan->tau == doctest::Approx(2.0));

  // Same sigma as the plateau-free path with identical image.
  Segment s1{0.0, 1.0, AffineSeg{{cplx(0, 0)}, {cplx(0.3, 0)}}};
  Segment s2{1.0, 2.0, AffineSeg{{cplx(0.3, 0)}, {cplx(0.6, 0)}}};
  const Path free_path(Domain::disc(), 2.0, {s1, s2});
  const ReparamResult free_result = unit_speed_reparametrize(free_path);
  CHECK(std::abs(result.table.total - free_result.table.total) < 1e-8);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double u = std::min(result.table.total, free_result.table.total) *
                     k / 199.0;
    worst = std::max(worst, euclid_dist(result.sigma.evaluate(u),
                                        free_result.sigma.evaluate(u)));
  }
  CHECK(worst < 1e-6);
  CHECK(result.diagnostics.image_hausdorff <=
        2.0 * result.diagnostics.max_spacing);
}

TEST_CASE("already unit-speed paths are reproduced") {
  const Path sigma0 = tanh_path(0.5, 1200);
  const ReparamResult result = unit_speed_reparametrize(sigma0);
  CHECK(std::abs(result.table.total - 0.5) < 1e-6);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double u = result.table.total * k / 199.0;
    worst = std::max(worst,
                     euclid_dist(result.sigma.evaluate(u), sigma0.evaluate(u)));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("constant paths are rejected") {
  Segment c{0.0, 1.0, ConstantSeg{{cplx(0.3, 0.0)}}};
  const Path constant(Domain::disc(), 1.0, {c});
  CHECK_THROWS_AS(unit_speed_reparametrize(constant), ConstantPath);
  CHECK_THROWS_AS(direct_reparametrize_by_g(constant), ConstantPath);
}

TEST_CASE("direct reparametrisation fails iff a plateau exists") {
  const Path gamma = plateau_path();
  bool threw = false;
  try {
    direct_reparametrize_by_g(gamma);
  } catch (const NotInvertible& e) {
    threw = true;
    CHECK(e.witness_a < 2.0);
    CHECK(e.witness_b > 1.0);
  }
  CHECK(threw);

  // No plateau: identical output to the full pipeline.
  const Path radial = radial_path(0.5);
  const ReparamResult direct = direct_reparametrize_by_g(radial);
  const ReparamResult full = unit_speed_reparametrize(radial);
  CHECK_FALSE(direct.collapsed);
  CHECK(std::abs(direct.table.total - full.table.total) < 1e-12);

  // An isolated zero of the speed is not an interval: succeeds.
  const Path cubic = sampled_path(
      Domain::disc(), 1.0,
      [](double t) {
        const double x = t - 0.5;
        return CVec{cplx(0.3 + x * x * x, 0.0)};
      },
      1500);
  const ReparamResult iso = direct_reparametrize_by_g(cubic);
  CHECK_FALSE(iso.collapsed);
  CHECK(iso.table.total > 0.0);
}

TEST_CASE("collapse preserves the total arc length") {
  for (const Path& gamma : {plateau_path(), two_plateau_path()}) {
    const IntervalSet zeros =
        zero_speed_set(speed_profile(gamma, 32), gamma, 1e-12, 0.05);
    const auto [aux, plan] = collapse(gamma, zeros);
    const double before = arc_length(gamma, QuadConfig{}, 256).total;
    const double after = arc_length(aux, QuadConfig{}, 256).total;
    CHECK(std::abs(after - before) <= 1e-8 * (1.0 + before));
  }
}

TEST_CASE("key equation holds after the pipeline") {
  const ReparamResult radial = unit_speed_reparametrize(radial_path(0.5));
  CHECK(verify_key_equation(radial, 16) <= 1e-4);
  const ReparamResult plateau = unit_speed_reparametrize(plateau_path());
  CHECK(verify_key_equation(plateau, 16) <= 1e-4);
}

TEST_CASE("idempotence of the pipeline") {
  const ReparamResult once = unit_speed_reparametrize(two_plateau_path());
  const ReparamResult twice = unit_speed_reparametrize(once.sigma);
  CHECK(std::abs(once.table.total - twice.table.total) <=
        2e-8 * (1.0 + once.table.total));
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double u = std::min(once.table.total, twice.table.total) * k / 199.0;
    worst = std::max(worst, euclid_dist(once.sigma.evaluate(u),
                                        twice.sigma.evaluate(u)));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("sigma is Lipschitz with the window constant") {
  const ReparamResult result = unit_speed_reparametrize(two_plateau_path());
  const Path& sigma = result.sigma;
  const double ell = result.table.total;
  // Ratio k(sigma(u); v)/|v| sampled along the curve bounds the Euclidean
  // expansion of sigma; the Euclidean chart makes the comparison constant 1.
  double c_min = 1e300;
  for (int k = 0; k <= 400; ++k) {
    const double u = ell * k / 400.0;
    const CVec p = sigma.evaluate(u);
    const CVec v{cplx(1.0, 0.0)};
    c_min = std::min(c_min,
                     infinitesimal_metric(sigma.domain(), p, v) / euclid_norm(v));
  }
  const double lip = 1.0 / (0.99 * c_min);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unif(0.0, ell);
  for (int i = 0; i < 1000; ++i) {
    double s = unif(rng), t = unif(rng);
    if (s > t) std::swap(s, t);
    CHECK(euclid_dist(sigma.evaluate(s), sigma.evaluate(t)) <=
          lip * (t - s) + 1e-9);
  }
}

TEST_CASE("image preservation across the pipeline") {
  const Path gamma = two_plateau_path();
  const ReparamResult result = unit_speed_reparametrize(gamma);
  const auto img_in = image_samples(gamma, 512);
  const auto img_out = image_samples(result.sigma, 512);
  const double bound = 2.0 * std::max(max_sample_spacing(img_in),
                                      max_sample_spacing(img_out));
  CHECK(hausdorff(img_in, img_out) <= bound);
}
