#include <doctest.h>

#include <cmath>

#include "kobpath/properties.hpp"
#include "helpers.hpp"

using namespace kobpath;
using namespace kobpath::testing;

namespace {
constexpr double kAtanhHalf = 0.5493061443340548;
}

TEST_CASE("arc_length_between of the radial path") {
  const Path gamma = radial_path(0.5);
  const ArcLengthTable table = arc_length(gamma, QuadConfig{});
  CHECK(std::abs(arc_length_between(gamma, table, 0.0, 0.5) - kAtanhHalf) <
        1e-8);
  // Additivity.
  const double ab = arc_length_between(gamma, table, 0.0, 0.25);
  const double bc = arc_length_between(gamma, table, 0.25, 0.5);
  const double ac = arc_length_between(gamma, table, 0.0, 0.5);
  CHECK(std::abs(ab + bc - ac) < 1e-8);
  // Continuity near a degenerate pair.
  CHECK(arc_length_between(gamma, table, 0.2, 0.2 + 1e-7) < 1e-5);
  CHECK_THROWS_AS(arc_length_between(gamma, table, 0.3, 0.2), OutOfRange);
}

TEST_CASE("almost-geodesic verification") {
  // Unit-speed geodesic passes (1, 0) with nearly zero slack: the 32-point
  // verification grid lands on sample nodes (4092 = 132 * 31 intervals),
  // where distances are exact and node speeds are second-order accurate.
  const Path sigma = tanh_path(0.5, 4092);
  const PropertyReport pass = verify_almost_geodesic(sigma, {1.0, 0.0}, 32,
                                                     1e-6);
  CHECK(pass.pass);
  CHECK(pass.worst_slack <= 1e-8);

  // Constant speed 2 fails condition (b) at lambda = 1.
  const Path fast = sampled_path(
      Domain::disc(), 0.25,
      [](double t) { return CVec{cplx(std::tanh(2.0 * t), 0.0)}; }, 1200);
  const PropertyReport fail = verify_almost_geodesic(fast, {1.0, 0.0}, 32,
                                                     1e-6);
  CHECK_FALSE(fail.pass);
  CHECK(fail.worst_slack > 0.5);

  // Generous kappa makes any bounded path pass.
  const Path two = two_plateau_path();
  const ArcLengthTable table = arc_length(two, QuadConfig{}, 128);
  const double kappa = 2.0 * (table.total + two.horizon()) + 1.0;
  const double lam = 10.0;  // above the true speed bound
  const PropertyReport slack_pass =
      verify_almost_geodesic(two, {lam, kappa}, 16, 1e-9);
  CHECK(slack_pass.pass);
}

TEST_CASE("chord-arc verification") {
  const Path radial = radial_path(0.5);
  const PropertyReport pass = verify_chord_arc(radial, {1.0, 0.0}, 32, 1e-6);
  CHECK(pass.pass);

  // A long near-closing arc is not (1, 0)-chord-arc; witness spans the arc.
  SampledSeg s;
  const int m = 600;
  for (int k = 0; k <= m; ++k) {
    const double th = 1.9 * std::numbers::pi * k / m;
    s.params.push_back(static_cast<double>(k) / m);
    s.points.push_back({0.4 * cplx(std::cos(th), std::sin(th))});
  }
  const Path arc(Domain::disc(), 1.0, {Segment{0.0, 1.0, std::move(s)}});
  std::vector<PairCheck> rows;
  const PropertyReport fail = verify_chord_arc(arc, {1.0, 0.0}, 32, 1e-6,
                                               &rows);
  CHECK_FALSE(fail.pass);
  CHECK(fail.worst_slack > 0.1);
  CHECK(fail.witness_t > fail.witness_s);
  CHECK(rows.size() == 32u * 31u / 2u);

  // n = 2 checks the endpoint pair only.
  const PropertyReport endpoints = verify_chord_arc(radial, {1.0, 0.0}, 2,
                                                    1e-6);
  CHECK(endpoints.grid_size == 2);
  CHECK(endpoints.pass);
}

TEST_CASE("parameter monotonicity of the verifiers") {
  const Path arc = two_plateau_path();
  const PropertyReport base = verify_chord_arc(arc, {1.5, 0.1}, 24, 1e-9);
  const PropertyReport wider = verify_chord_arc(arc, {1.7, 0.2}, 24, 1e-9);
  CHECK(wider.worst_slack <= base.worst_slack);
  if (base.pass) CHECK(wider.pass);
}

TEST_CASE("grid refinement can only raise the worst slack") {
  const Path arc = two_plateau_path();
  // Nested grids: 9 -> 17 -> 33 points.
  const double s9 = verify_chord_arc(arc, {1.0, 1.0}, 9, 1e-9).worst_slack;
  const double s17 = verify_chord_arc(arc, {1.0, 1.0}, 17, 1e-9).worst_slack;
  const double s33 = verify_chord_arc(arc, {1.0, 1.0}, 33, 1e-9).worst_slack;
  CHECK(s17 >= s9 - 1e-12);
  CHECK(s33 >= s17 - 1e-12);
}

TEST_CASE("corollary (a) pipeline on a geodesic and a plateau curve") {
  const CorollaryAResult radial =
      chord_arc_to_almost_geodesic(radial_path(0.5), {1.0, 0.0});
  CHECK(radial.sigma_chord_arc.pass);
  CHECK(radial.sigma_almost_geodesic.pass);

  const CorollaryAResult plateau =
      chord_arc_to_almost_geodesic(plateau_path(), {1.0, 0.0});
  CHECK(plateau.reparam.collapsed);
  CHECK(plateau.sigma_chord_arc.pass);
  CHECK(plateau.sigma_almost_geodesic.pass);

  // Reparametrisation preserves the chord-arc slack (within tolerance).
  const PropertyReport original =
      verify_chord_arc(plateau_path(), {1.0, 0.0}, 64, -1.0);
  CHECK(plateau.sigma_chord_arc.worst_slack <=
        original.worst_slack + 1e-6);
}

TEST_CASE("corollary (a) rejects a non-chord-arc hypothesis") {
  SampledSeg s;
  const int m = 600;
  for (int k = 0; k <= m; ++k) {
    const double th = 1.9 * std::numbers::pi * k / m;
    s.params.push_back(static_cast<double>(k) / m);
    s.points.push_back({0.4 * cplx(std::cos(th), std::sin(th))});
  }
  const Path arc(Domain::disc(), 1.0, {Segment{0.0, 1.0, std::move(s)}});
  CHECK_THROWS_AS(chord_arc_to_almost_geodesic(arc, {1.0, 0.0}),
                  HypothesisViolated);
}

TEST_CASE("corollary (a) propagates the constant-path error") {
  Segment c{0.0, 1.0, ConstantSeg{{cplx(0.2, 0.0)}}};
  const Path constant(Domain::disc(), 1.0, {c});
  CHECK_THROWS_AS(
      chord_arc_to_almost_geodesic(constant, {1.0, 1.0}), ConstantPath);
}

TEST_CASE("corollary (b) parameter conversion") {
  const GeodesicParams p1 = almost_geodesic_to_chord_arc_params({1.0, 0.0});
  CHECK(p1.lambda == 1.0);
  CHECK(p1.kappa == 0.0);
  const GeodesicParams p2 = almost_geodesic_to_chord_arc_params({2.0, 0.5});
  CHECK(p2.lambda == 4.0);
  CHECK(p2.kappa == 2.0);
  const GeodesicParams p3 = almost_geodesic_to_chord_arc_params({1.0, 0.7});
  CHECK(p3.lambda == 1.0);
  CHECK(p3.kappa == 0.7);
  CHECK_THROWS_AS(almost_geodesic_to_chord_arc_params({0.5, 0.0}),
                  InvalidArgument);
}

TEST_CASE("corollary (b) verification") {
  // Unit-speed geodesic: (1,0)-almost-geodesic -> (1,0)-chord-arc.
  const Path sigma = tanh_path(0.5, 4092);
  CHECK(verify_corollary_b(sigma, {1.0, 0.0}, 32, 1e-6).pass);

  // Uniformly slowed geodesic: (1, 0.1)-almost-geodesic.
  const double T = 0.75;
  const double c = 1.0 - 0.1 / T;
  const Path slow = sampled_path(
      Domain::disc(), T,
      [&](double t) { return CVec{cplx(std::tanh(c * t), 0.0)}; }, 1500);
  CHECK(verify_corollary_b(slow, {1.0, 0.1}, 32, -1.0).pass);

  // Hypothesis violation: speed 2 path is not a (1, 0)-almost-geodesic.
  const Path fast = sampled_path(
      Domain::disc(), 0.25,
      [](double t) { return CVec{cplx(std::tanh(2.0 * t), 0.0)}; }, 1200);
  CHECK_THROWS_AS(verify_corollary_b(fast, {1.0, 0.0}, 32, 1e-6),
                  HypothesisViolated);
}

TEST_CASE("unit-speed chord-arc curves meet the lower bound via the table") {
  // For unit-speed sigma, |s - t| equals the tabulated arc length, so the
  // chord-arc inequality rearranges into condition (a)'s lower bound.
  const ReparamResult result = unit_speed_reparametrize(two_plateau_path());
  const Path& sigma = result.sigma;
  const ArcLengthTable table = arc_length(sigma, QuadConfig{}, 256);
  const double lam = 1.0;
  const double kappa = result.table.total + 0.01;
  REQUIRE(verify_chord_arc(sigma, {lam, kappa}, 24, 1e-6).pass);
  for (int i = 0; i < 24; ++i) {
    for (int j = i + 1; j < 24; ++j) {
      const double s = result.table.total * i / 23.0;
      const double t = result.table.total * j / 23.0;
      const double K = distance(sigma.domain(), sigma.evaluate(s),
                                sigma.evaluate(t));
      const double l = arc_length_between(sigma, table, s, t);
      CHECK((l - kappa) / lam <= K + 1e-6);
      CHECK(std::abs(l - (t - s)) <= 1e-4);
    }
  }
}

TEST_CASE("kappa bisection helper") {
  // The two-spoke polyline needs kappa > 0 at lambda = 1.
  Segment s1{0.0, 1.0, AffineSeg{{cplx(0.4, 0.0)}, {cplx(0.05, 0.0)}}};
  Segment s2{1.0, 2.0, AffineSeg{{cplx(0.05, 0.0)}, {cplx(0.0, 0.4)}}};
  const Path spokes(Domain::disc(), 2.0, {s1, s2});
  const double kappa = min_kappa_chord_arc(spokes, 1.0, 24, 1e-6);
  CHECK(kappa > 1e-3);
  CHECK(verify_chord_arc(spokes, {1.0, kappa + 1e-6}, 24, 1e-6).pass);
  CHECK_FALSE(verify_chord_arc(spokes, {1.0, kappa - 1e-3}, 24, 1e-6).pass);
  // A geodesic needs none.
  CHECK(min_kappa_chord_arc(radial_path(0.4), 1.0, 16, 1e-6) == 0.0);
}
