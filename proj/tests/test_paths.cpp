#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace kobpath;
using namespace kobpath::testing;

TEST_CASE("path construction validates its input") {
  const Domain disc = Domain::disc();
  // Partition gap.
  Segment a{0.0, 1.0, AffineSeg{{cplx(0, 0)}, {cplx(0.2, 0)}}};
  Segment b{1.5, 2.0, AffineSeg{{cplx(0.2, 0)}, {cplx(0.3, 0)}}};
  CHECK_THROWS_AS(Path(disc, 2.0, {a, b}), InvalidPath);
  // Junction jump.
  Segment c{1.0, 2.0, AffineSeg{{cplx(0.25, 0)}, {cplx(0.3, 0)}}};
  CHECK_THROWS_AS(Path(disc, 2.0, {a, c}), InvalidPath);
  // Point outside the domain.
  Segment d{0.0, 1.0, AffineSeg{{cplx(0, 0)}, {cplx(1.2, 0)}}};
  CHECK_THROWS_AS(Path(disc, 1.0, {d}), PointOutsideDomain);
  // Bad horizon.
  CHECK_THROWS_AS(Path(disc, -1.0, {a}), InvalidPath);
}

TEST_CASE("derivative on the three segment kinds") {
  const Domain disc = Domain::disc();
  Segment a{0.0, 1.0, AffineSeg{{cplx(0, 0)}, {cplx(0.5, 0)}}};
  const Path affine(disc, 1.0, {a});
  auto da = derivative(affine, 0.5);
  REQUIRE(da.has_value());
  CHECK((*da)[0] == cplx(0.5, 0.0));

  Segment c{0.0, 1.0, ConstantSeg{{cplx(0.3, 0.1)}}};
  const Path constant(disc, 1.0, {c});
  auto dc = derivative(constant, 0.25);
  REQUIRE(dc.has_value());
  CHECK((*dc)[0] == cplx(0.0, 0.0));

  // Sampled sine curve, derivative vs the analytic oracle.
  const Path sine = sampled_path(
      disc, 1.0, [](double t) { return CVec{cplx(0.5 * std::sin(t), 0.0)}; },
      1000);
  auto ds = derivative(sine, 0.5);
  REQUIRE(ds.has_value());
  CHECK(std::abs((*ds)[0].real() - 0.5 * std::cos(0.5)) < 1e-6);

  CHECK_FALSE(derivative(affine, 0.0).has_value());  // junction
  CHECK_FALSE(derivative(affine, 1.0).has_value());
  CHECK_THROWS_AS(derivative(affine, 1.5), OutOfRange);
}

TEST_CASE("speed profile") {
  const Domain disc = Domain::disc();
  Segment c{0.0, 1.0, ConstantSeg{{cplx(0.3, 0.1)}}};
  const Path constant(disc, 1.0, {c});
  const SpeedSamples s1 = speed_profile(constant, 8);
  for (std::size_t i = 0; i < s1.grid.size(); ++i)
    if (s1.defined[i]) CHECK(s1.speeds[i] == 0.0);

  const Path radial = radial_path(0.5);
  const SpeedSamples s2 = speed_profile(radial, 9);
  // Interior node at t = 0.25 exists on the uniform profile grid.
  bool found = false;
  for (std::size_t i = 0; i < s2.grid.size(); ++i) {
    if (s2.defined[i] && std::abs(s2.grid[i] - 0.25) < 1e-12) {
      CHECK(s2.speeds[i] == doctest::Approx(1.0 / (1.0 - 0.0625)));
      found = true;
    }
  }
  CHECK(found);

  const Path two = plateau_path();
  const SpeedSamples s3 = speed_profile(two, 8);
  for (std::size_t i = 0; i < s3.grid.size(); ++i) {
    if (!s3.defined[i]) continue;
    if (s3.grid[i] > 1.0 && s3.grid[i] < 2.0)
      CHECK(s3.speeds[i] == 0.0);
    else
      CHECK(s3.speeds[i] > 0.0);
  }
  CHECK_THROWS_AS(speed_profile(radial, 1), InvalidArgument);
}

TEST_CASE("zero-speed set detection") {
  const Path plateau = plateau_path();
  const SpeedSamples samples = speed_profile(plateau, 32);
  const IntervalSet zeros = zero_speed_set(samples, plateau, 1e-12, 0.05);
  REQUIRE(zeros.intervals.size() == 1);
  CHECK(zeros.intervals[0].first == doctest::Approx(1.0));
  CHECK(zeros.intervals[0].second == doctest::Approx(2.0));

  const Path radial = radial_path(0.5);
  const IntervalSet none =
      zero_speed_set(speed_profile(radial, 32), radial, 1e-12, 0.01);
  CHECK(none.intervals.empty());
  CHECK(none.points.empty());

  const Path two = two_plateau_path();
  const IntervalSet both =
      zero_speed_set(speed_profile(two, 32), two, 1e-12, 0.05);
  REQUIRE(both.intervals.size() == 2);
  CHECK(both.intervals[0].first == doctest::Approx(0.5));
  CHECK(both.intervals[0].second == doctest::Approx(1.0));
  CHECK(both.intervals[1].first == doctest::Approx(2.0));
  CHECK(both.intervals[1].second == doctest::Approx(2.5));
  // Ordering invariant.
  CHECK(both.intervals[0].second <= both.intervals[1].first);
}

TEST_CASE("zero-speed set is empty for nonzero affine chords") {
  Segment s1{0.0, 1.0, AffineSeg{{cplx(0, 0)}, {cplx(0.3, 0)}}};
  Segment s2{1.0, 2.0, AffineSeg{{cplx(0.3, 0)}, {cplx(0.3, 0.3)}}};
  const Path p(Domain::disc(), 2.0, {s1, s2});
  const IntervalSet zeros =
      zero_speed_set(speed_profile(p, 16), p, 1e-12, 0.05);
  CHECK(zeros.intervals.empty());
}

TEST_CASE("collapse of a single plateau") {
  const Path gamma = plateau_path();
  const IntervalSet zeros =
      zero_speed_set(speed_profile(gamma, 32), gamma, 1e-12, 0.05);
  const auto [aux, plan] = collapse(gamma, zeros);
  CHECK(plan.tau == doctest::Approx(2.0));
  CHECK(aux.horizon() == doctest::Approx(2.0));
  // First branch: identity below the plateau; second: shift by its length.
  for (int k = 0; k <= 20; ++k) {
    const double t = k / 20.0;
    CHECK(euclid_dist(aux.evaluate(t), gamma.evaluate(t)) < 1e-12);
  }
  for (int k = 1; k <= 20; ++k) {
    const double t = 1.0 + k / 20.0;
    CHECK(euclid_dist(aux.evaluate(t), gamma.evaluate(t + 1.0)) < 1e-12);
  }
}

TEST_CASE("collapse with empty zero set returns the path unchanged") {
  const Path gamma = radial_path(0.5);
  const auto [aux, plan] = collapse(gamma, IntervalSet{});
  CHECK(plan.tau == gamma.horizon());
  CHECK(plan.cumulative_offsets.empty());
  for (int k = 0; k <= 10; ++k)
    CHECK(euclid_dist(aux.evaluate(0.05 * k), gamma.evaluate(0.05 * k)) == 0.0);
}

TEST_CASE("collapse of two plateaus uses cumulative offsets") {
  const Path gamma = two_plateau_path();
  const IntervalSet zeros =
      zero_speed_set(speed_profile(gamma, 32), gamma, 1e-12, 0.05);
  const auto [aux, plan] = collapse(gamma, zeros);
  CHECK(plan.tau == doctest::Approx(2.0));
  REQUIRE(plan.cumulative_offsets.size() == 2);
  CHECK(plan.cumulative_offsets[0] == doctest::Approx(0.5));
  CHECK(plan.cumulative_offsets[1] == doctest::Approx(1.0));
  // Third branch: shift by the cumulative offset 1.0 beyond both plateaus.
  CHECK(euclid_dist(aux.evaluate(1.75), gamma.evaluate(2.75)) < 1e-12);
}

TEST_CASE("collapse rejects a moving interval") {
  const Path gamma = radial_path(0.5);
  IntervalSet bad;
  bad.intervals.emplace_back(0.1, 0.3);
  CHECK_THROWS_AS(collapse(gamma, bad), NotConstantOnInterval);
}

TEST_CASE("collapse of the whole interval is degenerate") {
  Segment c{0.0, 1.0, ConstantSeg{{cplx(0.2, 0.0)}}};
  const Path constant(Domain::disc(), 1.0, {c});
  IntervalSet all;
  all.intervals.emplace_back(0.0, 1.0);
  CHECK_THROWS_AS(collapse(constant, all), DegenerateResult);
}

TEST_CASE("reparam map") {
  const Path gamma = plateau_path();
  const IntervalSet zeros =
      zero_speed_set(speed_profile(gamma, 32), gamma, 1e-12, 0.05);
  const auto [aux, plan] = collapse(gamma, zeros);
  const PiecewiseAffineMap A = reparam_map(plan);
  CHECK(A(0.0) == 0.0);
  CHECK(A(3.0) == doctest::Approx(2.0));
  CHECK(A(0.5) == doctest::Approx(0.5));
  CHECK(A(1.5) == doctest::Approx(1.0));
  CHECK(A(2.5) == doctest::Approx(1.5));

  // Monotonicity on random sorted pairs.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    double s = unif(rng), t = unif(rng);
    if (s > t) std::swap(s, t);
    CHECK(A(s) <= A(t) + 1e-15);
  }

  // Identity map for an empty plan.
  const auto [same, empty_plan] = collapse(radial_path(0.5), IntervalSet{});
  const PiecewiseAffineMap id = reparam_map(empty_plan);
  for (int k = 0; k <= 10; ++k) CHECK(id(0.05 * k) == 0.05 * k);
}

TEST_CASE("collapse composition identity") {
  const Path gamma = two_plateau_path();
  const IntervalSet zeros =
      zero_speed_set(speed_profile(gamma, 32), gamma, 1e-12, 0.05);
  const auto [aux, plan] = collapse(gamma, zeros);
  const PiecewiseAffineMap A = reparam_map(plan);
  double worst = 0.0;
  for (int k = 0; k < 512; ++k) {
    const double t = 3.0 * k / 511.0;
    worst = std::max(worst, euclid_dist(gamma.evaluate(t), aux.evaluate(A(t))));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("image sampling and hausdorff") {
  const std::vector<CVec> single_a{{cplx(0, 0)}};
  const std::vector<CVec> single_b{{cplx(0.1, 0)}};
  CHECK(hausdorff(single_a, single_a) == 0.0);
  CHECK(hausdorff(single_a, single_b) == doctest::Approx(0.1));

  const Path gamma = plateau_path();
  const IntervalSet zeros =
      zero_speed_set(speed_profile(gamma, 32), gamma, 1e-12, 0.05);
  const auto [aux, plan] = collapse(gamma, zeros);
  const auto img_a = image_samples(gamma, 512);
  const auto img_b = image_samples(aux, 512);
  const double bound =
      std::max(max_sample_spacing(img_a), max_sample_spacing(img_b));
  CHECK(hausdorff(img_a, img_b) <= bound);
}
