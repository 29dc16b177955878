#include <doctest.h>

#include <cmath>
#include <random>

#include "kobpath/numerics.hpp"

using namespace kobpath;

namespace {
constexpr double kAtanhHalf = 0.5493061443340548;
}

TEST_CASE("adaptive Simpson on constants is exact") {
  const double v = adaptive_simpson([](double) { return 1.0; }, 0.0, 1.0,
                                    QuadConfig{1e-10, 30});
  CHECK(v == 1.0);
}

TEST_CASE("adaptive Simpson integrates the Poincare density") {
  const double v = adaptive_simpson(
      [](double t) { return 1.0 / (1.0 - t * t); }, 0.0, 0.5,
      QuadConfig{1e-10, 30});
  CHECK(std::abs(v - kAtanhHalf) < 1e-10);
}

TEST_CASE("adaptive Simpson is exact for cubics") {
  const double v = adaptive_simpson([](double t) { return 3.0 * t * t; }, 0.0,
                                    1.0, QuadConfig{1e-12, 30});
  CHECK(std::abs(v - 1.0) < 1e-14);
}

TEST_CASE("adaptive Simpson additivity under interval splitting") {
  auto f = [](double t) { return std::exp(-t) + std::sin(3 * t) + 2.0; };
  const QuadConfig cfg{1e-10, 30};
  const double whole = adaptive_simpson(f, 0.0, 2.0, cfg);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.1, 1.9);
  for (int i = 0; i < 20; ++i) {
    const double m = unif(rng);
    const double split =
        adaptive_simpson(f, 0.0, m, cfg) + adaptive_simpson(f, m, 2.0, cfg);
    CHECK(std::abs(whole - split) <= 2.0 * cfg.tol);
  }
}

TEST_CASE("adaptive Simpson reports non-convergence") {
  auto spike = [](double t) { return 1.0 / std::sqrt(t + 1e-300); };
  CHECK_THROWS_AS(adaptive_simpson(spike, 0.0, 1.0, QuadConfig{1e-14, 6}),
                  QuadratureNonConvergence);
}

TEST_CASE("monotone interpolation inversion") {
  const std::vector<double> grid{0.0, 1.0, 2.0};
  const std::vector<double> values{0.0, 0.5, 1.0};
  CHECK(monotone_interp_invert(grid, values, 0.25) == doctest::Approx(0.5));
  CHECK(monotone_interp_invert(grid, values, 0.5) == 1.0);  // exact node

  const std::vector<double> tie_grid{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> tie_values{0.0, 0.5, 0.5, 1.0};
  CHECK(monotone_interp_invert(tie_grid, tie_values, 0.5) == 1.0);  // leftmost

  CHECK_THROWS_AS(monotone_interp_invert(grid, values, 1.5), OutOfRange);
}

TEST_CASE("inversion round-trip on random strictly increasing tables") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.01, 1.0);
  std::vector<double> grid{0.0}, values{0.0};
  for (int i = 0; i < 50; ++i) {
    grid.push_back(grid.back() + unif(rng));
    values.push_back(values.back() + unif(rng));
  }
  std::uniform_real_distribution<double> s_dist(0.0, values.back());
  for (int i = 0; i < 1000; ++i) {
    const double s = s_dist(rng);
    const double t = monotone_interp_invert(grid, values, s);
    // Interpolate forward at t again.
    const auto it = std::upper_bound(grid.begin(), grid.end(), t);
    std::size_t k = static_cast<std::size_t>(it - grid.begin());
    if (k == 0) k = 1;
    if (k >= grid.size()) k = grid.size() - 1;
    const double frac = (t - grid[k - 1]) / (grid[k] - grid[k - 1]);
    const double back = values[k - 1] + frac * (values[k] - values[k - 1]);
    CHECK(std::abs(back - s) < 1e-12 * (1.0 + values.back()));
  }
}

TEST_CASE("golden section finds a parabola minimum") {
  const double x = golden_section_min(
      [](double t) { return (t - 0.3) * (t - 0.3); }, 0.0, 1.0, 1e-10, 200);
  CHECK(std::abs(x - 0.3) < 1e-8);
}

TEST_CASE("hausdorff distance basics") {
  const std::vector<CVec> a{{cplx(0, 0)}, {cplx(1, 0)}};
  CHECK(hausdorff_distance(a, a) == 0.0);
  const std::vector<CVec> b{{cplx(0, 0)}};
  const std::vector<CVec> c{{cplx(0.1, 0)}};
  CHECK(hausdorff_distance(b, c) == doctest::Approx(0.1));
  // Symmetry on random sets.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<CVec> p, q;
  for (int i = 0; i < 30; ++i) p.push_back({cplx(unif(rng), unif(rng))});
  for (int i = 0; i < 17; ++i) q.push_back({cplx(unif(rng), unif(rng))});
  CHECK(hausdorff_distance(p, q) == hausdorff_distance(q, p));
}
