#include "kobpath/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kobpath {

namespace {

struct SimpsonFrame {
  const std::function<double(double)>& f;
  int max_depth;
};

double simpson_value(double a, double fa, double fm, double fb, double b) {
  return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
}

double simpson_rec(const SimpsonFrame& frame, double a, double fa, double m,
                   double fm, double b, double fb, double whole, double tol,
                   int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = frame.f(lm);
  const double frm = frame.f(rm);
  const double left = simpson_value(a, fa, flm, fm, m);
  const double right = simpson_value(m, fm, frm, fb, b);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= frame.max_depth)
    throw QuadratureNonConvergence(
        "adaptive Simpson exceeded max depth; the integrand may blow up "
        "(path too close to the boundary?)");
  const double half_tol = 0.5 * tol;
  return simpson_rec(frame, a, fa, lm, flm, m, fm, left, half_tol, depth + 1) +
         simpson_rec(frame, m, fm, rm, frm, b, fb, right, half_tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const QuadConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw InvalidArgument("quadrature tol must be > 0");
  if (cfg.max_depth < 4) throw InvalidArgument("quadrature max_depth < 4");
  if (a > b) throw OutOfRange("adaptive_simpson requires a <= b");
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson_value(a, fa, fm, fb, b);
  SimpsonFrame frame{f, cfg.max_depth};
  return simpson_rec(frame, a, fa, m, fm, b, fb, whole,
                     std::max(cfg.tol, 1e-300), 0);
}

double monotone_interp_invert(std::span<const double> grid,
                              std::span<const double> values, double s) {
  if (grid.size() != values.size() || grid.size() < 2)
    throw InvalidArgument("monotone_interp_invert: bad table sizes");
  if (s < values.front() || s > values.back())
    throw OutOfRange("monotone_interp_invert: value outside table range");
  // First node reaching s; leftmost on ties.
  const auto it = std::lower_bound(values.begin(), values.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - values.begin());
  if (*it == s) return grid[i];
  const double v0 = values[i - 1];
  const double v1 = values[i];
  const double frac = (s - v0) / (v1 - v0);
  return grid[i - 1] + frac * (grid[i] - grid[i - 1]);
}

double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double xtol, int max_iters) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < max_iters && (b - a) > xtol; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

double hausdorff_distance(const std::vector<CVec>& a,
                          const std::vector<CVec>& b) {
  if (a.empty() || b.empty())
    throw InvalidArgument("hausdorff_distance: empty point set");
  auto directed = [](const std::vector<CVec>& from,
                     const std::vector<CVec>& to) {
    double worst = 0.0;
    for (const CVec& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const CVec& q : to) {
        best = std::min(best, euclid_dist(p, q));
        if (best <= worst) break;  // cannot raise the max any more
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace kobpath
