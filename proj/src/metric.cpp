#include "kobpath/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace kobpath {

namespace {

constexpr double kPi = std::numbers::pi;

double atanh_clamped(double u) {
  // Interior points keep u strictly below 1; clamp guards rounding only.
  u = std::clamp(u, 0.0, 1.0 - 1e-16);
  return std::atanh(u);
}

// Poincare distance on the disc of radius r (curvature -4 normalization).
double disc_distance(cplx z, cplx w, double r = 1.0) {
  z /= r;
  w /= r;
  const double num = std::abs(z - w);
  const double den = std::abs(1.0 - std::conj(z) * w);
  return atanh_clamped(num / den);
}

double halfplane_distance(cplx z, cplx w) {
  const double num = std::abs(z - w);
  const double den = std::abs(z - std::conj(w));
  return atanh_clamped(num / den);
}

// Hyperbolic distance in the strip {0 < Im w < mu}, stable for large
// horizontal offsets: with A = pi*w1/mu, B = pi*w2/mu the half-plane
// formula reduces to |sinh((A-B)/2)| / |sinh((A-conj(B))/2)| and both
// halves share the real part x.
double strip_distance(cplx w1, cplx w2, double mu) {
  const double x = kPi * (w1.real() - w2.real()) / (2.0 * mu);
  const double sa = std::sin(kPi * (w1.imag() - w2.imag()) / (2.0 * mu));
  const double sb = std::sin(kPi * (w1.imag() + w2.imag()) / (2.0 * mu));
  const double a = sa * sa;
  const double b = sb * sb;
  const double gap = std::max(b - a, 1e-300);
  if (std::abs(x) > 300.0) return std::abs(x) - 0.5 * std::log(gap);
  const double sh = std::sinh(x);
  const double S = sh * sh;
  const double u = std::sqrt((S + a) / (S + b));
  // atanh(u) via 1 - u = gap / ((S+b)(1+u)).
  return 0.5 * std::log((1.0 + u) * (1.0 + u) * (S + b) / gap);
}

// Lift to the half-plane cover of the punctured disc (z = exp(i*zeta)).
cplx punctured_lift(cplx z) {
  return {std::arg(z), std::log(1.0 / std::abs(z))};
}

double punctured_distance(cplx z, cplx w) {
  const cplx lz = punctured_lift(z);
  const cplx lw = punctured_lift(w);
  const double n0 = std::round((lz.real() - lw.real()) / (2.0 * kPi));
  double best = std::numeric_limits<double>::infinity();
  for (int d = -1; d <= 1; ++d) {
    const cplx shifted = lw + cplx(2.0 * kPi * (n0 + d), 0.0);
    best = std::min(best, halfplane_distance(lz, shifted));
  }
  return best;
}

double annulus_distance(cplx z, cplx w, double r_inner) {
  const double mu = std::log(1.0 / r_inner);
  const cplx lz = punctured_lift(z);  // strip {0 < Im < mu} lift
  const cplx lw = punctured_lift(w);
  const double n0 = std::round((lz.real() - lw.real()) / (2.0 * kPi));
  double best = std::numeric_limits<double>::infinity();
  for (int d = -1; d <= 1; ++d) {
    const cplx shifted = lw + cplx(2.0 * kPi * (n0 + d), 0.0);
    best = std::min(best, strip_distance(lz, shifted, mu));
  }
  return best;
}

void check_dim(const Domain& domain, const CVec& z, const char* what) {
  if (static_cast<int>(z.size()) != domain.dim())
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(domain.dim()) + ", got " +
                            std::to_string(z.size()));
}

void check_inside(const Domain& domain, const CVec& z) {
  if (!contains(domain, z, kInteriorMargin))
    throw PointOutsideDomain("point is not in the open domain (margin " +
                             std::to_string(kInteriorMargin) + ")");
}

double metric_unchecked(const Domain& domain, const CVec& z, const CVec& v);

double metric_slice(const Domain& factor, const CVec& z, const CVec& v,
                    std::size_t offset) {
  CVec zf(z.begin() + offset, z.begin() + offset + factor.dim());
  CVec vf(v.begin() + offset, v.begin() + offset + factor.dim());
  return metric_unchecked(factor, zf, vf);
}

double metric_unchecked(const Domain& domain, const CVec& z, const CVec& v) {
  switch (domain.kind()) {
    case DomainKind::UnitDisc:
      return std::abs(v[0]) / (1.0 - std::norm(z[0]));
    case DomainKind::UnitBall: {
      double z2 = 0.0, v2 = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        z2 += std::norm(z[i]);
        v2 += std::norm(v[i]);
      }
      const double dot = std::abs(hermitian_dot(v, z));
      const double denom = 1.0 - z2;
      return std::sqrt(denom * v2 + dot * dot) / denom;
    }
    case DomainKind::Polydisc: {
      double best = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        const double r = domain.radii()[j];
        best = std::max(best, r * std::abs(v[j]) / (r * r - std::norm(z[j])));
      }
      return best;
    }
    case DomainKind::UpperHalfPlane:
      return std::abs(v[0]) / (2.0 * z[0].imag());
    case DomainKind::PuncturedDisc: {
      const double az = std::abs(z[0]);
      return std::abs(v[0]) / (2.0 * az * std::log(1.0 / az));
    }
    case DomainKind::Annulus: {
      const double mu = std::log(1.0 / domain.inner_radius());
      const double az = std::abs(z[0]);
      const double y = std::log(1.0 / az);
      return (kPi / (2.0 * mu)) * std::abs(v[0]) /
             (az * std::sin(kPi * y / mu));
    }
    case DomainKind::Product: {
      double best = 0.0;
      std::size_t offset = 0;
      for (const Domain& f : domain.factors()) {
        best = std::max(best, metric_slice(f, z, v, offset));
        offset += static_cast<std::size_t>(f.dim());
      }
      return best;
    }
  }
  return 0.0;
}

double distance_unchecked(const Domain& domain, const CVec& z, const CVec& w);

double distance_slice(const Domain& factor, const CVec& z, const CVec& w,
                      std::size_t offset) {
  CVec zf(z.begin() + offset, z.begin() + offset + factor.dim());
  CVec wf(w.begin() + offset, w.begin() + offset + factor.dim());
  return distance_unchecked(factor, zf, wf);
}

double distance_unchecked(const Domain& domain, const CVec& z, const CVec& w) {
  switch (domain.kind()) {
    case DomainKind::UnitDisc:
      return disc_distance(z[0], w[0]);
    case DomainKind::UnitBall: {
      double z2 = 0.0, w2 = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        z2 += std::norm(z[i]);
        w2 += std::norm(w[i]);
      }
      const double den = std::norm(cplx(1.0, 0.0) - hermitian_dot(z, w));
      const double u2 = 1.0 - (1.0 - z2) * (1.0 - w2) / den;
      return atanh_clamped(std::sqrt(std::max(u2, 0.0)));
    }
    case DomainKind::Polydisc: {
      double best = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        best = std::max(best, disc_distance(z[j], w[j], domain.radii()[j]));
      return best;
    }
    case DomainKind::UpperHalfPlane:
      return halfplane_distance(z[0], w[0]);
    case DomainKind::PuncturedDisc:
      return punctured_distance(z[0], w[0]);
    case DomainKind::Annulus:
      return annulus_distance(z[0], w[0], domain.inner_radius());
    case DomainKind::Product: {
      double best = 0.0;
      std::size_t offset = 0;
      for (const Domain& f : domain.factors()) {
        best = std::max(best, distance_slice(f, z, w, offset));
        offset += static_cast<std::size_t>(f.dim());
      }
      return best;
    }
  }
  return 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Domain

Domain Domain::disc() {
  Domain d;
  d.kind_ = DomainKind::UnitDisc;
  d.dim_ = 1;
  return d;
}

Domain Domain::ball(int n) {
  if (n < 1) throw InvalidDomain("ball dimension must be positive");
  Domain d;
  d.kind_ = DomainKind::UnitBall;
  d.dim_ = n;
  return d;
}

Domain Domain::polydisc(std::vector<double> radii) {
  if (radii.empty()) throw InvalidDomain("polydisc needs at least one radius");
  for (double r : radii)
    if (!(r > 0.0)) throw InvalidDomain("polydisc radii must be positive");
  Domain d;
  d.kind_ = DomainKind::Polydisc;
  d.dim_ = static_cast<int>(radii.size());
  d.radii_ = std::move(radii);
  return d;
}

Domain Domain::halfplane() {
  Domain d;
  d.kind_ = DomainKind::UpperHalfPlane;
  d.dim_ = 1;
  return d;
}

Domain Domain::punctured_disc() {
  Domain d;
  d.kind_ = DomainKind::PuncturedDisc;
  d.dim_ = 1;
  return d;
}

Domain Domain::annulus(double r_inner) {
  if (!(r_inner > 0.0 && r_inner < 1.0))
    throw InvalidDomain("annulus requires 0 < r_inner < 1");
  Domain d;
  d.kind_ = DomainKind::Annulus;
  d.dim_ = 1;
  d.r_inner_ = r_inner;
  return d;
}

Domain Domain::product(std::vector<Domain> factors) {
  if (factors.empty()) throw InvalidDomain("product needs at least one factor");
  Domain d;
  d.kind_ = DomainKind::Product;
  d.dim_ = 0;
  for (const Domain& f : factors) d.dim_ += f.dim();
  d.factors_ = std::move(factors);
  return d;
}

double Domain::boundary_slack(const CVec& z) const {
  switch (kind_) {
    case DomainKind::UnitDisc:
      return 1.0 - std::abs(z[0]);
    case DomainKind::UnitBall:
      return 1.0 - euclid_norm(z);
    case DomainKind::Polydisc: {
      double slack = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < z.size(); ++j)
        slack = std::min(slack, radii_[j] - std::abs(z[j]));
      return slack;
    }
    case DomainKind::UpperHalfPlane:
      return z[0].imag();
    case DomainKind::PuncturedDisc:
      return std::min(std::abs(z[0]), 1.0 - std::abs(z[0]));
    case DomainKind::Annulus:
      return std::min(std::abs(z[0]) - r_inner_, 1.0 - std::abs(z[0]));
    case DomainKind::Product: {
      double slack = std::numeric_limits<double>::infinity();
      std::size_t offset = 0;
      for (const Domain& f : factors_) {
        CVec zf(z.begin() + offset, z.begin() + offset + f.dim());
        slack = std::min(slack, f.boundary_slack(zf));
        offset += static_cast<std::size_t>(f.dim());
      }
      return slack;
    }
  }
  return -std::numeric_limits<double>::infinity();
}

bool Domain::bounded() const {
  switch (kind_) {
    case DomainKind::UpperHalfPlane:
      return false;
    case DomainKind::Product:
      return std::all_of(factors_.begin(), factors_.end(),
                         [](const Domain& f) { return f.bounded(); });
    default:
      return true;
  }
}

double Domain::euclidean_diameter() const {
  switch (kind_) {
    case DomainKind::UnitDisc:
    case DomainKind::UnitBall:
    case DomainKind::PuncturedDisc:
    case DomainKind::Annulus:
      return 2.0;
    case DomainKind::Polydisc: {
      double sum_sq = 0.0;
      for (double r : radii_) sum_sq += 4.0 * r * r;
      return std::sqrt(sum_sq);
    }
    case DomainKind::UpperHalfPlane:
      return std::numeric_limits<double>::infinity();
    case DomainKind::Product: {
      double sum_sq = 0.0;
      for (const Domain& f : factors_) {
        const double d = f.euclidean_diameter();
        if (!std::isfinite(d)) return d;
        sum_sq += d * d;
      }
      return std::sqrt(sum_sq);
    }
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<std::pair<double, double>> Domain::bounding_box() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case DomainKind::UnitDisc:
    case DomainKind::PuncturedDisc:
    case DomainKind::Annulus:
      return {{-1.0, 1.0}, {-1.0, 1.0}};
    case DomainKind::UnitBall:
      return std::vector<std::pair<double, double>>(2 * dim_, {-1.0, 1.0});
    case DomainKind::Polydisc: {
      std::vector<std::pair<double, double>> box;
      for (double r : radii_) {
        box.emplace_back(-r, r);
        box.emplace_back(-r, r);
      }
      return box;
    }
    case DomainKind::UpperHalfPlane:
      return {{-inf, inf}, {0.0, inf}};
    case DomainKind::Product: {
      std::vector<std::pair<double, double>> box;
      for (const Domain& f : factors_) {
        auto sub = f.bounding_box();
        box.insert(box.end(), sub.begin(), sub.end());
      }
      return box;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Operations

bool contains(const Domain& domain, const CVec& z, double margin) {
  check_dim(domain, z, "contains");
  const double slack = domain.boundary_slack(z);
  return margin == 0.0 ? slack > 0.0 : slack >= margin;
}

double infinitesimal_metric(const Domain& domain, const CVec& z,
                            const CVec& v) {
  check_dim(domain, z, "infinitesimal_metric point");
  check_dim(domain, v, "infinitesimal_metric vector");
  check_inside(domain, z);
  return metric_unchecked(domain, z, v);
}

namespace {

double metric_sq_sum(const Domain& domain, const CVec& z, const CVec& v) {
  switch (domain.kind()) {
    case DomainKind::Polydisc: {
      double sum = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        const double r = domain.radii()[j];
        const double k = r * std::abs(v[j]) / (r * r - std::norm(z[j]));
        sum += k * k;
      }
      return sum;
    }
    case DomainKind::Product: {
      double sum = 0.0;
      std::size_t offset = 0;
      for (const Domain& f : domain.factors()) {
        CVec zf(z.begin() + offset, z.begin() + offset + f.dim());
        CVec vf(v.begin() + offset, v.begin() + offset + f.dim());
        sum += metric_sq_sum(f, zf, vf);
        offset += static_cast<std::size_t>(f.dim());
      }
      return sum;
    }
    default: {
      const double k = metric_unchecked(domain, z, v);
      return k * k;
    }
  }
}

}  // namespace

double infinitesimal_metric_energy(const Domain& domain, const CVec& z,
                                   const CVec& v) {
  check_dim(domain, z, "infinitesimal_metric_energy point");
  check_dim(domain, v, "infinitesimal_metric_energy vector");
  check_inside(domain, z);
  return metric_sq_sum(domain, z, v);
}

double distance(const Domain& domain, const CVec& z, const CVec& w) {
  check_dim(domain, z, "distance");
  check_dim(domain, w, "distance");
  check_inside(domain, z);
  check_inside(domain, w);
  return distance_unchecked(domain, z, w);
}

double royden_lower_bound(const Domain& domain, const CVec& x, double radius,
                          int n_points, int n_dirs, std::uint64_t seed) {
  check_dim(domain, x, "royden_lower_bound");
  if (n_points <= 0 || n_dirs <= 0)
    throw InvalidSampleCounts("royden_lower_bound needs n_points and n_dirs "
                              "both positive");
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  check_inside(domain, x);
  // Every boundary_slack is 1-Lipschitz, so slack(x) >= radius + margin
  // certifies the closed ball.
  if (domain.boundary_slack(x) < radius + kInteriorMargin)
    throw BallNotContained("closed ball of radius " + std::to_string(radius) +
                           " is not contained in the domain");

  const int n = domain.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto random_unit = [&]() {
    CVec v(n);
    double nrm = 0.0;
    do {
      for (int i = 0; i < n; ++i) v[i] = cplx(gauss(rng), gauss(rng));
      nrm = euclid_norm(v);
    } while (nrm < 1e-12);
    return vscale(v, 1.0 / nrm);
  };

  std::vector<CVec> points;
  points.reserve(static_cast<std::size_t>(n_points));
  points.push_back(x);  // the center is always sampled
  for (int i = 1; i < n_points; ++i) {
    const CVec dir = random_unit();
    const double rho = radius * std::pow(unif(rng), 1.0 / (2.0 * n));
    points.push_back(vadd(x, vscale(dir, rho)));
  }

  std::vector<CVec> dirs;
  dirs.reserve(static_cast<std::size_t>(n_dirs));
  if (n == 1) {
    for (int k = 0; k < n_dirs; ++k) {
      const double theta = 2.0 * kPi * k / n_dirs;
      dirs.push_back({cplx(std::cos(theta), std::sin(theta))});
    }
  } else {
    for (int k = 0; k < n_dirs; ++k) dirs.push_back(random_unit());
  }

  double best = std::numeric_limits<double>::infinity();
  for (const CVec& y : points)
    for (const CVec& v : dirs)
      best = std::min(best, metric_unchecked(domain, y, v));
  return best;
}

}  // namespace kobpath
