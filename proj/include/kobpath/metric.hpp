#pragma once

#include <cstdint>
#include <vector>

#include "kobpath/types.hpp"

namespace kobpath {

enum class DomainKind {
  UnitDisc,
  UnitBall,
  Polydisc,
  UpperHalfPlane,
  PuncturedDisc,
  Annulus,
  Product,
};

/// A model domain in C^n on which the Kobayashi metric and distance have
/// closed forms or covering-map formulas.
class Domain {
 public:
  static Domain disc();
  static Domain ball(int n);
  static Domain polydisc(std::vector<double> radii);
  static Domain halfplane();
  static Domain punctured_disc();
  static Domain annulus(double r_inner);
  static Domain product(std::vector<Domain> factors);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<double>& radii() const { return radii_; }
  double inner_radius() const { return r_inner_; }
  const std::vector<Domain>& factors() const { return factors_; }

  /// Slack of the defining inequalities at z (positive inside, 1-Lipschitz
  /// in the Euclidean norm). Does not check the dimension.
  double boundary_slack(const CVec& z) const;

  bool bounded() const;
  /// Euclidean diameter for bounded kinds; +inf for the half-plane.
  double euclidean_diameter() const;
  /// Per-real-axis bounding intervals [lo, hi] (2*dim entries); the
  /// half-plane contributes unbounded sentinels.
  std::vector<std::pair<double, double>> bounding_box() const;

 private:
  Domain() = default;
  DomainKind kind_ = DomainKind::UnitDisc;
  int dim_ = 1;
  std::vector<double> radii_;
  double r_inner_ = 0.0;
  std::vector<Domain> factors_;
};

/// True iff z satisfies the domain's defining inequalities with slack
/// >= margin (strict interior when margin == 0).
bool contains(const Domain& domain, const CVec& z, double margin);

/// Kobayashi metric k_X(z; v). Absolutely homogeneous in v; max of factor
/// metrics on polydiscs and products; conformal covering density on the
/// punctured disc and annuli.
double infinitesimal_metric(const Domain& domain, const CVec& z,
                            const CVec& v);

/// Sum of squared factor metrics (k_X squared on domains without factors).
/// Descent objective of the path optimizer: minimizing this discrete energy
/// yields the product-of-geodesics with constant cost pacing, which attains
/// the max-of-factors distance, while the max functional itself is flat in
/// dominated coordinates and under pacing changes.
double infinitesimal_metric_energy(const Domain& domain, const CVec& z,
                                   const CVec& v);

/// Kobayashi distance K_X(z, w) by closed form or covering-map reduction.
double distance(const Domain& domain, const CVec& z, const CVec& w);

using Polyline = std::vector<CVec>;

struct PathOptTrace {
  std::vector<double> level_lengths;  // best upper bound after each level
  double value = 0.0;
  Polyline polyline;
};

/// Upper bound on K_X(z, w) from minimizing the k_X-length functional over
/// piecewise-linear paths: lattice shortest-path initialization, then
/// coordinate descent with golden-section line search, with polyline
/// subdivision between levels.
double distance_via_path_optimization(const Domain& domain, const CVec& z,
                                      const CVec& w,
                                      const OptConfig& cfg = {});
PathOptTrace distance_via_path_optimization_traced(const Domain& domain,
                                                   const CVec& z,
                                                   const CVec& w,
                                                   const OptConfig& cfg = {});

/// Sampled estimate of the Royden constant c_x: the minimum of k_X(y; v)
/// over points y in the closed Euclidean ball around x and unit vectors v
/// (Hermitian reference metric fixed to the Euclidean one). The center x is
/// always among the sampled points.
double royden_lower_bound(const Domain& domain, const CVec& x, double radius,
                          int n_points, int n_dirs, std::uint64_t seed = 0);

}  // namespace kobpath
