#pragma once

#include "kobpath/reparam.hpp"

namespace kobpath {

struct GeodesicParams {
  double lambda = 1.0;  // >= 1
  double kappa = 0.0;   // >= 0
};

void validate(const GeodesicParams& params);

/// One tested inequality instance; slack = lhs - rhs (<= 0 satisfied).
struct PairCheck {
  double s = 0.0, t = 0.0;
  double lhs = 0.0, rhs = 0.0, slack = 0.0;
};

struct PropertyReport {
  bool pass = false;
  double worst_slack = 0.0;  // most violated margin; negative = room
  double witness_s = 0.0, witness_t = 0.0;
  int grid_size = 0;
  double tolerance = 0.0;
};

/// l_X(path|[s,t]) = G(t) - G(s) by monotone interpolation of the table.
double arc_length_between(const Path& path, const ArcLengthTable& table,
                          double s, double t);

/// Checks (a) (1/λ)|s-t| - κ <= K(σ(s),σ(t)) <= λ|s-t| + κ on all grid
/// pairs, and (b) speed <= λ at interior grid nodes.
PropertyReport verify_almost_geodesic(const Path& path,
                                      const GeodesicParams& params,
                                      int n_grid, double tol,
                                      std::vector<PairCheck>* rows = nullptr);

/// Checks l_X(path|[s,t]) <= λ K(path(s),path(t)) + κ on all grid pairs.
PropertyReport verify_chord_arc(const Path& path, const GeodesicParams& params,
                                int n_grid, double tol,
                                std::vector<PairCheck>* rows = nullptr);

struct CorollaryAResult {
  ReparamResult reparam;
  PropertyReport sigma_chord_arc;
  PropertyReport sigma_almost_geodesic;
};

/// Checks the chord-arc hypothesis, reparametrises to unit speed, then
/// verifies that sigma is still a (λ,κ)-chord-arc curve and that it is a
/// (λ,κ)-almost-geodesic. tol < 0 selects 1e-6 * (1 + ell).
CorollaryAResult chord_arc_to_almost_geodesic(const Path& path,
                                              const GeodesicParams& params,
                                              const ReparamConfig& cfg = {},
                                              int n_grid = 64,
                                              double tol = -1.0);

/// (λ, κ) -> (λ², λ²κ).
GeodesicParams almost_geodesic_to_chord_arc_params(const GeodesicParams& p);

/// Checks the almost-geodesic hypothesis, then verifies the chord-arc
/// property at the converted parameters.
PropertyReport verify_corollary_b(const Path& path,
                                  const GeodesicParams& params, int n_grid,
                                  double tol);

/// Convenience bisection on κ at fixed λ: smallest κ for which
/// verify_chord_arc passes on the given grid.
double min_kappa_chord_arc(const Path& path, double lambda, int n_grid,
                           double tol, double kappa_tol = 1e-9);

/// Default verification tolerance 1e-6 * (1 + ell).
double default_property_tol(double ell);

}  // namespace kobpath
