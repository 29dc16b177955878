#pragma once

#include <memory>
#include <optional>

#include "kobpath/path.hpp"

namespace kobpath {

/// Sampled monotone arc-length function G with total length and an inverse
/// accessor (invert below). Holds a shared copy of the integrated path so
/// queries can refine between grid nodes by live quadrature.
struct ArcLengthTable {
  std::vector<double> grid;    // t_0 = 0 < ... < t_m = horizon
  std::vector<double> values;  // G(t_i), non-decreasing, values[0] = 0
  double total = 0.0;          // ell = G(horizon)
  double quad_tol = 0.0;

  std::shared_ptr<const Path> path;        // integrated path
  std::vector<std::size_t> interval_seg;   // segment index per grid interval

  /// Monotone piecewise-linear interpolation of G.
  double value_at(double t) const;
  /// G(t) with live quadrature refinement from the bracketing grid node.
  double refined_value_at(double t, double tol) const;
};

/// Cumulative k_X-length table, adaptive Simpson per sub-interval with the
/// tolerance budget split proportionally, splitting at all breakpoints.
ArcLengthTable arc_length(const Path& path, const QuadConfig& quad,
                          int nodes_per_segment = 512);

struct FlatWitness {
  double a = 0.0, b = 0.0;
};

struct MonotoneCheck {
  bool strictly_increasing = true;
  std::optional<FlatWitness> witness;  // maximal flat when not increasing
};

/// Reports the maximal sub-interval of length >= min_length over which all
/// grid increments are <= eps_G. min_length <= 0 selects 2 grid steps.
MonotoneCheck check_strictly_increasing(const ArcLengthTable& table,
                                        double eps_G,
                                        double min_length = 0.0);

/// Returns t with |G(t) - s| <= eps_inv; leftmost preimage on residual
/// numerical flats; monotone in s up to eps_inv.
double invert(const ArcLengthTable& table, double s, double eps_inv);

struct ReparamConfig {
  QuadConfig quad{};
  double eps_speed = 1e-12;       // zero-speed threshold
  double min_zero_length = 0.0;   // <= 0: auto (2 profile grid steps)
  int profile_nodes_per_segment = 64;
  int table_nodes_per_segment = 512;
  int n_out = 1024;               // sigma sample nodes
  double eps_inv_rel = 1e-10;     // eps_inv = eps_inv_rel * (1 + ell)
  double eps_length = 1e-12;      // constant-path threshold on total length
};

struct ReparamDiagnostics {
  double max_speed_deviation = 0.0;  // max |k(sigma;sigma') - 1|, interior
  double unit_speed_fraction = 1.0;  // share of interior nodes within 1e-4
  double image_hausdorff = 0.0;
  double max_spacing = 0.0;          // larger of the two image sample gaps
  double length_discrepancy = 0.0;   // |klength(sigma) - ell|
  int interior_nodes = 0;
};

struct ReparamResult {
  Path sigma;
  ArcLengthTable table;  // table of the (possibly collapsed) source path
  bool collapsed = false;
  std::optional<CollapsePlan> plan;
  ReparamDiagnostics diagnostics;
};

/// Full pipeline: speed profile -> zero-speed set -> collapse if positive
/// length intervals are present -> arc length -> sigma = Gamma o G^{-1},
/// resampled as a Sampled path on [0, ell].
ReparamResult unit_speed_reparametrize(const Path& path,
                                       const ReparamConfig& cfg = {});

/// Reparametrisation by g without the collapse step. Throws NotInvertible
/// (with the witness interval) exactly when the zero-speed set contains an
/// interval of positive length.
ReparamResult direct_reparametrize_by_g(const Path& path,
                                        const ReparamConfig& cfg = {});

/// max over n_checks values t of |int_0^t k(sigma(u); sigma'(u)) du - t|,
/// integrals by adaptive quadrature on the resampled sigma.
double verify_key_equation(const ReparamResult& result, int n_checks);

}  // namespace kobpath
