#pragma once

#include <functional>
#include <span>

#include "kobpath/metric.hpp"
#include "kobpath/types.hpp"

namespace kobpath {

/// Adaptive Simpson quadrature with interval-halving error estimate.
/// Deterministic node set for given inputs. Throws QuadratureNonConvergence
/// once cfg.max_depth is exceeded.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, const QuadConfig& cfg);

/// Inverts a sampled non-decreasing function: binary search for the
/// bracketing node pair, then linear interpolation. Leftmost bracket on
/// ties. Requires values.front() <= s <= values.back().
double monotone_interp_invert(std::span<const double> grid,
                              std::span<const double> values, double s);

/// Derivative-free 1-d minimizer; returns the midpoint of the final bracket.
double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double xtol, int max_iters = 100);

/// Symmetric Hausdorff distance between finite point sets.
double hausdorff_distance(const std::vector<CVec>& a,
                          const std::vector<CVec>& b);

/// Shortest path on an axis-aligned lattice graph restricted to the domain,
/// with edge weights k_X(midpoint; step). Throws NoFeasiblePath if the
/// lattice disconnects z from w.
Polyline lattice_shortest_path(const Domain& domain, const CVec& z,
                               const CVec& w, const OptConfig& cfg);

/// Coordinate descent with golden-section line search on each interior
/// control point; sweeps until the length improvement drops below
/// target_gap/10 or max_iters is reached.
Polyline refine_path(const Domain& domain, Polyline polyline,
                     const OptConfig& cfg);

/// k_X-length of a polyline by adaptive quadrature per edge.
double polyline_klength(const Domain& domain, const Polyline& polyline,
                        const QuadConfig& cfg);

}  // namespace kobpath
