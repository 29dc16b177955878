#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace kobpath {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;  // point or tangent vector in C^n

// Interior margin used for point-membership checks; keeps metric values
// finite near the boundary blow-up.
inline constexpr double kInteriorMargin = 1e-9;

// ---------------------------------------------------------------------------
// Configuration

struct QuadConfig {
  double tol = 1e-8;  // absolute tolerance per segment
  int max_depth = 30;
};

struct OptConfig {
  int lattice_resolution = 32;  // cells spanning the domain diameter
  int control_points = 15;      // interior control points for descent
  double target_gap = 1e-3;
  int max_iters = 500;  // descent sweeps per refinement level
};

// ---------------------------------------------------------------------------
// Errors. InputError maps to CLI exit code 2, NumericalError to 3.

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch final : InputError {
  using InputError::InputError;
};
struct PointOutsideDomain final : InputError {
  using InputError::InputError;
};
struct InvalidDomain final : InputError {
  using InputError::InputError;
};
struct InvalidPath final : InputError {
  using InputError::InputError;
};
struct InvalidArgument final : InputError {
  using InputError::InputError;
};
struct InvalidSampleCounts final : InputError {
  using InputError::InputError;
};
struct BallNotContained final : InputError {
  using InputError::InputError;
};
struct OutOfRange final : InputError {
  using InputError::InputError;
};
struct HypothesisViolated final : InputError {
  using InputError::InputError;
};
struct ConstantPath final : InputError {
  using InputError::InputError;
};
struct DegenerateResult final : InputError {
  using InputError::InputError;
};
struct ParseError final : InputError {
  using InputError::InputError;
};

struct NotConstantOnInterval final : InputError {
  int interval_index;
  explicit NotConstantOnInterval(int j)
      : InputError("path is not constant on zero-speed interval #" +
                   std::to_string(j)),
        interval_index(j) {}
};

struct QuadratureNonConvergence final : NumericalError {
  using NumericalError::NumericalError;
};
struct NoFeasiblePath final : NumericalError {
  using NumericalError::NumericalError;
};

// Thrown by direct_reparametrize_by_g when the zero-speed set contains an
// interval of positive length; carries that interval as witness.
struct NotInvertible final : NumericalError {
  double witness_a, witness_b;
  NotInvertible(double a, double b)
      : NumericalError("arc-length function is not invertible: zero-speed "
                       "interval [" +
                       std::to_string(a) + ", " + std::to_string(b) + "]"),
        witness_a(a),
        witness_b(b) {}
};

// ---------------------------------------------------------------------------
// Small vector helpers

inline double euclid_norm(const CVec& v) {
  double s = 0.0;
  for (const cplx& c : v) s += std::norm(c);
  return std::sqrt(s);
}

inline double euclid_dist(const CVec& a, const CVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

inline CVec vsub(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline CVec vadd(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline CVec vscale(const CVec& a, double c) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// Hermitian inner product sum_i a_i * conj(b_i).
inline cplx hermitian_dot(const CVec& a, const CVec& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

}  // namespace kobpath
