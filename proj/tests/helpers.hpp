#pragma once

#include <cmath>
#include <random>

#include "kobpath/path.hpp"

namespace kobpath::testing {

// gamma(t) = t on [0, b] along the real diameter of the unit disc.
inline Path radial_path(double b = 0.5) {
  Segment seg{0.0, b, AffineSeg{{cplx(0.0, 0.0)}, {cplx(b, 0.0)}}};
  return Path(Domain::disc(), b, {seg});
}

// affine / constant / affine with the plateau on [1, 2].
inline Path plateau_path() {
  Segment s1{0.0, 1.0, AffineSeg{{cplx(0.0, 0.0)}, {cplx(0.3, 0.0)}}};
  Segment s2{1.0, 2.0, ConstantSeg{{cplx(0.3, 0.0)}}};
  Segment s3{2.0, 3.0, AffineSeg{{cplx(0.3, 0.0)}, {cplx(0.6, 0.0)}}};
  return Path(Domain::disc(), 3.0, {s1, s2, s3});
}

inline Path two_plateau_path() {
  Segment s1{0.0, 0.5, AffineSeg{{cplx(0.0, 0.0)}, {cplx(0.25, 0.0)}}};
  Segment s2{0.5, 1.0, ConstantSeg{{cplx(0.25, 0.0)}}};
  Segment s3{1.0, 2.0, AffineSeg{{cplx(0.25, 0.0)}, {cplx(0.5, 0.0)}}};
  Segment s4{2.0, 2.5, ConstantSeg{{cplx(0.5, 0.0)}}};
  Segment s5{2.5, 3.0, AffineSeg{{cplx(0.5, 0.0)}, {cplx(0.7, 0.0)}}};
  return Path(Domain::disc(), 3.0, {s1, s2, s3, s4, s5});
}

// Sampled path u -> tanh(u) on [0, L]: the unit-speed radial geodesic.
inline Path tanh_path(double L, int nodes = 800) {
  SampledSeg s;
  for (int k = 0; k <= nodes; ++k) {
    const double u = L * k / nodes;
    s.params.push_back(u);
    s.points.push_back({cplx(std::tanh(u), 0.0)});
  }
  return Path(Domain::disc(), L, {Segment{0.0, L, std::move(s)}});
}

// Sampled function-graph path t -> f(t) (complex-valued) in a domain.
template <typename F>
inline Path sampled_path(Domain domain, double T, F f, int nodes = 400) {
  SampledSeg s;
  for (int k = 0; k <= nodes; ++k) {
    const double t = T * k / nodes;
    s.params.push_back(t);
    s.points.push_back(f(t));
  }
  return Path(std::move(domain), T, {Segment{0.0, T, std::move(s)}});
}

inline cplx random_disc_point(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double rho = rmax * std::sqrt(unif(rng));
  const double th = 2.0 * std::numbers::pi * unif(rng);
  return {rho * std::cos(th), rho * std::sin(th)};
}

// Disc automorphism phi(z) = e^{i theta} (z - a) / (1 - conj(a) z).
struct DiscAutomorphism {
  cplx a;
  cplx phase;
  cplx operator()(cplx z) const {
    return phase * (z - a) / (1.0 - std::conj(a) * z);
  }
  cplx deriv(cplx z) const {
    const cplx d = 1.0 - std::conj(a) * z;
    return phase * (1.0 - std::norm(a)) / (d * d);
  }
};

inline DiscAutomorphism random_automorphism(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double th = 2.0 * std::numbers::pi * unif(rng);
  return {random_disc_point(rng, 0.85), cplx(std::cos(th), std::sin(th))};
}

}  // namespace kobpath::testing
