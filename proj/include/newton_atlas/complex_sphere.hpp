#pragma once

#include <cmath>
#include <complex>

namespace natlas {

using cplx = std::complex<double>;

// Point on the Riemann sphere: a finite complex number or the point at
// infinity, kept symbolic so no NaN/inf ever lives inside a cplx.
struct SpherePoint {
  cplx v{0.0, 0.0};
  bool inf = false;

  SpherePoint() = default;
  SpherePoint(cplx z) : v(z) {}  // NOLINT(google-explicit-constructor)
  static SpherePoint infinity() {
    SpherePoint p;
    p.inf = true;
    return p;
  }

  bool finite() const { return !inf; }
};

inline bool is_finite_number(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Chordal (spherical) distance, range [0, 2].
inline double chordal(const SpherePoint& a, const SpherePoint& b) {
  if (a.inf && b.inf) return 0.0;
  if (a.inf) return 2.0 / std::sqrt(1.0 + std::norm(b.v));
  if (b.inf) return 2.0 / std::sqrt(1.0 + std::norm(a.v));
  return 2.0 * std::abs(a.v - b.v) /
         std::sqrt((1.0 + std::norm(a.v)) * (1.0 + std::norm(b.v)));
}

inline double chordal(cplx a, cplx b) {
  return chordal(SpherePoint(a), SpherePoint(b));
}

// Smallest absolute difference of two angles, result in [0, pi].
inline double angle_dist(double a, double b) {
  double d = std::fmod(a - b, 2.0 * M_PI);
  if (d < 0) d += 2.0 * M_PI;
  return d > M_PI ? 2.0 * M_PI - d : d;
}

inline double wrap_angle(double a) {
  double w = std::fmod(a, 2.0 * M_PI);
  if (w < 0) w += 2.0 * M_PI;
  return w;
}

}  // namespace natlas
