#pragma once

#include <random>
#include <utility>
#include <vector>

#include "newton_atlas/polynomial.hpp"

namespace natlas {

inline constexpr double kTauRoot = 1e-10;
inline constexpr double kTauPole = 1e-10;

struct AffineMap {
  cplx scale{1.0};
  cplx offset{0.0};

  cplx operator()(cplx z) const { return scale * z + offset; }
  AffineMap inverse() const { return {1.0 / scale, -offset / scale}; }
  // (a then b): b(a(z))
  friend AffineMap compose(const AffineMap& b, const AffineMap& a) {
    return {b.scale * a.scale, b.scale * a.offset + b.offset};
  }
  bool is_identity(double tol = 1e-12) const {
    return std::abs(scale - 1.0) <= tol && std::abs(offset) <= tol;
  }
};

struct MobiusMap {
  cplx a{1}, b{0}, c{0}, d{1};

  cplx det() const { return a * d - b * c; }

  SpherePoint operator()(const SpherePoint& z) const {
    if (z.inf) {
      if (std::abs(c) == 0) return SpherePoint::infinity();
      return SpherePoint(a / c);
    }
    cplx den = c * z.v + d;
    cplx num = a * z.v + b;
    if (std::abs(den) == 0 ||
        std::abs(den) <= 1e-300 * std::abs(num))
      return SpherePoint::infinity();
    return SpherePoint(num / den);
  }

  MobiusMap inverse() const { return {d, -b, -c, a}; }
};

class RationalMap {
 public:
  RationalMap() : num_(Polynomial::identity()), den_(Polynomial::constant(1)) {
    cache_reversed();
  }
  RationalMap(Polynomial num, Polynomial den, bool reduced = false)
      : num_(std::move(num)), den_(std::move(den)), reduced_(reduced) {
    if (den_.is_zero()) throw Error("RationalMap: zero denominator");
    cache_reversed();
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool reduced() const { return reduced_; }
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  SpherePoint eval(const SpherePoint& z, double tau_pole = kTauPole) const {
    if (z.inf) return eval_at_infinity();
    return eval(z.v, tau_pole);
  }

  SpherePoint eval(cplx z, double tau_pole = kTauPole) const {
    if (std::abs(z) <= 1.0) {
      cplx n = num_.eval(z), d = den_.eval(z);
      double dscale = std::max(den_.eval_scale(z), 1.0);
      if (std::abs(d) <= tau_pole * dscale) {
        double nscale = std::max(num_.eval_scale(z), 1.0);
        if (std::abs(n) <= tau_pole * nscale)
          throw Indeterminate("rational_eval: 0/0, map not reduced");
        return SpherePoint::infinity();
      }
      return SpherePoint(n / d);
    }
    // chart at infinity: w = 1/z keeps Horner well conditioned
    cplx w = 1.0 / z;
    cplx n = num_rev_.eval(w), d = den_rev_.eval(w);
    double dscale = std::max(den_rev_.eval_scale(w), 1.0);
    if (std::abs(d) <= tau_pole * dscale) {
      double nscale = std::max(num_rev_.eval_scale(w), 1.0);
      if (std::abs(n) <= tau_pole * nscale)
        throw Indeterminate("rational_eval: 0/0, map not reduced");
      return SpherePoint::infinity();
    }
    cplx v = n / d;
    if (!is_finite_number(v)) return SpherePoint::infinity();
    return SpherePoint(v);
  }

  SpherePoint eval_at_infinity() const {
    int dn = num_.degree(), dd = den_.degree();
    if (dn > dd) return SpherePoint::infinity();
    if (dn < dd) return SpherePoint(cplx(0));
    return SpherePoint(num_.lead() / den_.lead());
  }

  // d/dz (num/den) as an unreduced rational map
  RationalMap derivative() const {
    Polynomial w = num_.derivative() * den_ - num_ * den_.derivative();
    return RationalMap(w, den_ * den_, false);
  }

  // value-level Wronskian: expanding the coefficients first would square
  // the coefficient scale and bury superattracting multipliers in roundoff
  cplx derivative_at(cplx z) const {
    cplx d = den_.eval(z);
    cplx w = num_.derivative().eval(z) * d -
             num_.eval(z) * den_.derivative().eval(z);
    return w / (d * d);
  }

 private:
  void cache_reversed() {
    int top = std::max(num_.degree(), den_.degree());
    num_rev_ = num_.reversed(top);
    den_rev_ = den_.reversed(top);
  }

  Polynomial num_, den_;
  Polynomial num_rev_, den_rev_;
  bool reduced_ = false;
};

// Cancel common roots of num and den within tol (relative to root scale)
// and mark the result reduced.
inline RationalMap rational_reduce(const Polynomial& num,
                                   const Polynomial& den,
                                   double tol = kTauRoot) {
  if (den.is_zero()) throw Error("rational_reduce: zero denominator");
  Polynomial n = num, d = den;
  if (n.degree() >= 1 && d.degree() >= 1) {
    std::vector<cplx> nr = poly_roots_raw(n);
    std::vector<cplx> dr = poly_roots_raw(d);
    double scale = 1.0;
    for (cplx r : nr) scale = std::max(scale, std::abs(r));
    for (cplx r : dr) scale = std::max(scale, std::abs(r));
    std::vector<bool> dr_used(dr.size(), false);
    for (cplx rn : nr) {
      for (size_t j = 0; j < dr.size(); ++j) {
        if (dr_used[j]) continue;
        if (std::abs(rn - dr[j]) <= tol * scale) {
          cplx shared = 0.5 * (rn + dr[j]);
          n = n.deflate(shared);
          d = d.deflate(shared);
          dr_used[j] = true;
          break;
        }
      }
    }
  }
  return RationalMap(std::move(n), std::move(d), true);
}

// Max over seeded random samples (uniform on a disk of radius 2) of the
// chordal distance between M(f(z)) and g(M(z)).  Small residual certifies
// the conjugacy numerically.
inline double mobius_conjugate_check(const MobiusMap& M, const RationalMap& f,
                                     const RationalMap& g, int samples,
                                     unsigned seed = 1) {
  if (samples < 1) throw Error("mobius_conjugate_check: samples >= 1");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    double r = 2.0 * std::sqrt(unit(rng));
    double th = 2.0 * M_PI * unit(rng);
    cplx z = r * cplx(std::cos(th), std::sin(th));
    SpherePoint lhs = M(f.eval(z));
    SpherePoint mz = M(SpherePoint(z));
    SpherePoint rhs = g.eval(mz);
    worst = std::max(worst, chordal(lhs, rhs));
  }
  return worst;
}

// The same sample set as mobius_conjugate_check, mapped through M; used by
// the symmetry property (M, f, g) vs (M^-1, g, f).
inline std::vector<cplx> conjugacy_sample_disk(int samples, unsigned seed = 1) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cplx> pts;
  pts.reserve(static_cast<size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    double r = 2.0 * std::sqrt(unit(rng));
    double th = 2.0 * M_PI * unit(rng);
    pts.push_back(r * cplx(std::cos(th), std::sin(th)));
  }
  return pts;
}

}  // namespace natlas
