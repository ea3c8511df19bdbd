#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "newton_atlas/rational_map.hpp"

namespace natlas {

enum class FixedKind { Superattracting, Attracting, Repelling, Parabolic };

inline const char* to_string(FixedKind k) {
  switch (k) {
    case FixedKind::Superattracting: return "superattracting";
    case FixedKind::Attracting: return "attracting";
    case FixedKind::Repelling: return "repelling";
    case FixedKind::Parabolic: return "parabolic";
  }
  return "?";
}

struct FixedPointReport {
  SpherePoint location;
  cplx multiplier{0};
  FixedKind kind = FixedKind::Attracting;
  int multiplicity = 1;   // >= 2 only for parabolic points
  int petal_count = 0;    // parabolic only: multiplicity - 1
};

struct CriticalPoint {
  cplx location;
  int local_degree = 2;  // N' vanishes to order local_degree - 1
};

struct BuildOptions {
  bool allow_low_degree = false;  // permit d < 3 (no dynamical analyses)
  double tau_root = kTauRoot;
};

// The Newton map of p * exp(q) together with its polynomial data.
// raw_num/raw_den keep the unreduced z*(p'+p q') - p over p'+p q', so
// degenerate cancellations stay visible.
struct NewtonSpec {
  Polynomial p, q;
  Polynomial raw_num, raw_den;
  RationalMap map;
  int m = 0;  // deg p
  int n = 0;  // deg q
  int d = 0;  // degree of the reduced map
  bool degenerate = false;   // reduction cancelled more than the generic amount
  bool simple_roots = true;  // p has only simple roots (standing assumption)
};

inline NewtonSpec build_newton(const Polynomial& p, const Polynomial& q,
                               const BuildOptions& opts = {}) {
  if (p.degree() < 1) throw Error("build_newton: deg(p) >= 1 required");
  int m = p.degree();
  int n = std::max(q.degree(), 0);  // constant and zero q both mean n = 0
  if (n == 0 && m == 1)
    throw ConstantMap("build_newton: deg(p)=1 and constant q give a constant Newton map");

  Polynomial den = p.derivative() + p * q.derivative();
  if (den.is_zero()) throw Error("build_newton: p' + p q' vanishes identically");
  Polynomial num = Polynomial::identity() * den - p;

  NewtonSpec spec;
  spec.p = p;
  spec.q = q;
  spec.raw_num = num;
  spec.raw_den = den;
  spec.map = rational_reduce(num, den, opts.tau_root);
  spec.m = m;
  spec.n = n;
  spec.d = spec.map.degree();
  int expected = (n >= 1) ? m + n : m;
  spec.degenerate = (spec.d != expected);
  for (const auto& rc : poly_roots(p))
    if (rc.multiplicity > 1) spec.simple_roots = false;
  if (spec.d < 3 && !opts.allow_low_degree)
    throw DegreeTooLow("build_newton: degree " + std::to_string(spec.d) +
                       " < 3; dynamical analyses need degree >= 3");
  return spec;
}

// Multiplier at infinity of the reduced map, read off algebraically in the
// w = 1/z chart: g(w) = 1/N(1/w) has g'(0) = lead(den)/lead(num) whenever
// deg num = deg den + 1.
inline cplx algebraic_infinity_multiplier(const RationalMap& f) {
  if (f.num().degree() != f.den().degree() + 1)
    throw Error("infinity multiplier: map does not fix infinity simply");
  return f.den().lead() / f.num().lead();
}

// The same quantity by central differences of w -> 1/N(1/w) at 0, with one
// Richardson step.  Independent of the algebraic route.
inline cplx numeric_infinity_multiplier(const RationalMap& f, double h = 1e-4) {
  auto g = [&f](cplx w) -> cplx {
    SpherePoint v = f.eval(1.0 / w);
    if (v.inf) return cplx(0);
    return 1.0 / v.v;
  };
  auto central = [&](double step) {
    cplx acc(0);
    // average over both axes to damp directional error
    acc += (g(cplx(step, 0)) - g(cplx(-step, 0))) / (2.0 * step);
    acc += (g(cplx(0, step)) - g(cplx(0, -step))) / (cplx(0, 2.0 * step));
    return acc / 2.0;
  };
  cplx d1 = central(h), d2 = central(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

inline FixedPointReport classify_infinity(const NewtonSpec& spec) {
  FixedPointReport r;
  r.location = SpherePoint::infinity();
  if (spec.n == 0) {
    r.multiplier = cplx(static_cast<double>(spec.m) / (spec.m - 1));
    r.kind = FixedKind::Repelling;
    r.multiplicity = 1;
    r.petal_count = 0;
  } else {
    r.multiplier = cplx(1.0);
    r.kind = FixedKind::Parabolic;
    r.multiplicity = spec.n + 1;
    r.petal_count = spec.n;
  }
  return r;
}

inline FixedKind classify_multiplier(cplx mult, double tol = 1e-8) {
  double a = std::abs(mult);
  if (a <= tol) return FixedKind::Superattracting;
  if (std::abs(mult - 1.0) <= tol) return FixedKind::Parabolic;
  if (a < 1.0) return FixedKind::Attracting;
  return FixedKind::Repelling;
}

// Finite fixed points are exactly the roots of p (N(z) - z = -p / (p'+pq')),
// reported with numerically evaluated multipliers, plus the point at
// infinity from classify_infinity.
inline std::vector<FixedPointReport> fixed_points(const NewtonSpec& spec,
                                                  double tol = 1e-8) {
  std::vector<FixedPointReport> out;
  for (const auto& rc : poly_roots(spec.p)) {
    FixedPointReport r;
    r.location = SpherePoint(rc.location);
    r.multiplier = spec.map.derivative_at(rc.location);
    r.kind = classify_multiplier(r.multiplier, tol);
    r.multiplicity = 1;
    out.push_back(r);
  }
  out.push_back(classify_infinity(spec));
  return out;
}

// Finite critical points: roots of num' den - num den' with multiplicity
// clustering; local degree = multiplicity + 1.
inline std::vector<CriticalPoint> critical_points(const NewtonSpec& spec,
                                                  double tol = 1e-12) {
  Polynomial w = spec.map.num().derivative() * spec.map.den() -
                 spec.map.num() * spec.map.den().derivative();
  std::vector<CriticalPoint> out;
  if (w.degree() < 1) {
    if (w.is_zero()) throw Error("critical_points: N' vanishes identically");
    return out;
  }
  for (const auto& rc : poly_roots(w, tol))
    out.push_back({rc.location, rc.multiplicity + 1});
  return out;
}

// Local degree of N at infinity; for every Newton map in scope the
// denominator degree is d-1, so this is 1 (infinity is never critical).
inline int local_degree_at_infinity(const NewtonSpec& spec) {
  return spec.d - spec.map.den().degree();
}

// Critical multiplicity at infinity for Riemann-Hurwitz bookkeeping.
inline int infinity_critical_multiplicity(const NewtonSpec& spec) {
  return local_degree_at_infinity(spec) - 1;
}

// Leading coefficient of q'
inline cplx qprime_lead(const NewtonSpec& spec) {
  return spec.q.derivative().lead();
}

// The n attracting directions at infinity.  For monic q' these are
// (2k+1) pi / n; a non-unit leading coefficient b rotates them by arg(b)/n.
inline std::vector<double> petal_directions_general(int n, cplx qprime_lead_coeff) {
  std::vector<double> dirs;
  dirs.reserve(static_cast<size_t>(n));
  double base = std::arg(qprime_lead_coeff);
  for (int k = 0; k < n; ++k)
    dirs.push_back(wrap_angle((M_PI + base + 2.0 * M_PI * k) / n));
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

// Attracting petal directions at infinity; requires n >= 1 and q' monic
// (normalize first), since the directions are not scaling invariant.
inline std::vector<double> petal_directions(const NewtonSpec& spec) {
  if (spec.n == 0)
    throw NotParabolic("petal_directions: infinity is not parabolic (n = 0)");
  cplx b = qprime_lead(spec);
  if (std::abs(b - 1.0) > 1e-9)
    throw Error("petal_directions: q' must be monic; apply normalize first");
  return petal_directions_general(spec.n, b);
}

struct BlaschkeModel {
  int k = 2;
  double a = 1.0 / 3.0;
  RationalMap map;
};

// P_k(z) = (z^k + a) / (1 + a z^k), a = (k-1)/(k+1): parabolic fixed point
// at 1, critical point 0 of local degree k, unit circle preserved.
inline BlaschkeModel blaschke_model(int k) {
  if (k < 2) throw Error("blaschke_model: k >= 2");
  BlaschkeModel b;
  b.k = k;
  b.a = static_cast<double>(k - 1) / (k + 1);
  std::vector<cplx> num(static_cast<size_t>(k) + 1, cplx(0));
  std::vector<cplx> den(static_cast<size_t>(k) + 1, cplx(0));
  num[0] = b.a;
  num[static_cast<size_t>(k)] = 1.0;
  den[0] = 1.0;
  den[static_cast<size_t>(k)] = b.a;
  b.map = RationalMap(Polynomial(std::move(num)), Polynomial(std::move(den)), true);

  SpherePoint at1 = b.map.eval(cplx(1.0));
  if (at1.inf || std::abs(at1.v - 1.0) > 1e-12)
    throw Error("blaschke_model: P_k(1) != 1");
  if (std::abs(b.map.derivative_at(cplx(1.0)) - 1.0) > 1e-10)
    throw Error("blaschke_model: multiplier at 1 != 1");
  return b;
}

}  // namespace natlas
