#pragma once

#include <string>
#include <vector>

#include "newton_atlas/newton.hpp"

namespace natlas {

struct VerifyResult {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "pass" : "FAIL") + ": " + what);
  }
};

// Two explicit Moebius semiconjugacies between cubic Newton maps and their
// polynomial-like normal forms, certified by seeded sampling.  Both maps
// are applied carrying the polynomial model to the Newton map: M o g =
// f o M.  (The first M is an involution, so its direction is immaterial.)
inline VerifyResult verify_footnotes(int samples = 1000, unsigned seed = 1,
                                     double tol = 1e-10) {
  VerifyResult res;

  // M(z) = i / (sqrt(2) z) between 2z^3/(3z^2-1) and w^3 + (3/2) w
  RationalMap f1(Polynomial({cplx(0), cplx(0), cplx(0), cplx(2)}),
                 Polynomial({cplx(-1), cplx(0), cplx(3)}), true);
  RationalMap g1(Polynomial({cplx(0), cplx(1.5), cplx(0), cplx(1)}),
                 Polynomial::constant(1), true);
  MobiusMap m1{cplx(0), cplx(0, 1), cplx(std::sqrt(2.0)), cplx(0)};
  double r1 = mobius_conjugate_check(m1, g1, f1, samples, seed);
  res.check(r1 < tol, "i/(sqrt(2) z) conjugacy residual " +
                          std::to_string(r1));

  // M(z) = i/z - 1/2 between the Newton map of (z^2 - 1/4) e^z
  // and w^3 - i w^2 + w
  NewtonSpec spec = build_newton(
      Polynomial({cplx(-0.25), cplx(0), cplx(1)}),
      Polynomial({cplx(0), cplx(1)}));
  RationalMap g2(Polynomial({cplx(0), cplx(1), cplx(0, -1), cplx(1)}),
                 Polynomial::constant(1), true);
  MobiusMap m2{cplx(-0.5), cplx(0, 1), cplx(1), cplx(0)};
  double r2 = mobius_conjugate_check(m2, g2, spec.map, samples, seed);
  res.check(r2 < tol, "i/z - 1/2 conjugacy residual " + std::to_string(r2));
  return res;
}

// Parabolic Blaschke products P_k for k = 2..6: fixed point 1 with
// multiplier 1, the unit circle preserved, critical point 0 of degree k.
inline VerifyResult verify_blaschke(int circle_samples = 100) {
  VerifyResult res;
  for (int k = 2; k <= 6; ++k) {
    BlaschkeModel bm = blaschke_model(k);
    SpherePoint at1 = bm.map.eval(cplx(1.0));
    res.check(!at1.inf && std::abs(at1.v - 1.0) < 1e-12,
              "P_" + std::to_string(k) + "(1) = 1");
    cplx mult = bm.map.derivative_at(cplx(1.0));
    res.check(std::abs(mult - 1.0) < 1e-8,
              "P_" + std::to_string(k) + " multiplier at 1");
    double worst = 0;
    for (int s = 0; s < circle_samples; ++s) {
      double th = 2.0 * M_PI * s / circle_samples + 0.1;
      cplx z = std::exp(cplx(0, th));
      SpherePoint w = bm.map.eval(z);
      if (w.inf) { worst = 1; break; }
      worst = std::max(worst, std::abs(std::abs(w.v) - 1.0));
    }
    res.check(worst < 1e-12,
              "P_" + std::to_string(k) + " preserves the unit circle (dev " +
                  std::to_string(worst) + ")");
    // critical point 0 with local degree k: the Wronskian vanishes to
    // order exactly k - 1 at 0
    Polynomial w = bm.map.num().derivative() * bm.map.den() -
                   bm.map.num() * bm.map.den().derivative();
    double scale = std::max(w.coeff_scale(), 1e-300);
    bool ord_ok = std::abs(w.coeff(k - 1)) > 1e-8 * scale;
    for (int j = 0; j < k - 1; ++j)
      ord_ok = ord_ok && std::abs(w.coeff(j)) <= 1e-12 * scale;
    res.check(ord_ok, "P_" + std::to_string(k) +
                          " critical point 0 has local degree " +
                          std::to_string(k));
  }
  return res;
}

}  // namespace natlas
