#pragma once

#include <optional>
#include <string>
#include <vector>

#include "newton_atlas/newton.hpp"

namespace natlas {

inline constexpr double kTauConj = 1e-8;

struct NormalForm {
  Polynomial p;
  Polynomial q;
  AffineMap witness;  // A with p~ = p o A (rescaled), N~ = A^-1 o N o A
};

namespace detail {

// sum of roots over degree, via Vieta
inline cplx root_centroid(const Polynomial& p) {
  int m = p.degree();
  if (m < 1) return 0;
  return -p.coeff(m - 1) / (p.lead() * static_cast<double>(m));
}

// the root of largest modulus; ties by smallest argument in [0, 2 pi)
inline std::optional<cplx> anchor_root(const Polynomial& p) {
  // roots a hair below the positive axis would wrap to ~2 pi and lose the
  // tie they should win; snap them to 0
  auto tie_arg = [](cplx r) {
    double a = wrap_angle(std::arg(r));
    return (a > 2.0 * M_PI - 1e-9) ? 0.0 : a;
  };
  std::optional<cplx> best;
  for (const auto& rc : poly_roots(p)) {
    cplx r = rc.location;
    if (std::abs(r) < 1e-12) continue;
    if (!best) { best = r; continue; }
    double dr = std::abs(r) - std::abs(*best);
    if (dr > 1e-12 * std::abs(*best)) best = r;
    else if (std::abs(dr) <= 1e-12 * std::abs(*best)) {
      if (tie_arg(r) < tie_arg(*best) - 1e-12) best = r;
    }
  }
  return best;
}

}  // namespace detail

// Canonical representative of the affine conjugacy class.
// n = 0: p monic and centered with the anchor root at 1.
// n >= 1: q' made monic by the principal scaling, then the degree->=2
// polynomial among p, q centered (q preferred when both qualify); p monic,
// constant term of q dropped.
inline NormalForm normalize(const Polynomial& p, const Polynomial& q) {
  int m = p.degree();
  if (m < 1) throw Error("normalize: deg p >= 1 required");
  Polynomial qt = q.trimmed(1e-14);
  int n = std::max(0, qt.degree());

  cplx a(1), t(0);
  if (n == 0) {
    t = detail::root_centroid(p);
    Polynomial pc = p.compose_affine(1.0, t);
    if (auto anchor = detail::anchor_root(pc)) a = *anchor;
  } else {
    cplx b = qt.derivative().lead();  // b_{n-1}
    // principal solution of b a^n = 1
    a = std::pow(std::abs(b), -1.0 / n) *
        std::exp(cplx(0, -std::arg(b) / n));
    const Polynomial& centered = (qt.degree() >= 2) ? qt : p;
    t = detail::root_centroid(centered);
  }

  NormalForm nf;
  nf.witness = AffineMap{a, t};  // A(z) = a z + t
  Polynomial pa = p.compose_affine(a, t);
  nf.p = (1.0 / pa.lead()) * pa;
  if (n >= 1) {
    Polynomial qa = qt.compose_affine(a, t);
    std::vector<cplx> qc = qa.coeffs();
    if (!qc.empty()) qc[0] = 0;  // additive constant in q never enters N
    nf.q = Polynomial(std::move(qc));
  }
  return nf;
}

struct ConjugacyResult {
  bool conjugate = false;
  AffineMap witness;      // phi(z) = z / a, as scale = 1/a
  double residual = -1.0; // best coefficient mismatch over candidates
  std::string detail;
};

namespace detail {

// max-normalized coefficient distance of two rational maps after making
// both denominators monic
inline double rational_coeff_distance(const Polynomial& num1,
                                      const Polynomial& den1,
                                      const Polynomial& num2,
                                      const Polynomial& den2) {
  cplx l1 = den1.lead(), l2 = den2.lead();
  int dn = std::max(num1.degree(), num2.degree());
  int dd = std::max(den1.degree(), den2.degree());
  if (num1.degree() != num2.degree() || den1.degree() != den2.degree())
    return 1e300;
  double scale = 0, dist = 0;
  for (int k = 0; k <= dn; ++k) {
    cplx c1 = num1.coeff(k) / l1, c2 = num2.coeff(k) / l2;
    scale = std::max({scale, std::abs(c1), std::abs(c2)});
    dist = std::max(dist, std::abs(c1 - c2));
  }
  for (int k = 0; k <= dd; ++k) {
    cplx c1 = den1.coeff(k) / l1, c2 = den2.coeff(k) / l2;
    scale = std::max({scale, std::abs(c1), std::abs(c2)});
    dist = std::max(dist, std::abs(c1 - c2));
  }
  return dist / std::max(scale, 1e-300);
}

}  // namespace detail

// Decide affine conjugacy of two normalized Newton maps by enumerating the
// finite candidate set phi(z) = z/a: n-th roots of unity for n >= 1, the
// finite fixed points (roots of p_f) for n = 0.
inline ConjugacyResult affine_conjugacy_test(const NewtonSpec& f,
                                             const NewtonSpec& g,
                                             double tol = kTauConj) {
  ConjugacyResult res;
  if (f.m != g.m || f.n != g.n) {
    res.detail = "degree data (m, n) differ";
    return res;
  }

  std::vector<cplx> candidates;
  if (f.n >= 1) {
    for (int k = 0; k < f.n; ++k)
      candidates.push_back(std::exp(cplx(0, 2.0 * M_PI * k / f.n)));
  } else {
    for (const auto& rc : poly_roots(f.p))
      if (std::abs(rc.location) > 1e-12) candidates.push_back(rc.location);
  }

  double best = 1e300;
  for (cplx a : candidates) {
    // conjugated map: z -> f(a z) / a
    Polynomial num_c = f.map.num().compose_affine(a, 0);
    Polynomial den_c = a * f.map.den().compose_affine(a, 0);
    double d = detail::rational_coeff_distance(num_c, den_c, g.map.num(),
                                               g.map.den());
    if (d < best) {
      best = d;
      res.witness = AffineMap{1.0 / a, 0};
    }
    if (d <= tol) {
      res.conjugate = true;
      res.residual = d;
      res.witness = AffineMap{1.0 / a, 0};
      return res;
    }
  }
  res.residual = best;
  res.detail = "no candidate scaling matched within tolerance";
  return res;
}

}  // namespace natlas
