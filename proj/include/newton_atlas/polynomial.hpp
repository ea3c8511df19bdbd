#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "newton_atlas/complex_sphere.hpp"
#include "newton_atlas/errors.hpp"

namespace natlas {

// Dense complex polynomial, coefficients ascending in degree.  The zero
// polynomial is the empty coefficient list; otherwise the top coefficient
// is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  Polynomial(std::initializer_list<cplx> coeffs)
      : c_(coeffs) {
    trim();
  }

  static Polynomial zero() { return Polynomial(); }
  static Polynomial constant(cplx a) { return Polynomial({a}); }
  static Polynomial identity() { return Polynomial({cplx(0), cplx(1)}); }

  static Polynomial from_roots(const std::vector<cplx>& roots,
                               cplx lead = cplx(1)) {
    Polynomial p = constant(lead);
    for (cplx r : roots) p = p * Polynomial({-r, cplx(1)});
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial reported as -1
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx(0);
  }
  cplx lead() const { return c_.empty() ? cplx(0) : c_.back(); }

  double coeff_scale() const {
    double s = 0;
    for (cplx a : c_) s = std::max(s, std::abs(a));
    return s;
  }

  cplx eval(cplx z) const {
    cplx acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  // sum_i |a_i| |z|^i, the backward-error scale of Horner at z
  double eval_scale(cplx z) const {
    double az = std::abs(z), acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * az + std::abs(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return zero();
    std::vector<cplx> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k)
      d[k - 1] = c_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
  }

  // Coefficients reversed and padded to the given degree:
  // rev(w) = w^deg * p(1/w).  Used for stable evaluation at large |z|.
  Polynomial reversed(int deg) const {
    std::vector<cplx> r(static_cast<size_t>(deg) + 1, cplx(0));
    for (size_t k = 0; k < c_.size(); ++k)
      r[static_cast<size_t>(deg) - k] = c_[k];
    return Polynomial(std::move(r));
  }

  // p(a z + b) by Horner over polynomial arithmetic
  Polynomial compose_affine(cplx a, cplx b) const {
    Polynomial acc;
    Polynomial lin({b, a});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * lin + constant(*it);
    return acc;
  }

  // synthetic division by (z - r); remainder discarded
  Polynomial deflate(cplx r) const {
    if (c_.size() <= 1) return zero();
    std::vector<cplx> q(c_.size() - 1);
    cplx acc = c_.back();
    for (int k = static_cast<int>(c_.size()) - 2; k >= 1; --k) {
      q[k] = acc;
      acc = acc * r + c_[static_cast<size_t>(k)];
    }
    q[0] = acc;
    return Polynomial(std::move(q));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> s(std::max(a.c_.size(), b.c_.size()), cplx(0));
    for (size_t k = 0; k < a.c_.size(); ++k) s[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) s[k] += b.c_[k];
    return Polynomial(std::move(s));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> s(std::max(a.c_.size(), b.c_.size()), cplx(0));
    for (size_t k = 0; k < a.c_.size(); ++k) s[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) s[k] -= b.c_[k];
    return Polynomial(std::move(s));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<cplx> s(a.c_.size() + b.c_.size() - 1, cplx(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) s[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(s));
  }
  friend Polynomial operator*(cplx s, const Polynomial& a) {
    std::vector<cplx> c = a.c_;
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
  }

  // drop top coefficients that are negligible relative to the largest one
  Polynomial trimmed(double rel_tol) const {
    double s = coeff_scale();
    std::vector<cplx> c = c_;
    while (!c.empty() && std::abs(c.back()) <= rel_tol * s) c.pop_back();
    return Polynomial(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == cplx(0)) c_.pop_back();
  }

  std::vector<cplx> c_;
};

struct RootCluster {
  cplx location;
  int multiplicity = 1;
};

namespace detail {

// Fujiwara bound: all roots lie within this radius.
inline double fujiwara_radius(const Polynomial& p) {
  int n = p.degree();
  double r = 0;
  cplx an = p.lead();
  for (int k = 0; k < n; ++k) {
    double t = std::abs(p.coeff(k) / an);
    if (k == 0) t *= 0.5;
    if (t > 0) r = std::max(r, std::pow(t, 1.0 / (n - k)));
  }
  return 2.0 * r;
}

}  // namespace detail

// All roots (unclustered), by Aberth-Ehrlich simultaneous iteration started
// on a circle at the Fujiwara radius.  Budget 200 sweeps.
// The tight default keeps multiple-root approximants inside the cluster
// radius: a double root stalls at distance ~sqrt(tol), so 1e-14 gives 1e-7.
inline std::vector<cplx> poly_roots_raw(const Polynomial& p,
                                        double tol = 1e-14,
                                        int max_sweeps = 200) {
  int n = p.degree();
  if (n < 1) throw Error("poly_roots: degree must be >= 1");
  // roots at the origin break the relative backward-error test; peel off
  // the z^k factor first
  int k0 = 0;
  while (k0 < n && std::abs(p.coeff(k0)) == 0.0) ++k0;
  if (k0 > 0) {
    std::vector<cplx> rest(p.coeffs().begin() + k0, p.coeffs().end());
    std::vector<cplx> out(static_cast<size_t>(k0), cplx(0));
    if (static_cast<int>(rest.size()) > 1) {
      for (cplx r : poly_roots_raw(Polynomial(std::move(rest)), tol,
                                   max_sweeps))
        out.push_back(r);
    }
    return out;
  }
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  Polynomial dp = p.derivative();
  double R = std::max(detail::fujiwara_radius(p), 1e-6);
  std::vector<cplx> z(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * M_PI * j / n + 0.4;  // offset breaks symmetry
    z[j] = R * cplx(std::cos(th), std::sin(th));
  }

  std::vector<bool> done(static_cast<size_t>(n), false);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool all_done = true;
    for (int j = 0; j < n; ++j) {
      cplx pj = p.eval(z[j]);
      double scale = std::max(p.eval_scale(z[j]), 1e-300);
      if (std::abs(pj) <= tol * scale) {
        done[j] = true;
        continue;
      }
      all_done = false;
      cplx ratio = pj / dp.eval(z[j]);
      cplx sum(0);
      for (int k = 0; k < n; ++k)
        if (k != j) sum += 1.0 / (z[j] - z[k]);
      cplx denom = 1.0 - ratio * sum;
      cplx step = (std::abs(denom) > 1e-300) ? ratio / denom : ratio;
      if (!is_finite_number(step)) step = ratio;
      z[j] -= step;
    }
    if (all_done) break;
  }
  // polish toward the machine floor with plain Newton steps, kept only
  // while the residual improves (multiple roots cannot regress)
  for (int j = 0; j < n; ++j) {
    for (int it = 0; it < 3; ++it) {
      cplx pj = p.eval(z[j]);
      cplx dj = dp.eval(z[j]);
      if (std::abs(dj) < 1e-300) break;
      cplx cand = z[j] - pj / dj;
      if (!is_finite_number(cand) ||
          std::abs(p.eval(cand)) >= std::abs(pj))
        break;
      z[j] = cand;
    }
  }
  for (int j = 0; j < n; ++j) {
    double scale = std::max(p.eval_scale(z[j]), 1e-300);
    // multiple roots flatten the residual; accept a relaxed backward error
    if (std::abs(p.eval(z[j])) > 1e-6 * scale)
      throw NonConvergence("poly_roots: solver did not converge");
  }
  return z;
}

// Cluster nearby approximants into multiple roots.  The Newton-map setup
// assumes simple roots; clusters are legitimate output here, the caller
// decides whether to warn.
inline std::vector<RootCluster> cluster_roots(std::vector<cplx> roots,
                                              double cluster_radius) {
  std::vector<RootCluster> out;
  std::vector<bool> used(roots.size(), false);
  // deterministic order: lexicographic by (re, im)
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> members{i};
    used[i] = true;
    for (size_t k = 0; k < members.size(); ++k) {
      for (size_t j = 0; j < roots.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(roots[j] - roots[members[k]]) <= cluster_radius) {
          used[j] = true;
          members.push_back(j);
        }
      }
    }
    cplx centroid(0);
    for (size_t m : members) centroid += roots[m];
    centroid /= static_cast<double>(members.size());
    out.push_back({centroid, static_cast<int>(members.size())});
  }
  return out;
}

// Roots with multiplicities; multiplicities sum to deg(p).
inline std::vector<RootCluster> poly_roots(const Polynomial& p,
                                           double tol = 1e-14) {
  std::vector<cplx> raw = poly_roots_raw(p, tol);
  double scale = 1.0;
  for (cplx r : raw) scale = std::max(scale, std::abs(r));
  return cluster_roots(std::move(raw), 1e-6 * scale);
}

}  // namespace natlas
