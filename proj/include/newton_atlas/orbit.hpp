#pragma once

#include <optional>
#include <vector>

#include "newton_atlas/newton.hpp"

namespace natlas {

enum class FateKind { Root, Petal, Undecided };

struct Fate {
  FateKind kind = FateKind::Undecided;
  int index = -1;  // root index or petal index

  static Fate root(int i) { return {FateKind::Root, i}; }
  static Fate petal(int j) { return {FateKind::Petal, j}; }
  static Fate undecided() { return {}; }

  bool operator==(const Fate&) const = default;
};

struct CaptureParams {
  double tau_capture = 1e-6;
  double r_escape = 1e6;       // hard ceiling on the petal trigger radius
  double angle_tol_deg = 10.0;
  int arg_window = 50;         // argument-stabilization window (steps)
  int confirm_steps = 5;       // contraction confirmation after root capture
  double tau_pole = kTauPole;
  int trace_cap = 0;           // keep at most this many orbit points
};

inline int default_budget(int n) { return n >= 1 ? 50000 : 5000; }

struct OrbitRecord {
  cplx start{0};
  Fate fate;
  int steps = 0;
  double landing_error = 0.0;
  std::vector<cplx> trace;
};

// Precomputed per-map data shared by every orbit of a grid or scan.
struct OrbitContext {
  const NewtonSpec* spec = nullptr;
  std::vector<cplx> roots;          // roots of p, cluster representatives
  std::vector<double> petal_dirs;   // empty when n = 0
  double trigger_radius = 0.0;      // petal detection radius, budget-aware
  CaptureParams caps;

  OrbitContext(const NewtonSpec& s, int budget, CaptureParams c = {})
      : spec(&s), caps(c) {
    for (const auto& rc : poly_roots(s.p)) roots.push_back(rc.location);
    if (s.n >= 1) {
      petal_dirs = petal_directions_general(s.n, qprime_lead(s));
      // Parabolic escape is polynomially slow: |z|^n grows by about
      // n/|b| per step, so the radius reachable inside the budget is
      // (n * budget / |b|)^(1/n).  Half of that, capped, is the trigger.
      double b = std::abs(qprime_lead(s));
      double reach = std::pow(static_cast<double>(s.n) * budget /
                                  std::max(b, 1e-12),
                              1.0 / s.n);
      trigger_radius = std::min({caps.r_escape, 1000.0,
                                 std::max(8.0, 0.5 * reach)});
    }
  }
};

namespace detail {

// circular mean of angles; returns false if the spread exceeds tol
inline bool stable_mean_angle(const std::vector<double>& args, double tol,
                              double* mean_out) {
  double cx = 0, cy = 0;
  for (double a : args) {
    cx += std::cos(a);
    cy += std::sin(a);
  }
  double mean = std::atan2(cy, cx);
  for (double a : args)
    if (angle_dist(a, mean) > tol) return false;
  *mean_out = wrap_angle(mean);
  return true;
}

}  // namespace detail

inline OrbitRecord iterate_orbit(const OrbitContext& ctx, cplx z0, int budget) {
  const NewtonSpec& spec = *ctx.spec;
  const CaptureParams& caps = ctx.caps;
  OrbitRecord rec;
  rec.start = z0;

  const int w = std::max(2, caps.arg_window);
  std::vector<double> ring_abs(static_cast<size_t>(w), 0.0);
  std::vector<double> ring_arg(static_cast<size_t>(w), 0.0);

  cplx z = z0;
  double angle_tol = caps.angle_tol_deg * M_PI / 180.0;

  for (int k = 0; k <= budget; ++k) {
    if (caps.trace_cap > 0 && static_cast<int>(rec.trace.size()) < caps.trace_cap)
      rec.trace.push_back(z);

    // root capture, confirmed by a contracting window
    for (size_t i = 0; i < ctx.roots.size(); ++i) {
      double cap = caps.tau_capture * std::max(1.0, std::abs(ctx.roots[i]));
      double dist = std::abs(z - ctx.roots[i]);
      if (dist < cap) {
        cplx zc = z;
        double prev = dist;
        bool contracting = true;
        for (int c = 0; c < caps.confirm_steps; ++c) {
          SpherePoint nx = spec.map.eval(zc, caps.tau_pole);
          if (nx.inf) { contracting = false; break; }
          zc = nx.v;
          double dcur = std::abs(zc - ctx.roots[i]);
          if (dcur > prev && dcur > cap) { contracting = false; break; }
          prev = dcur;
        }
        if (contracting) {
          rec.fate = Fate::root(static_cast<int>(i));
          rec.steps = k;
          rec.landing_error = prev;
          return rec;
        }
      }
    }

    // petal escape: modulus beyond the trigger for a whole window, net
    // growth, and a stabilized argument near an attracting direction
    if (spec.n >= 1 && k >= w) {
      size_t slot = static_cast<size_t>(k % w);
      double oldest = ring_abs[slot];  // value from w steps ago
      double az = std::abs(z);
      bool window_out = az >= oldest;
      if (window_out) {
        for (double r : ring_abs) window_out = window_out && r > ctx.trigger_radius;
      }
      if (window_out && az > ctx.trigger_radius) {
        std::vector<double> args = ring_arg;
        args.push_back(std::arg(z));
        double mean = 0;
        if (detail::stable_mean_angle(args, angle_tol, &mean)) {
          for (size_t j = 0; j < ctx.petal_dirs.size(); ++j) {
            if (angle_dist(mean, ctx.petal_dirs[j]) <= angle_tol) {
              rec.fate = Fate::petal(static_cast<int>(j));
              rec.steps = k;
              rec.landing_error = angle_dist(mean, ctx.petal_dirs[j]);
              return rec;
            }
          }
        }
      }
    }

    if (k == budget) break;

    ring_abs[static_cast<size_t>(k % w)] = std::abs(z);
    ring_arg[static_cast<size_t>(k % w)] = std::arg(z);

    SpherePoint nx = spec.map.eval(z, caps.tau_pole);
    if (nx.inf) {
      // prepole: the orbit continues from N(infinity) = infinity and stays
      // there, which decides nothing at the petal level
      rec.fate = Fate::undecided();
      rec.steps = k;
      return rec;
    }
    if (!is_finite_number(nx.v)) {
      rec.fate = Fate::undecided();
      rec.steps = k;
      return rec;
    }
    z = nx.v;
  }

  rec.fate = Fate::undecided();
  rec.steps = budget;
  return rec;
}

inline OrbitRecord iterate_orbit(const NewtonSpec& spec, cplx z0, int budget,
                                 CaptureParams caps = {}) {
  OrbitContext ctx(spec, budget, caps);
  return iterate_orbit(ctx, z0, budget);
}

}  // namespace natlas
