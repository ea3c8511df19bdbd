#pragma once

#include <optional>
#include <string>
#include <vector>

#include "newton_atlas/classify.hpp"

namespace natlas {

struct RayOptions {
  double tau_ray = 1e-3;          // Hausdorff tolerance for invariance
  double escape_radius = 1e4;     // truncate once the ray reaches this radius
  int segment_budget = 120;       // backward pullback steps
  int points_per_segment = 16;
  double seed_potential = 0.1;    // |lambda| r^(k-1) at the outer seed point
};

// Invariant internal ray: a polyline from the fixed point toward infinity,
// forward invariant as a set.
struct Ray {
  cplx fixed_point{0};
  int ray_index = 0;
  std::vector<cplx> points;  // ordered from the fixed point outward
  bool complete = false;     // reached the escape radius
  std::string failure;       // empty when traced cleanly

  double asymptotic_angle() const {
    return points.empty() ? 0.0 : wrap_angle(std::arg(points.back()));
  }
};

namespace detail {

// Local data of a superattracting fixed point: local degree k and the
// leading Taylor coefficient lambda with N(a+z) - a = lambda z^k + ...
struct LocalForm {
  int k = 0;
  cplx lambda{0};
};

inline LocalForm local_form(const NewtonSpec& spec, cplx a) {
  Polynomial num_s = spec.map.num().compose_affine(1.0, a) -
                     a * spec.map.den().compose_affine(1.0, a);
  Polynomial den_s = spec.map.den().compose_affine(1.0, a);
  double nscale = std::max(num_s.coeff_scale(), 1e-300);
  cplx d0 = den_s.coeff(0);
  if (std::abs(d0) <= 1e-12 * std::max(den_s.coeff_scale(), 1.0))
    throw Error("local_form: point is a pole");
  int k = 0;
  while (k <= num_s.degree() && std::abs(num_s.coeff(k)) <= 1e-9 * nscale) ++k;
  if (k < 2)
    throw Error("local_form: fixed point is not superattracting-critical");
  return {k, num_s.coeff(k) / d0};
}

// the d preimages of w under the reduced map: roots of num - w * den
inline std::vector<cplx> preimages(const NewtonSpec& spec, cplx w) {
  Polynomial shifted = spec.map.num() - w * spec.map.den();
  return poly_roots_raw(shifted);
}

}  // namespace detail

// Trace the invariant internal ray of index ray_index (0 <= index < k-1) in
// the immediate basin of a superattracting fixed point of a polynomial
// Newton map (n = 0).  Seeded from the local power-series direction,
// extended outward by inverse iteration with nearest-branch selection.
inline Ray boettcher_ray(const NewtonSpec& spec, cplx basin_fixed_point,
                         int ray_index, const RayOptions& opts = {}) {
  if (spec.n != 0)
    throw Error("boettcher_ray: polynomial Newton maps only (n = 0)");
  detail::LocalForm lf = detail::local_form(spec, basin_fixed_point);
  if (ray_index < 0 || ray_index >= lf.k - 1)
    throw Error("boettcher_ray: ray index out of range (k-1 rays)");

  Ray ray;
  ray.fixed_point = basin_fixed_point;
  ray.ray_index = ray_index;

  // invariant direction: arg(lambda) + (k-1) theta = 0 (mod 2 pi)
  double theta =
      wrap_angle((-std::arg(lf.lambda) + 2.0 * M_PI * ray_index) / (lf.k - 1));
  cplx dir(std::cos(theta), std::sin(theta));

  // outer seed radius from the seed potential; inner radius chains to the
  // image of the seed segment so pullback arcs tile without gaps
  double r_out = std::pow(opts.seed_potential / std::abs(lf.lambda),
                          1.0 / (lf.k - 1));
  r_out = std::min(r_out, 0.1 * std::max(1.0, std::abs(basin_fixed_point)));
  double r_in = r_out * std::pow(std::abs(lf.lambda) * std::pow(r_out, lf.k - 1),
                                 1.0);
  // r_in = |lambda| r_out^k equals the modulus of the seed's forward image

  ray.points.push_back(basin_fixed_point);
  // forward images of the inner seed point fill the ray down to the fixed
  // point, so the forward-invariance check has no uncovered inner gap
  {
    std::vector<cplx> inner;
    cplx z = basin_fixed_point + r_in * dir;
    for (int i = 0; i < 60; ++i) {
      SpherePoint nx = spec.map.eval(z);
      if (nx.inf) break;
      z = nx.v;
      inner.push_back(z);
      if (std::abs(z - basin_fixed_point) < 1e-13) break;
    }
    for (auto it = inner.rbegin(); it != inner.rend(); ++it)
      ray.points.push_back(*it);
  }

  // seed segment, log-spaced radii in [r_in, r_out]
  std::vector<cplx> segment;
  int P = std::max(2, opts.points_per_segment);
  for (int i = 0; i < P; ++i) {
    double t = static_cast<double>(i) / (P - 1);
    double r = r_in * std::pow(r_out / r_in, t);
    segment.push_back(basin_fixed_point + r * dir);
  }
  for (cplx z : segment) ray.points.push_back(z);

  double margin = 10.0 * opts.tau_ray;
  for (int seg = 0; seg < opts.segment_budget; ++seg) {
    std::vector<cplx> next;
    next.reserve(segment.size());
    cplx ref = segment.front();  // continuity anchor: previous inner end
    for (size_t i = 0; i < segment.size(); ++i) {
      std::vector<cplx> cands = detail::preimages(spec, segment[i]);
      if (i > 0) ref = next[i - 1];
      else if (!next.empty()) ref = next.back();
      // for the first point of a segment, continue from the outer end of
      // the previous segment
      cplx anchor = (i == 0) ? segment.back() : next[i - 1];
      std::sort(cands.begin(), cands.end(), [&](cplx a, cplx b) {
        return std::abs(a - anchor) < std::abs(b - anchor);
      });
      if (cands.size() >= 2 &&
          std::abs(cands[0] - cands[1]) < margin) {
        ray.failure = "branch ambiguity near a critical point";
        throw BranchAmbiguity("boettcher_ray: " + ray.failure);
      }
      next.push_back(cands[0]);
    }
    segment = std::move(next);
    for (cplx z : segment) ray.points.push_back(z);
    double far = 0;
    for (cplx z : segment) far = std::max(far, std::abs(z));
    if (far > opts.escape_radius) {
      ray.complete = true;
      return ray;
    }
  }
  throw BudgetExhausted("boettcher_ray: segment budget exhausted before escape");
}

// distance from a point to a polyline
inline double polyline_distance(cplx z, const std::vector<cplx>& line) {
  double best = 1e300;
  for (size_t i = 0; i + 1 < line.size(); ++i) {
    cplx a = line[i], b = line[i + 1];
    cplx ab = b - a;
    double len2 = std::norm(ab);
    double t = len2 > 0 ? std::clamp(((z - a) * std::conj(ab)).real() / len2,
                                     0.0, 1.0)
                        : 0.0;
    best = std::min(best, std::abs(z - (a + t * ab)));
  }
  return best;
}

// One-sided Hausdorff distance of the forward image N(R) from R, skipping
// image points beyond the truncation radius.
inline double ray_invariance_defect(const NewtonSpec& spec, const Ray& ray,
                                    double escape_radius = 1e4) {
  double worst = 0;
  for (cplx z : ray.points) {
    SpherePoint nx = spec.map.eval(z);
    if (nx.inf || std::abs(nx.v) > escape_radius) continue;
    worst = std::max(worst, polyline_distance(nx.v, ray.points));
  }
  return worst;
}

struct BasinRays {
  cplx fixed_point{0};
  int local_degree = 2;
  std::vector<Ray> rays;
};

struct ChannelDiagram {
  std::vector<BasinRays> basins;  // sorted by fixed point, lexicographic
  bool complete = false;          // all rays escaped
  std::vector<std::string> failures;

  int total_rays() const {
    int t = 0;
    for (const auto& b : basins) t += static_cast<int>(b.rays.size());
    return t;
  }
};

// All fixed internal rays of all immediate basins; sum(k_i - 1) rays in
// total, meeting at infinity.
inline ChannelDiagram channel_diagram(const NewtonSpec& spec,
                                      const RayOptions& opts = {}) {
  if (spec.n != 0)
    throw Error("channel_diagram: polynomial Newton maps only (n = 0)");
  ChannelDiagram diag;
  auto roots = poly_roots(spec.p);
  for (const auto& rc : roots) {
    cplx mult = spec.map.derivative_at(rc.location);
    if (std::abs(mult) > 1e-8)
      throw Error("channel_diagram: fixed point is not superattracting");
  }
  diag.complete = true;
  for (const auto& rc : roots) {
    BasinRays basin;
    basin.fixed_point = rc.location;
    detail::LocalForm lf = detail::local_form(spec, rc.location);
    basin.local_degree = lf.k;
    for (int j = 0; j < lf.k - 1; ++j) {
      try {
        basin.rays.push_back(boettcher_ray(spec, rc.location, j, opts));
        if (!basin.rays.back().complete) diag.complete = false;
      } catch (const Error& e) {
        diag.complete = false;
        diag.failures.push_back(e.what());
        Ray stub;
        stub.fixed_point = rc.location;
        stub.ray_index = j;
        stub.failure = e.what();
        basin.rays.push_back(stub);
      }
    }
    diag.basins.push_back(std::move(basin));
  }
  return diag;
}

struct Marking {
  // per-basin optional ray index, parallel to ChannelDiagram::basins
  std::vector<std::optional<int>> marked;

  int count() const {
    int c = 0;
    for (const auto& m : marked) c += m.has_value();
    return c;
  }
};

// An n-marking: at most one fixed ray per basin.
inline Marking make_marking(const ChannelDiagram& diagram,
                            const std::vector<std::pair<int, int>>& choices) {
  Marking mk;
  mk.marked.assign(diagram.basins.size(), std::nullopt);
  for (auto [basin, ray] : choices) {
    if (basin < 0 || basin >= static_cast<int>(diagram.basins.size()))
      throw Error("make_marking: unknown basin " + std::to_string(basin));
    if (ray < 0 ||
        ray >= static_cast<int>(diagram.basins[static_cast<size_t>(basin)].rays.size()))
      throw Error("make_marking: unknown ray " + std::to_string(ray) +
                  " in basin " + std::to_string(basin));
    if (mk.marked[static_cast<size_t>(basin)].has_value())
      throw Error("make_marking: basin " + std::to_string(basin) +
                  " marked twice (at most one fixed ray per basin)");
    mk.marked[static_cast<size_t>(basin)] = ray;
  }
  return mk;
}

}  // namespace natlas
