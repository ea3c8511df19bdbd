#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "newton_atlas/orbit.hpp"
#include "newton_atlas/parallel.hpp"

namespace natlas {

struct Viewport {
  cplx center{0};
  double width = 6.0;
  double height = 6.0;
};

// Per-pixel fate label packed into one int: roots count up from 0, petals
// from kPetalBase, undecided is -1.
inline constexpr int32_t kLabelUndecided = -1;
inline constexpr int32_t kPetalBase = 1 << 16;

inline int32_t fate_to_label(const Fate& f) {
  switch (f.kind) {
    case FateKind::Root: return f.index;
    case FateKind::Petal: return kPetalBase + f.index;
    case FateKind::Undecided: return kLabelUndecided;
  }
  return kLabelUndecided;
}

struct BasinGrid {
  Viewport viewport;
  int resx = 0, resy = 0;
  std::vector<int32_t> labels;      // row-major, resy rows of resx
  std::vector<int32_t> iterations;

  int32_t label_at(int x, int y) const {
    return labels[static_cast<size_t>(y) * resx + x];
  }
  cplx pixel_center(int x, int y) const {
    double px = (resx == 1) ? viewport.center.real()
                            : viewport.center.real() - viewport.width / 2 +
                                  (x + 0.5) * viewport.width / resx;
    // image rows run top to bottom
    double py = (resy == 1) ? viewport.center.imag()
                            : viewport.center.imag() + viewport.height / 2 -
                                  (y + 0.5) * viewport.height / resy;
    return {px, py};
  }
  std::pair<int, int> nearest_pixel(cplx z) const {
    int x = 0, y = 0;
    if (resx > 1 && viewport.width > 0) {
      double fx = (z.real() - (viewport.center.real() - viewport.width / 2)) /
                  viewport.width * resx;
      x = std::clamp(static_cast<int>(fx), 0, resx - 1);
    }
    if (resy > 1 && viewport.height > 0) {
      double fy = ((viewport.center.imag() + viewport.height / 2) - z.imag()) /
                  viewport.height * resy;
      y = std::clamp(static_cast<int>(fy), 0, resy - 1);
    }
    return {x, y};
  }
};

// Deterministic per-pixel fates; identical output for any worker count.
inline BasinGrid basin_grid(const NewtonSpec& spec, Viewport viewport,
                            int resx, int resy, int budget,
                            CaptureParams caps = {}) {
  if (viewport.width <= 0) resx = 1;
  if (viewport.height <= 0) resy = 1;
  resx = std::max(1, resx);
  resy = std::max(1, resy);

  BasinGrid grid;
  grid.viewport = viewport;
  grid.resx = resx;
  grid.resy = resy;
  grid.labels.assign(static_cast<size_t>(resx) * resy, kLabelUndecided);
  grid.iterations.assign(static_cast<size_t>(resx) * resy, 0);

  OrbitContext ctx(spec, budget, caps);
  parallel_for(resy, [&](int y) {
    for (int x = 0; x < resx; ++x) {
      OrbitRecord rec = iterate_orbit(ctx, grid.pixel_center(x, y), budget);
      size_t idx = static_cast<size_t>(y) * resx + x;
      grid.labels[idx] = fate_to_label(rec.fate);
      grid.iterations[idx] = rec.steps;
    }
  });
  return grid;
}

struct ConnectivityResult {
  int components = 0;
  bool touches_boundary = false;
};

namespace detail {

// flood fill of one 4-connected component; returns pixel count and whether
// the component touches the grid edge
inline std::pair<int, bool> flood(const BasinGrid& g, int32_t label,
                                  int sx, int sy, std::vector<uint8_t>* seen) {
  std::deque<std::pair<int, int>> todo{{sx, sy}};
  (*seen)[static_cast<size_t>(sy) * g.resx + sx] = 1;
  int count = 0;
  bool edge = false;
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    ++count;
    if (x == 0 || y == 0 || x == g.resx - 1 || y == g.resy - 1) edge = true;
    const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      int nx = x + dx[k], ny = y + dy[k];
      if (nx < 0 || ny < 0 || nx >= g.resx || ny >= g.resy) continue;
      size_t idx = static_cast<size_t>(ny) * g.resx + nx;
      if ((*seen)[idx] || g.labels[idx] != label) continue;
      (*seen)[idx] = 1;
      todo.emplace_back(nx, ny);
    }
  }
  return {count, edge};
}

}  // namespace detail

// 4-connected component census of one label.  touches_boundary refers to
// the component containing `anchor` when given (e.g. the fixed point of an
// immediate basin), otherwise to the largest component.  Heuristic witness
// for "simply connected and unbounded", never a proof.
inline ConnectivityResult connectivity_probe(const BasinGrid& grid,
                                             int32_t label,
                                             std::optional<cplx> anchor = {}) {
  ConnectivityResult res;
  std::vector<uint8_t> seen(grid.labels.size(), 0);
  int largest = -1;
  bool largest_edge = false;
  for (int y = 0; y < grid.resy; ++y) {
    for (int x = 0; x < grid.resx; ++x) {
      size_t idx = static_cast<size_t>(y) * grid.resx + x;
      if (seen[idx] || grid.labels[idx] != label) continue;
      auto [count, edge] = detail::flood(grid, label, x, y, &seen);
      ++res.components;
      if (count > largest) {
        largest = count;
        largest_edge = edge;
      }
    }
  }
  if (anchor) {
    auto [ax, ay] = grid.nearest_pixel(*anchor);
    if (grid.label_at(ax, ay) == label) {
      std::vector<uint8_t> seen2(grid.labels.size(), 0);
      auto [count, edge] = detail::flood(grid, label, ax, ay, &seen2);
      (void)count;
      res.touches_boundary = edge;
      return res;
    }
  }
  res.touches_boundary = largest_edge;
  return res;
}

struct AreaEstimate {
  std::vector<double> radius_schedule;
  std::vector<double> areas;
  bool saturated = false;
};

// Pixel-count area of the immediate basin (the connected component of
// root_index's basin containing the root) clipped to each radius.  Pixel
// size is held constant across radii so the areas are monotone in R.
inline AreaEstimate estimate_basin_area(const NewtonSpec& spec, int root_index,
                                        const std::vector<double>& radii,
                                        int resolution, int budget = -1,
                                        CaptureParams caps = {}) {
  AreaEstimate est;
  est.radius_schedule = radii;
  if (radii.empty()) return est;
  if (budget < 0) budget = default_budget(spec.n);

  std::vector<cplx> roots;
  for (const auto& rc : poly_roots(spec.p)) roots.push_back(rc.location);
  if (root_index < 0 || root_index >= static_cast<int>(roots.size()))
    throw Error("estimate_basin_area: root index out of range");
  cplx root = roots[static_cast<size_t>(root_index)];

  // one shared grid at the largest radius; each smaller radius is a disk
  // mask over the same pixels, so the areas are monotone by construction
  double rmax = *std::max_element(radii.begin(), radii.end());
  Viewport vp{cplx(root.real(), root.imag()), 2.0 * rmax, 2.0 * rmax};
  BasinGrid grid = basin_grid(spec, vp, resolution, resolution, budget, caps);
  double h = 2.0 * rmax / resolution;

  for (double R : radii) {
    BasinGrid clipped = grid;
    for (int y = 0; y < clipped.resy; ++y)
      for (int x = 0; x < clipped.resx; ++x) {
        size_t idx = static_cast<size_t>(y) * clipped.resx + x;
        if (std::abs(clipped.pixel_center(x, y) - root) > R)
          clipped.labels[idx] = kLabelUndecided;
      }
    auto [rx, ry] = clipped.nearest_pixel(root);
    double area = 0.0;
    if (clipped.label_at(rx, ry) == root_index) {
      std::vector<uint8_t> seen(clipped.labels.size(), 0);
      auto [count, edge] = detail::flood(clipped, root_index, rx, ry, &seen);
      (void)edge;
      area = count * h * h;
    }
    est.areas.push_back(area);
  }
  size_t n = est.areas.size();
  if (n >= 2 && est.areas[n - 1] > 0) {
    double rel = std::abs(est.areas[n - 1] - est.areas[n - 2]) /
                 est.areas[n - 1];
    est.saturated = rel < 0.01;
  }
  return est;
}

}  // namespace natlas
