#pragma once

#include <array>
#include <fstream>
#include <string>
#include <vector>

#include "newton_atlas/basin.hpp"
#include "newton_atlas/rays.hpp"

namespace natlas {

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
};

// fixed 12-color root palette; roots beyond 12 cycle
inline constexpr std::array<Rgb, 12> kRootPalette = {{
    {230, 57, 70},   {46, 134, 171},  {82, 183, 136},  {244, 162, 97},
    {106, 76, 147},  {233, 196, 106}, {38, 70, 83},    {231, 111, 81},
    {42, 157, 143},  {188, 108, 37},  {96, 108, 56},   {131, 56, 236},
}};

inline Rgb root_color(int index) {
  return kRootPalette[static_cast<size_t>(index) % kRootPalette.size()];
}

// petals ramp through yellows
inline Rgb petal_color(int petal, int petal_count) {
  double t = petal_count > 1
                 ? static_cast<double>(petal) / (petal_count - 1)
                 : 0.0;
  return {255, static_cast<uint8_t>(200 + 55 * (1.0 - t)),
          static_cast<uint8_t>(40 + 80 * t)};
}

inline Rgb label_color(int32_t label, int petal_count) {
  if (label == kLabelUndecided) return {0, 0, 0};
  if (label >= kPetalBase) return petal_color(label - kPetalBase, petal_count);
  return root_color(label);
}

struct Image {
  int width = 0, height = 0;
  std::vector<Rgb> pixels;  // row-major

  Image() = default;
  Image(int w, int h) : width(w), height(h) {
    pixels.assign(static_cast<size_t>(w) * h, Rgb{});
  }
  void set(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= width || y >= height) return;
    pixels[static_cast<size_t>(y) * width + x] = c;
  }
};

// deterministic shading: darken slightly with the iteration count
inline Rgb shade(Rgb c, int iterations, int budget) {
  double f = 1.0;
  if (budget > 0) {
    double t = std::min(1.0, static_cast<double>(iterations) / budget);
    f = 1.0 - 0.45 * std::sqrt(t);
  }
  return {static_cast<uint8_t>(c.r * f), static_cast<uint8_t>(c.g * f),
          static_cast<uint8_t>(c.b * f)};
}

inline Image render_grid(const BasinGrid& grid, int petal_count,
                         int budget = 0) {
  Image img(grid.resx, grid.resy);
  for (int y = 0; y < grid.resy; ++y)
    for (int x = 0; x < grid.resx; ++x) {
      size_t idx = static_cast<size_t>(y) * grid.resx + x;
      img.pixels[idx] = shade(label_color(grid.labels[idx], petal_count),
                              grid.iterations[idx], budget);
    }
  return img;
}

inline void draw_polyline(Image* img, const BasinGrid& grid,
                          const std::vector<cplx>& points, Rgb color) {
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    cplx a = points[i], b = points[i + 1];
    double len = std::abs(b - a);
    double step = std::min(grid.viewport.width / std::max(1, grid.resx),
                           grid.viewport.height / std::max(1, grid.resy));
    int steps = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int s = 0; s <= steps; ++s) {
      cplx z = a + (b - a) * (static_cast<double>(s) / steps);
      auto [x, y] = grid.nearest_pixel(z);
      if (std::abs(z.real() - grid.viewport.center.real()) <=
              grid.viewport.width / 2 &&
          std::abs(z.imag() - grid.viewport.center.imag()) <=
              grid.viewport.height / 2)
        img->set(x, y, color);
    }
  }
}

inline void draw_cross(Image* img, const BasinGrid& grid, cplx z, Rgb color,
                       int arm = 3) {
  if (std::abs(z.real() - grid.viewport.center.real()) >
          grid.viewport.width / 2 ||
      std::abs(z.imag() - grid.viewport.center.imag()) >
          grid.viewport.height / 2)
    return;
  auto [x, y] = grid.nearest_pixel(z);
  for (int t = -arm; t <= arm; ++t) {
    img->set(x + t, y, color);
    img->set(x, y + t, color);
  }
}

struct OverlayFlags {
  bool rays = false;
  bool critical = false;
  bool fixed = false;
};

inline void draw_overlays(Image* img, const BasinGrid& grid,
                          const NewtonSpec& spec, const OverlayFlags& flags,
                          const ChannelDiagram* diagram = nullptr) {
  const Rgb white{255, 255, 255}, gray{180, 180, 180}, black{20, 20, 20};
  if (flags.rays && diagram) {
    for (const auto& basin : diagram->basins)
      for (const auto& ray : basin.rays)
        if (ray.failure.empty()) draw_polyline(img, grid, ray.points, white);
  }
  if (flags.critical) {
    for (const auto& cp : critical_points(spec))
      draw_cross(img, grid, cp.location, gray);
  }
  if (flags.fixed) {
    for (const auto& rc : poly_roots(spec.p))
      draw_cross(img, grid, rc.location, black);
  }
}

inline std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n255\n";
  out.reserve(out.size() + img.pixels.size() * 3);
  for (const Rgb& c : img.pixels) {
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return out;
}

inline void write_ppm(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  std::string data = encode_ppm(img);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("write failed: " + path);
}

}  // namespace natlas
