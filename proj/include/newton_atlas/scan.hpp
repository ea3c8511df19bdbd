#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "newton_atlas/classify.hpp"

namespace natlas {

// A one-parameter slice: coefficients of p and q affine in c.
struct NewtonFamily {
  Polynomial p0, p1;  // p_c = p0 + c p1
  Polynomial q0, q1;  // q_c = q0 + c q1

  Polynomial p_at(cplx c) const { return p0 + c * p1; }
  Polynomial q_at(cplx c) const { return q0 + c * q1; }
};

struct ScanTolerances {
  double tau_root_match = 1e-5;  // critical coincides with a root of p
  double tau_near_root = 0.05;   // critical close enough to land on a root cell
  double tau_merge = 0.25;       // petal criticals belonging to one cluster
  double tau_orbit = 0.05;       // orbit of one critical passing another
  int relation_steps = 300;
};

struct ScanSample {
  cplx c{0};
  bool valid = false;
  std::vector<Fate> fates;  // one per free critical orbit
  std::vector<int> preperiods;
  bool pcm_flag = false;
};

struct ScanResult {
  Viewport region;
  int resx = 0, resy = 0;
  std::vector<ScanSample> samples;  // row-major, rows top to bottom

  const ScanSample& at(int x, int y) const {
    return samples[static_cast<size_t>(y) * resx + x];
  }
};

namespace detail {

inline ScanSample scan_sample(const NewtonFamily& fam, cplx c, int budget,
                              const CaptureParams& caps,
                              const ScanTolerances& tols) {
  ScanSample s;
  s.c = c;
  NewtonSpec spec;
  try {
    spec = build_newton(fam.p_at(c), fam.q_at(c));
  } catch (const Error&) {
    return s;
  }
  s.valid = true;
  if (budget < 0) budget = default_budget(spec.n);

  std::vector<cplx> roots;
  std::vector<cplx> free_crit;
  std::vector<int> free_deg;
  try {
    for (const auto& rc : poly_roots(spec.p)) roots.push_back(rc.location);
    for (const auto& cp : critical_points_clustered(spec)) {
      bool at_root = false;
      for (cplx r : roots)
        if (std::abs(cp.location - r) <=
            tols.tau_root_match * std::max(1.0, std::abs(r)))
          at_root = true;
      if (!at_root) {
        free_crit.push_back(cp.location);
        free_deg.push_back(cp.local_degree);
      }
    }
  } catch (const Error&) {
    s.valid = false;
    return s;
  }

  OrbitContext ctx(spec, budget, caps);
  std::vector<double> near_root_dist;
  for (cplx z : free_crit) {
    OrbitRecord rec = iterate_orbit(ctx, z, budget);
    s.fates.push_back(rec.fate);
    s.preperiods.push_back(rec.steps);
    double nd = 1e300;
    for (cplx r : roots) nd = std::min(nd, std::abs(z - r));
    near_root_dist.push_back(nd);
  }

  // candidate test: every free critical either sits essentially on a root
  // (superattracting center) or escapes through a petal, and the petal
  // criticals form exactly one cluster per occupied petal
  if (free_crit.empty()) return s;
  bool ok = true;
  std::vector<size_t> petal_ids;
  for (size_t i = 0; i < free_crit.size(); ++i) {
    if (near_root_dist[i] <= tols.tau_near_root) continue;
    if (s.fates[i].kind == FateKind::Petal) {
      petal_ids.push_back(i);
      continue;
    }
    ok = false;
  }
  if (ok && !petal_ids.empty()) {
    // union petal criticals related by proximity or by orbit passage
    std::vector<size_t> parent(petal_ids.size());
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (size_t i = 0; i < petal_ids.size(); ++i) {
      for (size_t j = i + 1; j < petal_ids.size(); ++j) {
        cplx a = free_crit[petal_ids[i]], b = free_crit[petal_ids[j]];
        bool related = std::abs(a - b) <= tols.tau_merge;
        if (!related) {
          cplx z = a;
          for (int m = 0; m < tols.relation_steps && !related; ++m) {
            SpherePoint nx = spec.map.eval(z);
            if (nx.inf || !is_finite_number(nx.v)) break;
            z = nx.v;
            related = std::abs(z - b) <= tols.tau_orbit;
          }
        }
        if (related) parent[find(i)] = find(j);
      }
    }
    // occupied petals and their cluster counts
    for (int pj = 0; pj < spec.n && ok; ++pj) {
      std::vector<size_t> reps;
      for (size_t i = 0; i < petal_ids.size(); ++i) {
        if (s.fates[petal_ids[i]].index != pj) continue;
        size_t r = find(i);
        if (std::find(reps.begin(), reps.end(), r) == reps.end())
          reps.push_back(r);
      }
      if (reps.size() > 1) ok = false;
    }
  }
  s.pcm_flag = ok;
  return s;
}

}  // namespace detail

// Classify the free critical orbits over a parameter rectangle; one sample
// per pixel center, deterministic for any worker count.
inline ScanResult param_scan(const NewtonFamily& fam, Viewport region,
                             int resx, int resy, int budget = -1,
                             const CaptureParams& caps = {},
                             const ScanTolerances& tols = {}) {
  resx = std::max(1, resx);
  resy = std::max(1, resy);
  ScanResult res;
  res.region = region;
  res.resx = resx;
  res.resy = resy;
  res.samples.assign(static_cast<size_t>(resx) * resy, {});

  BasinGrid geom;  // reuse the pixel-center convention
  geom.viewport = region;
  geom.resx = resx;
  geom.resy = resy;

  parallel_for(resy, [&](int y) {
    for (int x = 0; x < resx; ++x) {
      res.samples[static_cast<size_t>(y) * resx + x] =
          detail::scan_sample(fam, geom.pixel_center(x, y), budget, caps,
                              tols);
    }
  });
  return res;
}

inline std::string fate_string(const Fate& f) {
  switch (f.kind) {
    case FateKind::Root: return "root:" + std::to_string(f.index);
    case FateKind::Petal: return "petal:" + std::to_string(f.index);
    case FateKind::Undecided: return "undecided";
  }
  return "undecided";
}

// CSV atlas: c_re, c_im, fate_i/preperiod_i per orbit slot, pcm_flag.
inline std::string scan_to_csv(const ScanResult& res) {
  size_t slots = 0;
  for (const auto& s : res.samples) slots = std::max(slots, s.fates.size());
  std::ostringstream out;
  out << "c_re,c_im";
  for (size_t i = 0; i < slots; ++i)
    out << ",fate_" << i << ",preperiod_" << i;
  out << ",pcm_flag\n";
  out.precision(17);
  for (const auto& s : res.samples) {
    out << s.c.real() << "," << s.c.imag();
    for (size_t i = 0; i < slots; ++i) {
      if (i < s.fates.size())
        out << "," << fate_string(s.fates[i]) << "," << s.preperiods[i];
      else
        out << ",,";
    }
    out << "," << (s.pcm_flag ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace natlas
