#pragma once

#include <optional>
#include <string>
#include <vector>

#include "newton_atlas/basin.hpp"

namespace natlas {

// Double critical points split by ~5e-6 under coefficient roundoff, so
// critical clustering runs wider than the root-cluster default.
inline constexpr double kCritClusterFactor = 1e-5;

inline std::vector<CriticalPoint> critical_points_clustered(
    const NewtonSpec& spec) {
  Polynomial w = spec.map.num().derivative() * spec.map.den() -
                 spec.map.num() * spec.map.den().derivative();
  std::vector<CriticalPoint> out;
  if (w.degree() < 1) return out;
  std::vector<cplx> raw = poly_roots_raw(w);
  double scale = 1.0;
  for (cplx r : raw) scale = std::max(scale, std::abs(r));
  for (const auto& rc :
       cluster_roots(std::move(raw), kCritClusterFactor * scale))
    out.push_back({rc.location, rc.multiplicity + 1});
  return out;
}

struct ClassifyBudgets {
  int orbit_budget = -1;        // -1: default_budget(n)
  int relation_budget = 1000;   // steps searched for critical orbit relations
  CaptureParams caps;
};

struct ClassifyTolerances {
  double tau_root_match = 1e-5;  // critical sits on a root of p
  double tau_relation = 1e-6;    // N^m(c) lands on another critical
  double tau_landing = 1e-9;     // "exact" landing threshold
  double tau_jump = 1e-3;        // previous-step distance for a genuine jump
};

struct CriticalEvidence {
  CriticalPoint critical;
  Fate fate;
  int steps = 0;
  bool at_root = false;              // coincides with a root of p
  bool immediate = false;            // presumed immediate-basin center
  int preperiod = -1;                // steps to the relation target, if any
  std::optional<cplx> landing_target;
  double landing_distance = -1.0;
};

struct ImmediateBasinCensus {
  int petal = 0;
  int critical_count = 0;  // distinct presumed-immediate criticals
  int local_degree = 0;    // of the center when critical_count == 1
};

enum class PcmVerdict { Consistent, Violation, Inconclusive };

inline const char* to_string(PcmVerdict v) {
  switch (v) {
    case PcmVerdict::Consistent: return "consistent";
    case PcmVerdict::Violation: return "violation";
    case PcmVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct PcmReport {
  PcmVerdict verdict = PcmVerdict::Inconclusive;
  std::vector<std::string> details;
  std::vector<CriticalEvidence> evidence;
  std::vector<ImmediateBasinCensus> immediate_census;
  // Finiteness of Julia-set critical orbits is undecidable numerically;
  // every verdict here is budget-bounded evidence, not a proof.
  std::string caveat =
      "orbit finiteness reported as bounded-budget evidence only; accesses counted "
      "via fixed internal rays (k-1 per basin), homotopy not computed";
};

namespace detail {

// smallest m in [1, budget] with N^m(c) within tol of target
inline std::optional<std::pair<int, double>> orbit_lands_on(
    const NewtonSpec& spec, cplx start, cplx target, double tol, int budget) {
  cplx z = start;
  for (int m = 1; m <= budget; ++m) {
    SpherePoint nx = spec.map.eval(z);
    if (nx.inf || !is_finite_number(nx.v)) return std::nullopt;
    z = nx.v;
    double d = std::abs(z - target);
    if (d <= tol) return std::make_pair(m, d);
  }
  return std::nullopt;
}

}  // namespace detail

// Shared fate/relation analysis of the free critical points of a parabolic
// (n >= 1) Newton map.
struct ParabolicCensus {
  std::vector<CriticalEvidence> evidence;  // free criticals only
  std::vector<ImmediateBasinCensus> per_petal;
  std::vector<cplx> roots;
  bool any_undecided = false;
};

inline ParabolicCensus parabolic_census(const NewtonSpec& spec,
                                        const ClassifyBudgets& budgets = {},
                                        const ClassifyTolerances& tols = {}) {
  if (spec.n < 1) throw NotParabolic("parabolic_census: needs n >= 1");
  ParabolicCensus cen;
  for (const auto& rc : poly_roots(spec.p)) cen.roots.push_back(rc.location);
  auto crit = critical_points_clustered(spec);

  int budget = budgets.orbit_budget >= 0 ? budgets.orbit_budget
                                         : default_budget(spec.n);
  OrbitContext ctx(spec, budget, budgets.caps);
  double scale = 1.0;
  for (const auto& c : crit) scale = std::max(scale, std::abs(c.location));

  for (const auto& c : crit) {
    bool at_root = false;
    for (cplx r : cen.roots)
      if (std::abs(c.location - r) <= tols.tau_root_match * std::max(1.0, std::abs(r)))
        at_root = true;
    if (at_root) continue;  // superattracting fixed critical: orbit trivially finite
    CriticalEvidence ev;
    ev.critical = c;
    ev.at_root = false;
    OrbitRecord rec = iterate_orbit(ctx, c.location, budget);
    ev.fate = rec.fate;
    ev.steps = rec.steps;
    if (rec.fate.kind == FateKind::Undecided) cen.any_undecided = true;
    cen.evidence.push_back(ev);
  }

  // minimal critical orbit relations among petal-fated criticals
  for (auto& ev : cen.evidence) {
    if (ev.fate.kind != FateKind::Petal) continue;
    for (const auto& other : cen.evidence) {
      if (&other == &ev) continue;
      if (other.fate.kind != FateKind::Petal) continue;
      auto hit = detail::orbit_lands_on(spec, ev.critical.location,
                                        other.critical.location,
                                        tols.tau_relation * scale,
                                        budgets.relation_budget);
      if (hit) {
        ev.preperiod = hit->first;
        ev.landing_target = other.critical.location;
        ev.landing_distance = hit->second;
        break;
      }
    }
    ev.immediate = (ev.preperiod < 0);
  }

  for (int j = 0; j < spec.n; ++j) {
    ImmediateBasinCensus row;
    row.petal = j;
    for (const auto& ev : cen.evidence) {
      if (ev.fate == Fate::petal(j) && ev.immediate) {
        row.critical_count += 1;
        row.local_degree = ev.critical.local_degree;
      }
    }
    cen.per_petal.push_back(row);
  }
  return cen;
}

// PCM audit of a parabolic Newton map: at most one critical point per
// immediate basin is checked concretely; finiteness of the critical orbits
// only as bounded-budget evidence.
inline PcmReport check_pcm(const NewtonSpec& spec,
                           const ClassifyBudgets& budgets = {},
                           const ClassifyTolerances& tols = {}) {
  if (spec.n < 1) throw NotParabolic("check_pcm: needs n >= 1");
  PcmReport rep;
  ParabolicCensus cen = parabolic_census(spec, budgets, tols);
  rep.evidence = cen.evidence;
  rep.immediate_census = cen.per_petal;

  bool violation = false, inconclusive = false;

  for (const auto& row : cen.per_petal) {
    if (row.critical_count > 1) {
      violation = true;
      rep.details.push_back("petal " + std::to_string(row.petal) +
                            ": immediate basin holds " +
                            std::to_string(row.critical_count) +
                            " unrelated critical points, expected one");
    } else if (row.critical_count == 0) {
      inconclusive = true;
      rep.details.push_back("petal " + std::to_string(row.petal) +
                            ": no immediate-basin critical point detected "
                            "within budget");
    }
  }

  for (const auto& ev : cen.evidence) {
    if (ev.fate.kind == FateKind::Root) {
      // A free critical converging into a superattracting basin has an
      // infinite orbit unless it lands exactly (minimality needs a finite
      // postcritical set outside the parabolic basins).
      auto hit = detail::orbit_lands_on(
          spec, ev.critical.location,
          cen.roots[static_cast<size_t>(ev.fate.index)], tols.tau_landing,
          budgets.relation_budget);
      bool exact = false;
      if (hit) {
        // genuine landing arrives by a jump, not by quadratic creep
        cplx z = ev.critical.location;
        double prev = std::abs(z - cen.roots[static_cast<size_t>(ev.fate.index)]);
        for (int m = 1; m < hit->first; ++m) {
          z = spec.map.eval(z).v;
          prev = std::abs(z - cen.roots[static_cast<size_t>(ev.fate.index)]);
        }
        exact = (hit->first == 1 ? std::abs(ev.critical.location -
                                            cen.roots[static_cast<size_t>(
                                                ev.fate.index)])
                                 : prev) > tols.tau_jump;
      }
      if (!exact) {
        violation = true;
        rep.details.push_back(
            "free critical orbit converges to a superattracting fixed point "
            "without landing (postcritical set is infinite)");
      }
    } else if (ev.fate.kind == FateKind::Undecided) {
      inconclusive = true;
      rep.details.push_back(
          "free critical orbit undecided within budget (Julia-set orbits "
          "reported as finite-within-budget evidence only)");
    }
  }

  rep.verdict = violation ? PcmVerdict::Violation
                          : (inconclusive ? PcmVerdict::Inconclusive
                                          : PcmVerdict::Consistent);
  return rep;
}

// Accesses of a parabolic immediate basin: k - 1 where k is the local
// degree of its center.
inline int access_count_parabolic(const NewtonSpec& spec, int petal_index,
                                  const ClassifyBudgets& budgets = {},
                                  const ClassifyTolerances& tols = {}) {
  ParabolicCensus cen = parabolic_census(spec, budgets, tols);
  if (petal_index < 0 || petal_index >= spec.n)
    throw Error("access_count_parabolic: petal index out of range");
  const auto& row = cen.per_petal[static_cast<size_t>(petal_index)];
  if (row.critical_count != 1)
    throw NoCenter("access_count_parabolic: immediate basin center not located");
  return row.local_degree - 1;
}

// PCF audit for a polynomial Newton map (n = 0): every critical orbit must
// terminate exactly on a (super)attracting cycle, a repelling fixed point,
// or at infinity, within budget.
inline PcmReport check_pcf(const NewtonSpec& spec,
                           const ClassifyBudgets& budgets = {},
                           const ClassifyTolerances& tols = {}) {
  if (spec.n != 0) throw Error("check_pcf: needs n = 0");
  PcmReport rep;
  bool violation = false, inconclusive = false;

  int budget = budgets.orbit_budget >= 0 ? budgets.orbit_budget
                                         : default_budget(0);
  double scale = 1.0;
  auto crit = critical_points_clustered(spec);
  for (const auto& c : crit) scale = std::max(scale, std::abs(c.location));

  for (const auto& c : crit) {
    CriticalEvidence ev;
    ev.critical = c;
    // walk the orbit and look for exact eventual periodicity
    std::vector<cplx> orbit{c.location};
    bool decided = false, hit_inf = false;
    cplx z = c.location;
    int cap = std::min(budget, 20000);
    for (int m = 1; m <= cap && !decided; ++m) {
      SpherePoint nx = spec.map.eval(z);
      if (nx.inf) { hit_inf = true; break; }  // prepole: lands on repelling infinity
      z = nx.v;
      for (int j = static_cast<int>(orbit.size()) - 1; j >= 0; --j) {
        if (std::abs(z - orbit[static_cast<size_t>(j)]) <=
            tols.tau_landing * scale) {
          ev.preperiod = j;
          ev.landing_target = orbit[static_cast<size_t>(j)];
          ev.landing_distance = std::abs(z - orbit[static_cast<size_t>(j)]);
          decided = true;
          break;
        }
      }
      orbit.push_back(z);
    }
    if (hit_inf) {
      ev.fate = Fate::undecided();
      rep.details.push_back("critical orbit lands on the repelling fixed "
                            "point at infinity (prepole)");
    } else if (decided) {
      // Distinguish exact landing from asymptotic creep: a genuine landing
      // reaches the target in one jump from a point still far away, while
      // superattracting convergence shrinks the gap gradually.
      bool exact;
      int period = static_cast<int>(orbit.size()) - ev.preperiod;
      if (period == 1) {
        // merged with the immediate predecessor: near a fixed point;
        // find the first entry below the landing threshold
        cplx target = *ev.landing_target;
        int first = 0;
        while (first < static_cast<int>(orbit.size()) &&
               std::abs(orbit[static_cast<size_t>(first)] - target) >
                   tols.tau_landing * scale)
          ++first;
        exact = (first == 0) ||
                std::abs(orbit[static_cast<size_t>(first - 1)] - target) >
                    tols.tau_jump * scale;
      } else {
        double prev_gap = std::abs(orbit.back() - *ev.landing_target);
        exact = (ev.preperiod == 0) || prev_gap > tols.tau_jump * scale;
      }
      if (!exact) {
        violation = true;
        rep.details.push_back(
            "critical orbit converges to a cycle without landing exactly");
      }
    } else {
      inconclusive = true;
      rep.details.push_back("critical orbit not resolved within budget");
    }
    rep.evidence.push_back(ev);
  }

  rep.verdict = violation ? PcmVerdict::Violation
                          : (inconclusive ? PcmVerdict::Inconclusive
                                          : PcmVerdict::Consistent);
  return rep;
}

// Center of the Fatou component a decided seed belongs to: the attracting
// periodic critical point for superattracting fates, the unique immediate
// critical point of the matching petal for parabolic fates.
inline cplx find_center(const NewtonSpec& spec, cplx seed, int budget = -1,
                        const ClassifyBudgets& budgets = {},
                        const ClassifyTolerances& tols = {}) {
  if (budget < 0) budget = default_budget(spec.n);
  OrbitContext ctx(spec, budget, budgets.caps);
  OrbitRecord rec = iterate_orbit(ctx, seed, budget);
  if (rec.fate.kind == FateKind::Root)
    return ctx.roots[static_cast<size_t>(rec.fate.index)];
  if (rec.fate.kind == FateKind::Petal) {
    ParabolicCensus cen = parabolic_census(spec, budgets, tols);
    for (const auto& ev : cen.evidence)
      if (ev.immediate && ev.fate == rec.fate) return ev.critical.location;
    throw NoCenter("find_center: no immediate critical point for the petal");
  }
  throw NoCenter("find_center: seed fate undecided within budget");
}

}  // namespace natlas
