#pragma once

#include <string>
#include <vector>

#include "newton_atlas/rays.hpp"

namespace natlas {

struct AuditRow {
  int basin = -1;          // index into the channel diagram
  int petal = -1;          // matched petal of the parabolic map
  double ray_angle = 0;    // asymptotic angle of the marked ray
  double petal_angle = 0;  // attracting direction of the petal
  int basin_degree = 0;    // local degree at the basin's fixed point
  int petal_degree = 0;    // local degree at the petal's center
  bool match = false;      // access counts k-1 agree
};

struct AuditReport {
  bool pass = false;
  bool petal_count_ok = false;     // (i)  n petals, all with located centers
  bool degrees_ok = false;         // (ii) aligned local degrees agree
  bool unmarked_count_ok = false;  // (iii) unmarked basins vs roots of p
  int rotation = 0;                // chosen cyclic offset of the alignment
  std::vector<AuditRow> rows;
  std::vector<std::string> details;
};

// Count-level check that the marked channel diagram of a polynomial Newton
// map matches the petal structure of a parabolic one: marked basins pair
// with petals (cyclically, by angle at infinity) with equal local degrees,
// and unmarked basins pair with the finite superattracting fixed points.
inline AuditReport correspondence_audit(const NewtonSpec& pcf,
                                        const ChannelDiagram& diagram,
                                        const Marking& marking,
                                        const NewtonSpec& pcm,
                                        const ClassifyBudgets& budgets = {},
                                        const ClassifyTolerances& tols = {}) {
  if (pcf.n != 0)
    throw Error("correspondence_audit: first map must have n = 0");
  if (pcm.n < 1)
    throw NotParabolic("correspondence_audit: second map must have n >= 1");
  if (marking.marked.size() != diagram.basins.size())
    throw Error("correspondence_audit: marking does not fit the diagram");

  AuditReport rep;
  int n = pcm.n;

  if (marking.count() != n) {
    rep.details.push_back("marking has " + std::to_string(marking.count()) +
                          " rays, parabolic map has " + std::to_string(n) +
                          " petals");
    return rep;
  }

  ParabolicCensus cen = parabolic_census(pcm, budgets, tols);
  std::vector<double> petal_dirs =
      petal_directions_general(n, qprime_lead(pcm));

  rep.petal_count_ok = true;
  for (const auto& row : cen.per_petal) {
    if (row.critical_count != 1) {
      rep.petal_count_ok = false;
      rep.details.push_back("petal " + std::to_string(row.petal) +
                            ": center not uniquely located (count " +
                            std::to_string(row.critical_count) + ")");
    }
  }

  struct Mark {
    int basin;
    double angle;
    int degree;
  };
  std::vector<Mark> marks;
  for (size_t b = 0; b < marking.marked.size(); ++b) {
    if (!marking.marked[b]) continue;
    const Ray& ray = diagram.basins[b].rays[static_cast<size_t>(
        *marking.marked[b])];
    if (!ray.failure.empty() || ray.points.size() < 2) {
      rep.details.push_back("marked ray in basin " + std::to_string(b) +
                            " was not traced; no asymptotic angle");
      return rep;
    }
    marks.push_back({static_cast<int>(b), ray.asymptotic_angle(),
                     diagram.basins[b].local_degree});
  }

  struct Petal {
    int index;
    double angle;
    int degree;
  };
  std::vector<Petal> petals;
  for (int j = 0; j < n; ++j)
    petals.push_back({j, wrap_angle(petal_dirs[static_cast<size_t>(j)]),
                      cen.per_petal[static_cast<size_t>(j)].local_degree});

  auto by_angle = [](const auto& a, const auto& b) { return a.angle < b.angle; };
  std::sort(marks.begin(), marks.end(), by_angle);
  std::sort(petals.begin(), petals.end(), by_angle);

  // canonical cyclic alignment: the rotation minimizing total angular
  // mismatch; a tie means the pairing is not determined by the angles
  double best = 1e300, second = 1e300;
  int best_r = 0;
  for (int r = 0; r < n; ++r) {
    double total = 0;
    for (int i = 0; i < n; ++i)
      total += angle_dist(marks[static_cast<size_t>(i)].angle,
                          petals[static_cast<size_t>((i + r) % n)].angle);
    if (total < best) {
      second = best;
      best = total;
      best_r = r;
    } else if (total < second) {
      second = total;
    }
  }
  if (n > 1 && second - best <= 1e-6)
    throw AlignmentFailure(
        "correspondence_audit: two cyclic alignments fit equally well");
  rep.rotation = best_r;

  rep.degrees_ok = true;
  for (int i = 0; i < n; ++i) {
    const Mark& mk = marks[static_cast<size_t>(i)];
    const Petal& pt = petals[static_cast<size_t>((i + best_r) % n)];
    AuditRow row;
    row.basin = mk.basin;
    row.petal = pt.index;
    row.ray_angle = mk.angle;
    row.petal_angle = pt.angle;
    row.basin_degree = mk.degree;
    row.petal_degree = pt.degree;
    row.match = (mk.degree == pt.degree) && pt.degree >= 2;
    if (!row.match) {
      rep.degrees_ok = false;
      rep.details.push_back(
          "basin " + std::to_string(mk.basin) + " (degree " +
          std::to_string(mk.degree) + ") vs petal " +
          std::to_string(pt.index) + " (degree " +
          std::to_string(pt.degree) + "): access counts differ");
    }
    rep.rows.push_back(row);
  }

  int unmarked = static_cast<int>(diagram.basins.size()) - marking.count();
  int pcm_roots = static_cast<int>(poly_roots(pcm.p).size());
  rep.unmarked_count_ok = (unmarked == pcm_roots);
  if (!rep.unmarked_count_ok)
    rep.details.push_back("unmarked basin count " + std::to_string(unmarked) +
                          " != finite superattracting fixed points " +
                          std::to_string(pcm_roots));

  rep.pass = rep.petal_count_ok && rep.degrees_ok && rep.unmarked_count_ok;
  return rep;
}

}  // namespace natlas
