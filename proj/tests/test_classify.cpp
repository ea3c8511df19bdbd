#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "newton_atlas/audit.hpp"
#include "newton_atlas/normal_form.hpp"

using namespace natlas;

namespace {

NewtonSpec family_spec(cplx c) {
  return build_newton(Polynomial({c, cplx(0), cplx(1)}),
                      Polynomial({cplx(0), cplx(1)}));
}

NewtonSpec cubic_spec() {
  return build_newton(Polynomial({cplx(0), cplx(-1), cplx(0), cplx(1)}),
                      Polynomial{});
}

}  // namespace

TEST_CASE("pcm verdicts in the quadratic family") {
  // c = -1/4: one free critical of local degree 2, captured by the petal
  PcmReport r14 = check_pcm(family_spec(cplx(-0.25)));
  CHECK(r14.verdict == PcmVerdict::Consistent);
  REQUIRE(r14.immediate_census.size() == 1);
  CHECK(r14.immediate_census[0].critical_count == 1);
  CHECK(r14.immediate_census[0].local_degree == 2);
  REQUIRE(r14.evidence.size() == 1);
  CHECK(std::abs(r14.evidence[0].critical.location - cplx(-3.5)) < 1e-6);

  // c = 2: the two free criticals collapse to one of local degree 3
  PcmReport r2 = check_pcm(family_spec(cplx(2)));
  CHECK(r2.verdict == PcmVerdict::Consistent);
  REQUIRE(r2.immediate_census.size() == 1);
  CHECK(r2.immediate_census[0].critical_count == 1);
  CHECK(r2.immediate_census[0].local_degree == 3);

  // c = 1+i: two unrelated free criticals share the single petal
  PcmReport rb = check_pcm(family_spec(cplx(1, 1)));
  CHECK(rb.verdict == PcmVerdict::Violation);

  CHECK_THROWS_AS(check_pcm(cubic_spec()), NotParabolic);
}

TEST_CASE("access counts of parabolic immediate basins") {
  CHECK(access_count_parabolic(family_spec(cplx(-0.25)), 0) == 1);
  CHECK(access_count_parabolic(family_spec(cplx(2)), 0) == 2);
  CHECK_THROWS_AS(access_count_parabolic(family_spec(cplx(-0.25)), 1), Error);
}

TEST_CASE("pcf audit of polynomial Newton maps") {
  // z^3 - z: every critical point is a superattracting fixed point
  PcmReport cub = check_pcf(cubic_spec());
  CHECK(cub.verdict == PcmVerdict::Consistent);

  // z^3 - 1: the extra critical at 0 is a prepole, landing on infinity
  PcmReport unity = check_pcf(build_newton(
      Polynomial({cplx(-1), cplx(0), cplx(0), cplx(1)}), Polynomial{}));
  CHECK(unity.verdict == PcmVerdict::Consistent);

  // generic cubic: the free critical converges without landing
  PcmReport gen = check_pcf(build_newton(
      Polynomial({cplx(0.3), cplx(-1), cplx(0), cplx(1)}), Polynomial{}));
  CHECK(gen.verdict == PcmVerdict::Violation);

  CHECK_THROWS_AS(check_pcf(family_spec(cplx(-0.25))), Error);
}

TEST_CASE("component centers") {
  NewtonSpec spec = family_spec(cplx(-0.25));
  cplx root_center = find_center(spec, cplx(0.4, 0.0));
  CHECK(std::abs(std::abs(root_center) - 0.5) < 1e-8);

  cplx petal_center = find_center(spec, cplx(-4.0, 0.2));
  CHECK(std::abs(petal_center - cplx(-3.5)) < 1e-6);

  CHECK_THROWS_AS(find_center(spec, cplx(0.1, 1.7), 3), NoCenter);
}

TEST_CASE("normalization") {
  // 2z^2 + 2 with q = 0: roots +-i, anchor i, result z^2 - 1
  NormalForm nf = normalize(Polynomial({cplx(2), cplx(0), cplx(2)}),
                            Polynomial{});
  REQUIRE(nf.p.degree() == 2);
  CHECK(std::abs(nf.p.coeff(2) - cplx(1)) < 1e-12);
  CHECK(std::abs(nf.p.coeff(1)) < 1e-12);
  CHECK(std::abs(nf.p.coeff(0) - cplx(-1)) < 1e-12);
  CHECK(std::abs(nf.witness.scale - cplx(0, 1)) < 1e-12);

  // q = 3z rescales by a = 1/3 and drops the constant slot
  NormalForm nf2 = normalize(Polynomial({cplx(-0.25), cplx(0), cplx(1)}),
                             Polynomial({cplx(7), cplx(3)}));
  CHECK(std::abs(nf2.witness.scale - cplx(1.0 / 3.0)) < 1e-12);
  REQUIRE(nf2.q.degree() == 1);
  CHECK(std::abs(nf2.q.coeff(1) - cplx(1)) < 1e-12);
  CHECK(std::abs(nf2.q.coeff(0)) == 0.0);

  CHECK_THROWS_AS(normalize(Polynomial::constant(2), Polynomial{}), Error);
}

TEST_CASE("normalize is idempotent") {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    int m = 2 + trial % 3;
    int n = trial % 3;
    std::vector<cplx> pc(static_cast<size_t>(m) + 1);
    for (auto& x : pc) x = cplx(u(rng), u(rng));
    if (std::abs(pc.back()) < 0.2) pc.back() += cplx(1.0);
    Polynomial q;
    if (n >= 1) {
      std::vector<cplx> qc(static_cast<size_t>(n) + 1);
      for (auto& x : qc) x = cplx(u(rng), u(rng));
      if (std::abs(qc.back()) < 0.2) qc.back() += cplx(1.0);
      q = Polynomial(std::move(qc));
    }
    NormalForm once = normalize(Polynomial(pc), q);
    NormalForm twice = normalize(once.p, once.q);
    CHECK(std::abs(twice.witness.scale - cplx(1)) < 1e-6);
    CHECK(std::abs(twice.witness.offset) < 1e-6);
    REQUIRE(twice.p.degree() == once.p.degree());
    for (int k = 0; k <= once.p.degree(); ++k)
      CHECK(std::abs(twice.p.coeff(k) - once.p.coeff(k)) < 1e-8);
  }
}

TEST_CASE("affine conjugacy decisions") {
  auto spec_of = [](const NormalForm& nf) {
    return build_newton(nf.p, nf.q);
  };

  // a rescaled copy normalizes into the same class
  Polynomial p({cplx(0), cplx(-1), cplx(0), cplx(1)});
  Polynomial ps = p.compose_affine(cplx(0.4, 0.3), cplx(1.2, -0.7));
  NewtonSpec f = spec_of(normalize(p, Polynomial{}));
  NewtonSpec g = spec_of(normalize(ps, Polynomial{}));
  ConjugacyResult same = affine_conjugacy_test(f, g);
  CHECK(same.conjugate);
  CHECK(same.residual < kTauConj);
  // the witness certifies: f(az)/a == g
  cplx a = 1.0 / same.witness.scale;
  for (int s = 0; s < 10; ++s) {
    cplx z(0.3 * s - 1.2, 0.17 * s);
    SpherePoint lhs = f.map.eval(a * z);
    SpherePoint rhs = g.map.eval(z);
    if (lhs.inf || rhs.inf) continue;
    CHECK(std::abs(lhs.v / a - rhs.v) < 1e-8);
  }

  // distinct parabolic maps are refuted with a fat residual
  NewtonSpec c14 = spec_of(normalize(Polynomial({cplx(-0.25), cplx(0), cplx(1)}),
                                     Polynomial({cplx(0), cplx(1)})));
  NewtonSpec c2 = spec_of(normalize(Polynomial({cplx(2), cplx(0), cplx(1)}),
                                    Polynomial({cplx(0), cplx(1)})));
  ConjugacyResult diff = affine_conjugacy_test(c14, c2);
  CHECK(!diff.conjugate);
  CHECK(diff.residual > 1e-2);

  // mismatched degree data short-circuits
  ConjugacyResult degree_gap = affine_conjugacy_test(f, c14);
  CHECK(!degree_gap.conjugate);

  // n = 2 symmetry: the mirror map is conjugate through a = -1
  Polynomial p2({cplx(1, 0.5), cplx(0), cplx(1)});
  Polynomial q2({cplx(0), cplx(0), cplx(0.5)});
  NewtonSpec h = spec_of(normalize(p2, q2));
  Polynomial p2m = p2.compose_affine(cplx(-1), cplx(0));
  Polynomial q2m = q2.compose_affine(cplx(-1), cplx(0));
  NewtonSpec hm = spec_of(normalize(p2m, q2m));
  ConjugacyResult mirror = affine_conjugacy_test(h, hm);
  CHECK(mirror.conjugate);
}

TEST_CASE("channel diagram census and invariance") {
  NewtonSpec cub = cubic_spec();
  ChannelDiagram diag = channel_diagram(cub);
  REQUIRE(diag.basins.size() == 3);
  CHECK(diag.complete);
  CHECK(diag.total_rays() == 4);
  CHECK(diag.basins[0].local_degree == 2);  // basins sorted: -1, 0, 1
  CHECK(diag.basins[1].local_degree == 3);
  CHECK(diag.basins[2].local_degree == 2);
  RayOptions opts;
  for (const auto& basin : diag.basins)
    for (const auto& ray : basin.rays) {
      CHECK(ray.complete);
      CHECK(ray_invariance_defect(cub, ray) < opts.tau_ray);
    }

  // z^3 - 1: three symmetric basins, one ray each, angles 2pi/3 apart
  NewtonSpec unity = build_newton(
      Polynomial({cplx(-1), cplx(0), cplx(0), cplx(1)}), Polynomial{});
  ChannelDiagram diag3 = channel_diagram(unity);
  REQUIRE(diag3.total_rays() == 3);
  std::vector<double> angles;
  for (const auto& basin : diag3.basins)
    angles.push_back(basin.rays[0].asymptotic_angle());
  std::sort(angles.begin(), angles.end());
  CHECK(angle_dist(angles[1], angles[0] + 2 * M_PI / 3) < 0.05);
  CHECK(angle_dist(angles[2], angles[1] + 2 * M_PI / 3) < 0.05);
}

TEST_CASE("markings") {
  ChannelDiagram diag = channel_diagram(cubic_spec());
  Marking one = make_marking(diag, {{1, 0}});
  CHECK(one.count() == 1);
  CHECK_THROWS_AS(make_marking(diag, {{5, 0}}), Error);
  CHECK_THROWS_AS(make_marking(diag, {{0, 1}}), Error);
  CHECK_THROWS_AS(make_marking(diag, {{1, 0}, {1, 1}}), Error);
}

TEST_CASE("correspondence audits") {
  NewtonSpec pcf = cubic_spec();
  ChannelDiagram diag = channel_diagram(pcf);

  // degree-2 marked basin against the degree-2 petal of c = -1/4
  AuditReport ok2 = correspondence_audit(pcf, diag, make_marking(diag, {{0, 0}}),
                                         family_spec(cplx(-0.25)));
  CHECK(ok2.pass);
  REQUIRE(ok2.rows.size() == 1);
  CHECK(ok2.rows[0].basin_degree == 2);
  CHECK(ok2.rows[0].petal_degree == 2);

  // degree-3 marked basin against the degree-3 petal of c = 2
  AuditReport ok3 = correspondence_audit(pcf, diag, make_marking(diag, {{1, 1}}),
                                         family_spec(cplx(2)));
  CHECK(ok3.pass);
  CHECK(ok3.rows[0].basin_degree == 3);

  // mismatched local degrees fail the degree check
  AuditReport bad = correspondence_audit(pcf, diag, make_marking(diag, {{0, 0}}),
                                         family_spec(cplx(2)));
  CHECK(!bad.pass);
  CHECK(!bad.degrees_ok);

  // wrong marking cardinality is reported, not paired
  AuditReport empty = correspondence_audit(pcf, diag, make_marking(diag, {}),
                                           family_spec(cplx(-0.25)));
  CHECK(!empty.pass);
  REQUIRE(!empty.details.empty());

  CHECK_THROWS_AS(correspondence_audit(family_spec(cplx(-0.25)), diag,
                                       make_marking(diag, {{0, 0}}),
                                       family_spec(cplx(-0.25))),
                  Error);
  CHECK_THROWS_AS(correspondence_audit(pcf, diag, make_marking(diag, {{0, 0}}),
                                       pcf),
                  NotParabolic);
}
