#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "newton_atlas/rational_map.hpp"

using namespace natlas;

namespace {

Polynomial random_poly(std::mt19937& rng, int deg) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<cplx> c(static_cast<size_t>(deg) + 1);
  for (auto& x : c) x = cplx(u(rng), u(rng));
  if (std::abs(c.back()) < 0.1) c.back() += cplx(1.0);
  return Polynomial(std::move(c));
}

bool has_root_near(const std::vector<RootCluster>& roots, cplx target,
                   double tol = 1e-8, int mult = -1) {
  for (const auto& rc : roots)
    if (std::abs(rc.location - target) < tol &&
        (mult < 0 || rc.multiplicity == mult))
      return true;
  return false;
}

}  // namespace

TEST_CASE("polynomial evaluation") {
  Polynomial p({cplx(2), cplx(0), cplx(1)});  // z^2 + 2
  CHECK(std::abs(p.eval(cplx(0)) - cplx(2)) == 0.0);

  Polynomial cub({cplx(0), cplx(-1), cplx(0), cplx(1)});  // z^3 - z
  CHECK(std::abs(cub.eval(cplx(1))) < 1e-15);

  Polynomial fig3({cplx(-0.25), cplx(0), cplx(1)});  // z^2 - 1/4
  CHECK(std::abs(fig3.eval(cplx(0.5))) < 1e-15);
}

TEST_CASE("formal derivative") {
  Polynomial cub({cplx(0), cplx(-1), cplx(0), cplx(1)});
  Polynomial d = cub.derivative();  // 3z^2 - 1
  REQUIRE(d.degree() == 2);
  CHECK(std::abs(d.coeff(0) - cplx(-1)) == 0.0);
  CHECK(std::abs(d.coeff(1)) == 0.0);
  CHECK(std::abs(d.coeff(2) - cplx(3)) == 0.0);

  CHECK(Polynomial::constant(5).derivative().is_zero());

  Polynomial pc({cplx(0.7), cplx(0), cplx(1)});
  Polynomial dpc = pc.derivative();
  REQUIRE(dpc.degree() == 1);
  CHECK(std::abs(dpc.coeff(1) - cplx(2)) == 0.0);
}

TEST_CASE("derivative matches central finite differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial p = random_poly(rng, 1 + trial % 8);
    Polynomial dp = p.derivative();
    cplx z(u(rng), u(rng));
    double h = 1e-6;
    cplx fd = (p.eval(z + h) - p.eval(z - h)) / (2.0 * h);
    cplx ref = dp.eval(z);
    double scale = std::max(1.0, std::abs(ref));
    CHECK(std::abs(fd - ref) / scale < 1e-6);
  }
}

TEST_CASE("poly_roots on closed-form examples") {
  double s2 = std::sqrt(2.0);
  auto r1 = poly_roots(Polynomial({cplx(2), cplx(0), cplx(1)}));
  REQUIRE(r1.size() == 2);
  CHECK(has_root_near(r1, cplx(0, s2), 1e-10, 1));
  CHECK(has_root_near(r1, cplx(0, -s2), 1e-10, 1));

  auto r2 = poly_roots(Polynomial({cplx(0), cplx(-1), cplx(0), cplx(1)}));
  REQUIRE(r2.size() == 3);
  CHECK(has_root_near(r2, cplx(0), 1e-10, 1));
  CHECK(has_root_near(r2, cplx(1), 1e-10, 1));
  CHECK(has_root_near(r2, cplx(-1), 1e-10, 1));

  // z^2 - z + 1/4: double root, exercises clustering
  auto r3 = poly_roots(Polynomial({cplx(0.25), cplx(-1), cplx(1)}));
  REQUIRE(r3.size() == 1);
  CHECK(r3[0].multiplicity == 2);
  CHECK(std::abs(r3[0].location - cplx(0.5)) < 1e-5);
}

TEST_CASE("roots of expanded products round-trip") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    int deg = 2 + trial % 5;
    std::vector<cplx> roots;
    while (static_cast<int>(roots.size()) < deg) {
      cplx r(u(rng), u(rng));
      bool separated = true;
      for (cplx s : roots) separated = separated && std::abs(r - s) > 0.5;
      if (separated) roots.push_back(r);
    }
    auto rec = poly_roots(Polynomial::from_roots(roots));
    REQUIRE(rec.size() == roots.size());
    for (cplx r : roots) CHECK(has_root_near(rec, r, 1e-8));
  }
}

TEST_CASE("rational reduction") {
  // (z^2 - 1)/(z - 1) -> z + 1
  RationalMap f = rational_reduce(Polynomial({cplx(-1), cplx(0), cplx(1)}),
                                  Polynomial({cplx(-1), cplx(1)}));
  CHECK(f.reduced());
  CHECK(f.num().degree() == 1);
  CHECK(f.den().degree() == 0);
  SpherePoint v = f.eval(cplx(3));
  CHECK(std::abs(v.v - cplx(4)) < 1e-12);

  // 2z^3/(3z^2 - 1): already coprime
  RationalMap g = rational_reduce(
      Polynomial({cplx(0), cplx(0), cplx(0), cplx(2)}),
      Polynomial({cplx(-1), cplx(0), cplx(3)}));
  CHECK(g.degree() == 3);

  // den root displaced beyond the tolerance: not matched, no cancellation
  RationalMap h = rational_reduce(
      Polynomial::from_roots({cplx(0), cplx(2)}),
      Polynomial({cplx(-2 + 1e-3), cplx(1)}), 1e-12);
  CHECK(h.num().degree() == 2);
  CHECK(h.den().degree() == 1);
}

TEST_CASE("rational evaluation on the sphere") {
  RationalMap f(Polynomial({cplx(0), cplx(0), cplx(0), cplx(2)}),
                Polynomial({cplx(-1), cplx(0), cplx(3)}), true);
  SpherePoint at1 = f.eval(cplx(1));
  CHECK(!at1.inf);
  CHECK(std::abs(at1.v - cplx(1)) < 1e-12);

  SpherePoint pole = f.eval(cplx(1.0 / std::sqrt(3.0)));
  CHECK(pole.inf);

  CHECK(f.eval(SpherePoint::infinity()).inf);

  // unreduced 0/0 signals failed reduction
  RationalMap bad(Polynomial({cplx(-1), cplx(0), cplx(1)}),
                  Polynomial({cplx(-1), cplx(1)}), false);
  CHECK_THROWS_AS(bad.eval(cplx(1)), Indeterminate);
}

TEST_CASE("evaluation commutes with reduction") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    cplx shared(u(rng), u(rng));
    Polynomial num = Polynomial::from_roots({shared, cplx(u(rng), u(rng))});
    Polynomial den = Polynomial::from_roots({shared, cplx(u(rng), u(rng))});
    RationalMap reduced = rational_reduce(num, den);
    for (int s = 0; s < 20; ++s) {
      cplx z(u(rng), u(rng));
      if (std::abs(z - shared) < 1e-2) continue;
      SpherePoint a = RationalMap(num, den, false).eval(z);
      SpherePoint b = reduced.eval(z);
      CHECK(chordal(a, b) < 1e-8);
    }
  }
}

TEST_CASE("mobius conjugacy check") {
  RationalMap f(Polynomial({cplx(0), cplx(0), cplx(0), cplx(2)}),
                Polynomial({cplx(-1), cplx(0), cplx(3)}), true);
  RationalMap g(Polynomial({cplx(0), cplx(1.5), cplx(0), cplx(1)}),
                Polynomial::constant(1), true);

  MobiusMap id;
  CHECK(mobius_conjugate_check(id, f, f, 200, 5) == 0.0);

  MobiusMap m{cplx(0), cplx(0, 1), cplx(std::sqrt(2.0)), cplx(0)};
  CHECK(mobius_conjugate_check(m, f, g, 1000, 1) < 1e-10);

  // symmetry: forward and inverse certify together
  CHECK(mobius_conjugate_check(m.inverse(), g, f, 1000, 1) < 1e-10);

  // and a wrong pairing fails in both directions
  RationalMap wrong(Polynomial({cplx(1), cplx(1.5), cplx(0), cplx(1)}),
                    Polynomial::constant(1), true);
  CHECK(mobius_conjugate_check(m, f, wrong, 200, 1) > 1e-3);
  CHECK(mobius_conjugate_check(m.inverse(), wrong, f, 200, 1) > 1e-3);
}

TEST_CASE("roots at the origin") {
  auto roots = poly_roots(Polynomial({cplx(0), cplx(0), cplx(-6), cplx(0),
                                      cplx(6)}));  // 6z^4 - 6z^2
  REQUIRE(roots.size() == 3);
  CHECK(has_root_near(roots, cplx(0), 1e-10, 2));
  CHECK(has_root_near(roots, cplx(1), 1e-8, 1));
  CHECK(has_root_near(roots, cplx(-1), 1e-8, 1));
}
