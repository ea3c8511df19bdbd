#include <catch2/catch_amalgamated.hpp>

#include "newton_atlas/image.hpp"
#include "newton_atlas/serialize.hpp"

using namespace natlas;

TEST_CASE("polynomial json round trip") {
  Polynomial p({cplx(-0.25, 0.5), cplx(0), cplx(1)});
  Polynomial back = poly_from_json(poly_to_json(p));
  REQUIRE(back.degree() == p.degree());
  for (int k = 0; k <= p.degree(); ++k)
    CHECK(back.coeff(k) == p.coeff(k));

  // bare numbers are accepted as real coefficients
  Polynomial real = poly_from_json(json::parse("[1, 0, 2.5]"));
  CHECK(real.coeff(2) == cplx(2.5));

  CHECK_THROWS_AS(poly_from_json(json::parse("{\"a\": 1}")), ConfigError);
  CHECK_THROWS_AS(cplx_from_json(json::parse("[1, 2, 3]")), ConfigError);
}

TEST_CASE("toml subset parsing") {
  json doc = parse_toml_subset(
      "# comment\n"
      "p = [[2, 0], [0, 0], [1, 0]]\n"
      "name = \"cubic\"\n"
      "flag = true\n"
      "\n"
      "[family]\n"
      "p0 = [[0,0], [0,0], [1,0]]\n"
      "c = [2, 0]\n");
  CHECK(doc["name"] == "cubic");
  CHECK(doc["flag"] == true);
  REQUIRE(doc["p"].is_array());
  CHECK(doc["p"].size() == 3);
  CHECK(doc["p"][0][0] == 2.0);
  CHECK(doc["family"]["c"][0] == 2.0);

  CHECK_THROWS_AS(parse_toml_subset("p [1]\n"), ConfigError);
  CHECK_THROWS_AS(parse_toml_subset("p = [1, 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_toml_subset("p = zebra\n"), ConfigError);
  CHECK_THROWS_AS(parse_toml_subset("[family\n"), ConfigError);
}

TEST_CASE("config text dispatch") {
  json from_json = parse_config_text("{\"p\": [1, 0, 1]}");
  CHECK(from_json["p"].size() == 3);
  json from_toml = parse_config_text("p = [1, 0, 1]\n");
  CHECK(from_toml["p"].size() == 3);
  CHECK_THROWS_AS(parse_config_text("{\"p\": "), ConfigError);
}

TEST_CASE("map config extraction") {
  MapConfig direct = map_config_from_json(
      parse_config_text("p = [[-0.25, 0], [0, 0], [1, 0]]\nq = [[0,0], [1,0]]\n"));
  CHECK(direct.p.degree() == 2);
  CHECK(direct.q.degree() == 1);

  MapConfig fam = map_config_from_json(parse_config_text(
      "[family]\n"
      "p0 = [[0,0], [0,0], [1,0]]\n"
      "p1 = [[1,0]]\n"
      "q0 = [[0,0], [1,0]]\n"
      "c = [2, 0]\n"));
  CHECK(fam.p.degree() == 2);
  CHECK(std::abs(fam.p.coeff(0) - cplx(2)) < 1e-15);
  CHECK(fam.q.degree() == 1);

  CHECK_THROWS_AS(map_config_from_json(parse_config_text("q = [1]\n")),
                  ConfigError);
  // coefficients must be affine in c; anything else is rejected
  CHECK_THROWS_AS(family_from_json(parse_config_text(
                      "[family]\np0 = [[0,0],[0,0],[1,0]]\np2 = [[1,0]]\n")),
                  ConfigError);
  CHECK_THROWS_AS(family_from_json(parse_config_text("p = [1, 0, 1]\n")),
                  ConfigError);
}

TEST_CASE("report json fields") {
  NewtonSpec spec = build_newton(Polynomial({cplx(-0.25), cplx(0), cplx(1)}),
                                 Polynomial({cplx(0), cplx(1)}));
  json rep = spec_report_json(spec);
  CHECK(rep["kind"] == "newton_spec_report");
  CHECK(rep["m"] == 2);
  CHECK(rep["n"] == 1);
  CHECK(rep["d"] == 3);
  CHECK(rep["fixed_points"].size() == 3);
  bool has_parabolic_inf = false;
  for (const auto& fp : rep["fixed_points"])
    if (fp["location"] == "infinity" && fp["kind"] == "parabolic" &&
        fp["petal_count"] == 1)
      has_parabolic_inf = true;
  CHECK(has_parabolic_inf);
  REQUIRE(rep["petal_directions"].size() == 1);
  CHECK(std::abs(rep["petal_directions"][0].get<double>() - M_PI) < 1e-12);

  json pcm = pcm_report_json(check_pcm(spec));
  CHECK(pcm["verdict"] == "consistent");
  CHECK(pcm["caveat"].is_string());
  REQUIRE(pcm["evidence"].size() == 1);
  CHECK(pcm["evidence"][0]["fate"] == "petal:0");
  CHECK(pcm["immediate_census"][0]["local_degree"] == 2);
}

TEST_CASE("diagram and audit json") {
  NewtonSpec cub = build_newton(
      Polynomial({cplx(0), cplx(-1), cplx(0), cplx(1)}), Polynomial{});
  ChannelDiagram diag = channel_diagram(cub);
  json dj = diagram_json(diag);
  CHECK(dj["kind"] == "channel_diagram");
  CHECK(dj["complete"] == true);
  REQUIRE(dj["basins"].size() == 3);
  CHECK(dj["basins"][1]["rays"].size() == 2);
  CHECK(dj["basins"][0]["rays"][0]["points"].size() > 10);

  NewtonSpec pcm = build_newton(Polynomial({cplx(-0.25), cplx(0), cplx(1)}),
                                Polynomial({cplx(0), cplx(1)}));
  AuditReport rep =
      correspondence_audit(cub, diag, make_marking(diag, {{0, 0}}), pcm);
  json aj = audit_report_json(rep);
  CHECK(aj["kind"] == "audit_report");
  CHECK(aj["pass"] == true);
  REQUIRE(aj["rows"].size() == 1);
  CHECK(aj["rows"][0]["match"] == true);
}

TEST_CASE("grid sidecar json") {
  NewtonSpec spec = build_newton(Polynomial({cplx(-0.25), cplx(0), cplx(1)}),
                                 Polynomial({cplx(0), cplx(1)}));
  BasinGrid grid = basin_grid(spec, {cplx(0), 4.0, 4.0}, 16, 16, 500);
  json side = grid_sidecar_json(grid, spec, 500, {});
  CHECK(side["resolution"][0] == 16);
  CHECK(side["budget"] == 500);
  CHECK(side["legend"]["0"] == "root 0");
  CHECK(side["legend"][std::to_string(kPetalBase)] == "petal 0");
  CHECK(side["legend"]["-1"] == "undecided");
}

TEST_CASE("ppm encoding") {
  Image img(3, 2);
  img.set(0, 0, {230, 57, 70});
  img.set(2, 1, {1, 2, 3});
  std::string data = encode_ppm(img);
  CHECK(data.rfind("P6\n3 2\n255\n", 0) == 0);
  CHECK(data.size() == 11 + 3 * 2 * 3);
  CHECK(static_cast<uint8_t>(data[11]) == 230);
  CHECK(static_cast<uint8_t>(data[data.size() - 1]) == 3);
}

TEST_CASE("rendering conventions") {
  CHECK(label_color(kLabelUndecided, 1).r == 0);
  Rgb r0 = label_color(0, 0);
  CHECK(r0.r == kRootPalette[0].r);
  CHECK(label_color(12, 0).r == kRootPalette[0].r);  // palette cycles
  Rgb pet = label_color(kPetalBase, 1);
  CHECK(pet.r == 255);

  Rgb dark = shade({200, 200, 200}, 1000, 1000);
  CHECK(dark.r == static_cast<uint8_t>(200 * 0.55));
  Rgb flat = shade({200, 200, 200}, 500, 0);
  CHECK(flat.r == 200);
}
