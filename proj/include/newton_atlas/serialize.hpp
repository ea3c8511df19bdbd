#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "newton_atlas/audit.hpp"
#include "newton_atlas/normal_form.hpp"
#include "newton_atlas/scan.hpp"

namespace natlas {

using json = nlohmann::json;

inline json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw ConfigError("expected a complex number as [re, im]");
}

// ascending-degree array of [re, im] pairs
inline json poly_to_json(const Polynomial& p) {
  json arr = json::array();
  for (const auto& c : p.coeffs()) arr.push_back(cplx_to_json(c));
  return arr;
}

inline Polynomial poly_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("polynomial must be an array");
  std::vector<cplx> coeffs;
  for (const auto& e : j) coeffs.push_back(cplx_from_json(e));
  return Polynomial(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// config parsing: JSON natively, or a TOML subset (flat `key = value` lines
// plus [section] headers; values are numbers, strings, booleans, or nested
// arrays) normalized into the same JSON document
// ---------------------------------------------------------------------------

namespace detail {

inline void skip_ws(const std::string& s, size_t* i) {
  while (*i < s.size() && (s[*i] == ' ' || s[*i] == '\t')) ++*i;
}

inline json parse_toml_value(const std::string& s, size_t* i);

inline json parse_toml_array(const std::string& s, size_t* i) {
  json arr = json::array();
  ++*i;  // consume '['
  while (true) {
    skip_ws(s, i);
    if (*i >= s.size()) throw ConfigError("unterminated array");
    if (s[*i] == ']') { ++*i; return arr; }
    arr.push_back(parse_toml_value(s, i));
    skip_ws(s, i);
    if (*i < s.size() && s[*i] == ',') ++*i;
  }
}

inline json parse_toml_value(const std::string& s, size_t* i) {
  skip_ws(s, i);
  if (*i >= s.size()) throw ConfigError("missing value");
  char c = s[*i];
  if (c == '[') return parse_toml_array(s, i);
  if (c == '"') {
    size_t end = s.find('"', *i + 1);
    if (end == std::string::npos) throw ConfigError("unterminated string");
    std::string v = s.substr(*i + 1, end - *i - 1);
    *i = end + 1;
    return json(v);
  }
  size_t start = *i;
  while (*i < s.size() && s[*i] != ',' && s[*i] != ']' && s[*i] != '#')
    ++*i;
  std::string tok = s.substr(start, *i - start);
  while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t'))
    tok.pop_back();
  if (tok == "true") return json(true);
  if (tok == "false") return json(false);
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw ConfigError("bad number: " + tok);
    return json(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad value: " + tok);
  }
}

}  // namespace detail

inline json parse_toml_subset(const std::string& text) {
  json doc = json::object();
  json* scope = &doc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t i = 0;
    detail::skip_ws(line, &i);
    if (i >= line.size() || line[i] == '#') continue;
    if (line[i] == '[') {
      size_t end = line.find(']', i);
      if (end == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      std::string name = line.substr(i + 1, end - i - 1);
      doc[name] = json::object();
      scope = &doc[name];
      continue;
    }
    size_t eq = line.find('=', i);
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = line.substr(i, eq - i);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
      key.pop_back();
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    size_t vi = eq + 1;
    (*scope)[key] = detail::parse_toml_value(line, &vi);
  }
  return doc;
}

// JSON if the document starts with '{', TOML subset otherwise
inline json parse_config_text(const std::string& text) {
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  if (i < text.size() && text[i] == '{') {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("invalid JSON config");
    return doc;
  }
  return parse_toml_subset(text);
}

inline json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

struct MapConfig {
  Polynomial p, q;
};

inline NewtonFamily family_from_json(const json& doc);

inline MapConfig map_config_from_json(const json& doc) {
  if (doc.contains("family")) {
    NewtonFamily fam = family_from_json(doc);
    if (!doc["family"].contains("c"))
      throw ConfigError("family used as a map needs a 'c' value");
    cplx c = cplx_from_json(doc["family"]["c"]);
    return {fam.p_at(c), fam.q_at(c)};
  }
  if (!doc.contains("p")) throw ConfigError("config needs a 'p' array");
  MapConfig cfg;
  cfg.p = poly_from_json(doc["p"]);
  if (doc.contains("q")) cfg.q = poly_from_json(doc["q"]);
  return cfg;
}

inline NewtonFamily family_from_json(const json& doc) {
  if (!doc.contains("family"))
    throw ConfigError("config needs a [family] section");
  const json& f = doc["family"];
  for (auto it = f.begin(); it != f.end(); ++it) {
    std::string k = it.key();
    if (k != "p0" && k != "p1" && k != "q0" && k != "q1" && k != "c")
      throw ConfigError("family key '" + k +
                        "' unsupported: coefficients must be affine in c "
                        "(p0, p1, q0, q1)");
  }
  NewtonFamily fam;
  if (f.contains("p0")) fam.p0 = poly_from_json(f["p0"]);
  if (f.contains("p1")) fam.p1 = poly_from_json(f["p1"]);
  if (f.contains("q0")) fam.q0 = poly_from_json(f["q0"]);
  if (f.contains("q1")) fam.q1 = poly_from_json(f["q1"]);
  if (fam.p0.degree() < 1 && fam.p1.degree() < 1)
    throw ConfigError("family needs p0/p1 with deg >= 1");
  return fam;
}

// ---------------------------------------------------------------------------
// report serialization, stable field names
// ---------------------------------------------------------------------------

inline json fixed_point_json(const FixedPointReport& fp) {
  json j;
  j["location"] = fp.location.inf ? json("infinity")
                                  : cplx_to_json(fp.location.v);
  j["kind"] = to_string(fp.kind);
  j["multiplier"] = cplx_to_json(fp.multiplier);
  j["multiplicity"] = fp.multiplicity;
  j["petal_count"] = fp.petal_count;
  return j;
}

inline json spec_report_json(const NewtonSpec& spec) {
  json j;
  j["kind"] = "newton_spec_report";
  j["p"] = poly_to_json(spec.p);
  j["q"] = poly_to_json(spec.q);
  j["m"] = spec.m;
  j["n"] = spec.n;
  j["d"] = spec.d;
  j["degenerate"] = spec.degenerate;
  j["simple_roots"] = spec.simple_roots;
  j["num"] = poly_to_json(spec.map.num());
  j["den"] = poly_to_json(spec.map.den());
  j["fixed_points"] = json::array();
  for (const auto& fp : fixed_points(spec))
    j["fixed_points"].push_back(fixed_point_json(fp));
  j["critical_points"] = json::array();
  for (const auto& cp : critical_points_clustered(spec)) {
    json c;
    c["location"] = cplx_to_json(cp.location);
    c["local_degree"] = cp.local_degree;
    j["critical_points"].push_back(c);
  }
  if (spec.n >= 1) {
    j["petal_directions"] = json::array();
    for (double th : petal_directions_general(spec.n, qprime_lead(spec)))
      j["petal_directions"].push_back(th);
  }
  return j;
}

inline json pcm_report_json(const PcmReport& rep) {
  json j;
  j["kind"] = "pcm_report";
  j["verdict"] = to_string(rep.verdict);
  j["details"] = rep.details;
  j["caveat"] = rep.caveat;
  j["evidence"] = json::array();
  for (const auto& ev : rep.evidence) {
    json e;
    e["critical"] = cplx_to_json(ev.critical.location);
    e["local_degree"] = ev.critical.local_degree;
    e["fate"] = fate_string(ev.fate);
    e["steps"] = ev.steps;
    e["immediate"] = ev.immediate;
    e["preperiod"] = ev.preperiod;
    if (ev.landing_target) {
      e["landing_target"] = cplx_to_json(*ev.landing_target);
      e["landing_distance"] = ev.landing_distance;
    }
    j["evidence"].push_back(e);
  }
  j["immediate_census"] = json::array();
  for (const auto& row : rep.immediate_census) {
    json r;
    r["petal"] = row.petal;
    r["critical_count"] = row.critical_count;
    r["local_degree"] = row.local_degree;
    j["immediate_census"].push_back(r);
  }
  return j;
}

inline json diagram_json(const ChannelDiagram& diag) {
  json j;
  j["kind"] = "channel_diagram";
  j["complete"] = diag.complete;
  j["failures"] = diag.failures;
  j["basins"] = json::array();
  for (const auto& b : diag.basins) {
    json bj;
    bj["fixed_point"] = cplx_to_json(b.fixed_point);
    bj["local_degree"] = b.local_degree;
    bj["rays"] = json::array();
    for (const auto& r : b.rays) {
      json rj;
      rj["ray_index"] = r.ray_index;
      rj["complete"] = r.complete;
      rj["failure"] = r.failure;
      rj["asymptotic_angle"] = r.asymptotic_angle();
      json pts = json::array();
      for (cplx z : r.points) pts.push_back(cplx_to_json(z));
      rj["points"] = pts;
      bj["rays"].push_back(rj);
    }
    j["basins"].push_back(bj);
  }
  return j;
}

inline json audit_report_json(const AuditReport& rep) {
  json j;
  j["kind"] = "audit_report";
  j["pass"] = rep.pass;
  j["petal_count_ok"] = rep.petal_count_ok;
  j["degrees_ok"] = rep.degrees_ok;
  j["unmarked_count_ok"] = rep.unmarked_count_ok;
  j["rotation"] = rep.rotation;
  j["details"] = rep.details;
  j["rows"] = json::array();
  for (const auto& row : rep.rows) {
    json r;
    r["basin"] = row.basin;
    r["petal"] = row.petal;
    r["ray_angle"] = row.ray_angle;
    r["petal_angle"] = row.petal_angle;
    r["basin_degree"] = row.basin_degree;
    r["petal_degree"] = row.petal_degree;
    r["match"] = row.match;
    j["rows"].push_back(r);
  }
  return j;
}

inline json grid_sidecar_json(const BasinGrid& grid, const NewtonSpec& spec,
                              int budget, const CaptureParams& caps) {
  json j;
  j["kind"] = "basin_grid_sidecar";
  j["viewport"] = {{"center", cplx_to_json(grid.viewport.center)},
                   {"width", grid.viewport.width},
                   {"height", grid.viewport.height}};
  j["resolution"] = {grid.resx, grid.resy};
  j["budget"] = budget;
  j["tolerances"] = {{"tau_capture", caps.tau_capture},
                     {"r_escape", caps.r_escape},
                     {"angle_tol_deg", caps.angle_tol_deg}};
  json legend = json::object();
  for (size_t i = 0; i < poly_roots(spec.p).size(); ++i)
    legend[std::to_string(i)] = "root " + std::to_string(i);
  for (int p = 0; p < spec.n; ++p)
    legend[std::to_string(kPetalBase + p)] = "petal " + std::to_string(p);
  legend[std::to_string(kLabelUndecided)] = "undecided";
  j["legend"] = legend;
  return j;
}

}  // namespace natlas
