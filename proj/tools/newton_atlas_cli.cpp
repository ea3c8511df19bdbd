#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "newton_atlas/newton_atlas.hpp"

using namespace natlas;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

Viewport parse_viewport(const std::string& s) {
  double cx, cy, w, h;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &cx, &cy, &w, &h) != 4)
    throw ConfigError("--viewport expects cx,cy,w,h");
  return Viewport{cplx(cx, cy), w, h};
}

std::pair<int, int> parse_res(const std::string& s) {
  int w, h;
  if (std::sscanf(s.c_str(), "%dx%d", &w, &h) != 2 || w < 0 || h < 0)
    throw ConfigError("--res expects WxH");
  return {w, h};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

std::vector<std::pair<int, int>> parse_marks(const std::string& s) {
  std::vector<std::pair<int, int>> marks;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos
                                        ? std::string::npos
                                        : comma - pos);
    int b, r;
    if (std::sscanf(tok.c_str(), "%d:%d", &b, &r) != 2)
      throw ConfigError("--mark expects basin:ray[,basin:ray...]");
    marks.emplace_back(b, r);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (marks.empty()) throw ConfigError("--mark is empty");
  return marks;
}

NewtonSpec spec_from_file(const std::string& path) {
  MapConfig cfg = map_config_from_json(load_config(path));
  return build_newton(cfg.p, cfg.q);
}

int cmd_classify(const std::string& map_file, const std::string& out_path) {
  NewtonSpec spec = spec_from_file(map_file);
  emit(out_path, spec_report_json(spec).dump(2) + "\n");
  return kExitOk;
}

int cmd_render(const std::string& map_file, Viewport vp, int resx, int resy,
               int budget, const std::string& overlay,
               const std::string& format, const std::string& out_path) {
  if (format == "png")
    throw ConfigError("PNG output is not configured; PPM is the "
                      "contractual format");
  if (format != "ppm" && format != "json")
    throw ConfigError("render formats: ppm, json");
  if (out_path.empty()) throw ConfigError("render needs --out");

  NewtonSpec spec = spec_from_file(map_file);
  if (budget < 0) budget = default_budget(spec.n);
  BasinGrid grid = basin_grid(spec, vp, resx, resy, budget);

  OverlayFlags flags;
  size_t pos = 0;
  while (pos < overlay.size()) {
    size_t comma = overlay.find(',', pos);
    std::string tok = overlay.substr(pos, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - pos);
    if (tok == "rays") flags.rays = true;
    else if (tok == "critical") flags.critical = true;
    else if (tok == "fixed") flags.fixed = true;
    else if (!tok.empty()) throw ConfigError("unknown overlay: " + tok);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  if (format == "json") {
    json j = grid_sidecar_json(grid, spec, budget, CaptureParams{});
    j["labels"] = grid.labels;
    emit(out_path, j.dump(2) + "\n");
    return kExitOk;
  }

  Image img = render_grid(grid, spec.n, budget);
  ChannelDiagram diag;
  const ChannelDiagram* diag_ptr = nullptr;
  if (flags.rays && spec.n == 0) {
    try {
      diag = channel_diagram(spec);
      diag_ptr = &diag;
    } catch (const Error&) {
      // overlays are best-effort; the basin image stands alone
    }
  }
  draw_overlays(&img, grid, spec, flags, diag_ptr);
  try {
    write_ppm(img, out_path);
    write_text(out_path + ".json",
               grid_sidecar_json(grid, spec, budget, CaptureParams{})
                       .dump(2) +
                   "\n");
  } catch (const Error& e) {
    throw IoError(e.what());
  }
  return kExitOk;
}

int cmd_scan(const std::string& family_file, Viewport vp, int resx, int resy,
             int budget, const std::string& out_path) {
  NewtonFamily fam = family_from_json(load_config(family_file));
  if (vp.width <= 0 || vp.height <= 0 || resx == 0 || resy == 0) {
    emit(out_path, "c_re,c_im,pcm_flag\n");
    return kExitOk;
  }
  ScanResult res = param_scan(fam, vp, resx, resy, budget);
  emit(out_path, scan_to_csv(res));
  return kExitOk;
}

int cmd_audit(const std::string& pcf_file, const std::string& pcm_file,
              const std::string& marks_str, const std::string& out_path) {
  NewtonSpec pcf = spec_from_file(pcf_file);
  NewtonSpec pcm = spec_from_file(pcm_file);
  ChannelDiagram diag = channel_diagram(pcf);
  Marking marking = make_marking(diag, parse_marks(marks_str));
  AuditReport rep = correspondence_audit(pcf, diag, marking, pcm);
  emit(out_path, audit_report_json(rep).dump(2) + "\n");
  return rep.pass ? kExitOk : kExitVerifyFail;
}

int cmd_verify(const std::string& suite, unsigned seed) {
  VerifyResult res;
  if (suite == "footnotes")
    res = verify_footnotes(1000, seed);
  else if (suite == "blaschke")
    res = verify_blaschke();
  else
    throw ConfigError("unknown suite: " + suite +
                      " (available: footnotes, blaschke)");
  for (const auto& line : res.lines) std::cout << line << "\n";
  std::cout << (res.pass ? "OK" : "FAILED") << "\n";
  return res.pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"newton-atlas: rational Newton map toolkit"};
  app.require_subcommand(1);

  std::string map_file, family_file, out_path, overlay, format = "ppm";
  std::string viewport_str = "0,0,6,6", res_str = "800x800", marks_str;
  std::string pcm_file, suite;
  int budget = -1;
  unsigned seed = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--viewport", viewport_str, "cx,cy,w,h");
    sub->add_option("--res", res_str, "WxH");
    sub->add_option("--budget", budget, "iteration budget");
    sub->add_option("--out", out_path, "output path");
  };

  CLI::App* classify = app.add_subcommand("classify", "classification report");
  classify->add_option("--map", map_file, "map config file")->required();
  classify->add_option("--out", out_path, "output path");

  CLI::App* render = app.add_subcommand("render", "basin image");
  render->add_option("--map", map_file, "map config file")->required();
  add_common(render);
  render->add_option("--overlay", overlay, "rays,critical,fixed");
  render->add_option("--format", format, "ppm|png|json");

  CLI::App* scan = app.add_subcommand("scan", "parameter scan CSV");
  scan->add_option("--family", family_file, "family config file")->required();
  add_common(scan);

  CLI::App* audit = app.add_subcommand("audit", "correspondence audit");
  audit->add_option("--map", map_file, "pcf map config")->required();
  audit->add_option("--pcm", pcm_file, "parabolic map config")->required();
  audit->add_option("--mark", marks_str, "basin:ray[,basin:ray...]")
      ->required();
  audit->add_option("--out", out_path, "output path");

  CLI::App* verify = app.add_subcommand("verify", "builtin suites");
  verify->add_option("suite", suite, "footnotes | blaschke")->required();
  verify->add_option("--seed", seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (classify->parsed()) return cmd_classify(map_file, out_path);
    if (render->parsed()) {
      auto [rx, ry] = parse_res(res_str);
      return cmd_render(map_file, parse_viewport(viewport_str), rx, ry,
                        budget, overlay, format, out_path);
    }
    if (scan->parsed()) {
      auto [rx, ry] = parse_res(res_str);
      return cmd_scan(family_file, parse_viewport(viewport_str), rx, ry,
                      budget, out_path);
    }
    if (audit->parsed())
      return cmd_audit(map_file, pcm_file, marks_str, out_path);
    if (verify->parsed()) return cmd_verify(suite, seed);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConstantMap& e) {
    std::cerr << "error: constant Newton map: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const DegreeTooLow& e) {
    std::cerr << "error: degenerate map: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitConfig;
}
