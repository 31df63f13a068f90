/* Command-line front end.  Subcommands:
 *
 *   implicitize   parameterization -> implicit polynomial (+ diagnostics)
 *   member        exact on/off test for query points
 *   side          relative sidedness of point pairs
 *   ray           first intersection of a ray with the surface
 *   plotdata      sign grid for plotting a curve
 *
 * Every error class maps to its own process exit code (the numeric value of
 * the error code); 0 means the query ran, whatever the geometric answer. */

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "simplicit/implicit.hpp"
#include "simplicit/param.hpp"
#include "simplicit/polytope.hpp"
#include "simplicit/predicates.hpp"

namespace {

using namespace simplicit;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(ErrorCode::io_error, "short write to '" + path + "'");
}

std::vector<Rat> parse_point(const std::string& text) {
  std::vector<Rat> out;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    auto b = tok.find_first_not_of(" \t");
    auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos)
      fail(ErrorCode::invalid_input, "empty coordinate in point '" + text + "'");
    out.push_back(rat_from_string(tok.substr(b, e - b + 1)));
  }
  if (out.empty()) fail(ErrorCode::invalid_input, "empty point");
  return out;
}

std::pair<std::vector<Rat>, std::vector<Rat>> parse_point_pair(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos)
    fail(ErrorCode::invalid_input,
         "expected two points separated by ';' in '" + text + "'");
  return {parse_point(text.substr(0, semi)), parse_point(text.substr(semi + 1))};
}

json point_json(const std::vector<Rat>& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(rat_to_string(c));
  return out;
}

// Options shared by every subcommand that builds a surface.
struct CommonOptions {
  std::string input;
  std::string support_file;
  std::optional<int> degree_bound;
  std::uint64_t seed = 1;
  std::int64_t cap = EnumerationCaps{}.lattice_budget;
  bool json_out = false;
  bool timings = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_support = true) {
  cmd->add_option("--input", opt.input, "parameterization file (statements or JSON)")
      ->required();
  if (with_support) {
    cmd->add_option("--support", opt.support_file,
                    "support polytope vertex file ('dim k' header, one vertex per line)");
    cmd->add_option("--degree-bound", opt.degree_bound,
                    "use the degree-D simplex as the support prediction");
  }
  cmd->add_option("--seed", opt.seed, "sampling seed (default 1)");
  cmd->add_option("--cap", opt.cap, "lattice enumeration budget");
  cmd->add_flag("--json", opt.json_out, "machine-readable output");
  cmd->add_flag("--timings", opt.timings, "wall-clock phase times on stderr");
}

EnumerationCaps caps_from(const CommonOptions& opt) {
  EnumerationCaps caps;
  caps.lattice_budget = opt.cap;
  // An explicit degree bound is honored even beyond the automatic cutoff.
  if (opt.degree_bound && *opt.degree_bound > caps.degree_bound_max)
    caps.degree_bound_max = *opt.degree_bound;
  return caps;
}

LatticePolytope choose_support(const ParametricMap& map, const CommonOptions& opt) {
  if (!opt.support_file.empty() && opt.degree_bound)
    fail(ErrorCode::invalid_input, "--support and --degree-bound are mutually exclusive");
  if (!opt.support_file.empty())
    return parse_polytope_file(read_file(opt.support_file));
  return degree_bound_polytope(map, opt.degree_bound, caps_from(opt));
}

struct PhaseTimer {
  bool enabled;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  void lap(const char* phase) {
    if (!enabled) return;
    auto now = std::chrono::steady_clock::now();
    auto us = std::chrono::duration_cast<std::chrono::microseconds>(now - start);
    std::cerr << "[time] " << phase << ": " << us.count() << " us\n";
    start = now;
  }
};

int cmd_implicitize(const CommonOptions& opt, const std::string& mode_name, double tol,
                    std::optional<double> mu_factor, const std::string& out_prefix,
                    bool dump_matrix, bool skip_genericity) {
  PhaseTimer timer{opt.timings};
  ParametricMap map = parse_map(read_file(opt.input));
  LatticePolytope q = choose_support(map, opt);
  timer.lap("parse+support");

  ImplicitizeConfig config;
  if (mode_name == "exact") config.mode = MatrixMode::exact;
  else if (mode_name == "approximate" || mode_name == "approx")
    config.mode = MatrixMode::approximate;
  else fail(ErrorCode::invalid_input, "mode must be 'exact' or 'approximate'");
  config.tolerance = tol;
  config.seed = opt.seed;
  config.mu_factor = mu_factor;
  config.caps = caps_from(opt);
  config.validate_genericity = !skip_genericity;

  ImplicitizeResult result = implicitize(map, q, config);
  timer.lap("implicitize");

  json diag;
  diag["support_size"] = result.diagnostics.support_size;
  diag["mu"] = result.diagnostics.mu;
  diag["corank"] = result.diagnostics.corank_reported;
  diag["corank_exact"] = result.diagnostics.corank_exact;
  diag["seed"] = result.diagnostics.seed;
  diag["check_seed"] = result.diagnostics.check_seed;
  diag["mode"] = result.diagnostics.mode == MatrixMode::exact ? "exact" : "approximate";
  diag["gcd_path"] = result.diagnostics.gcd_path;
  diag["notes"] = result.diagnostics.notes;

  if (!out_prefix.empty()) {
    write_file(out_prefix + ".poly.txt", result.polynomial.to_string() + "\n");
    write_file(out_prefix + ".poly.json", poly_to_json(result.polynomial) + "\n");
    write_file(out_prefix + ".diag.json", diag.dump(2) + "\n");
    if (dump_matrix) {
      InterpolationMatrix m = build_matrix(map, lattice_points(translate_positive(q), config.caps),
                                           result.diagnostics.mu, config.seed);
      write_file(out_prefix + ".matrix.csv", matrix_csv(m));
      write_file(out_prefix + ".samples.json", samples_json(m.samples, config.seed) + "\n");
    }
  } else if (opt.json_out) {
    json out;
    out["polynomial"] = json::parse(poly_to_json(result.polynomial));
    out["diagnostics"] = diag;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << result.polynomial.to_string() << "\n";
  }
  timer.lap("output");
  return 0;
}

SurfaceHandle freeze_from(const CommonOptions& opt, ParametricMap& map_out) {
  map_out = parse_map(read_file(opt.input));
  LatticePolytope q = choose_support(map_out, opt);
  FreezeConfig fc;
  fc.seed = opt.seed;
  fc.caps = caps_from(opt);
  return SurfaceHandle::freeze(map_out, q, fc);
}

std::vector<std::string> batch_lines(const std::string& path) {
  std::vector<std::string> lines;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(b, e - b + 1));
  }
  if (lines.empty())
    fail(ErrorCode::invalid_input, "batch file '" + path + "' contains no queries");
  return lines;
}

int cmd_member(const CommonOptions& opt, const std::string& point_text,
               const std::string& batch_file) {
  if (point_text.empty() == batch_file.empty())
    fail(ErrorCode::invalid_input, "pass exactly one of --point or --batch");
  PhaseTimer timer{opt.timings};
  ParametricMap map;
  SurfaceHandle h = freeze_from(opt, map);
  timer.lap("freeze");

  std::vector<std::string> queries =
      point_text.empty() ? batch_lines(batch_file) : std::vector<std::string>{point_text};
  json results = json::array();
  for (const auto& qtext : queries) {
    QueryPoint q{parse_point(qtext)};
    Membership m = membership(h, q);
    if (opt.json_out) {
      json r;
      r["point"] = point_json(q.coords);
      r["membership"] = m == Membership::on_surface ? "on_surface" : "off_surface";
      results.push_back(std::move(r));
    } else {
      std::cout << (m == Membership::on_surface ? "on" : "off") << "\n";
    }
  }
  if (opt.json_out)
    std::cout << (queries.size() == 1 ? results[0] : results).dump(2) << "\n";
  timer.lap("queries");
  return 0;
}

int cmd_side(const CommonOptions& opt, const std::string& pair_text,
             const std::string& batch_file) {
  if (pair_text.empty() == batch_file.empty())
    fail(ErrorCode::invalid_input, "pass exactly one of --pair or --batch");
  PhaseTimer timer{opt.timings};
  ParametricMap map;
  SurfaceHandle h = freeze_from(opt, map);
  timer.lap("freeze");

  std::vector<std::string> queries =
      pair_text.empty() ? batch_lines(batch_file) : std::vector<std::string>{pair_text};
  json results = json::array();
  for (const auto& qtext : queries) {
    auto [a, b] = parse_point_pair(qtext);
    int s = sidedness(h, QueryPoint{a}, QueryPoint{b});
    if (opt.json_out) {
      json r;
      r["a"] = point_json(a);
      r["b"] = point_json(b);
      r["sidedness"] = s;
      results.push_back(std::move(r));
    } else {
      std::cout << (s > 0 ? "same" : s < 0 ? "opposite" : "boundary") << "\n";
    }
  }
  if (opt.json_out)
    std::cout << (queries.size() == 1 ? results[0] : results).dump(2) << "\n";
  timer.lap("queries");
  return 0;
}

int cmd_ray(const CommonOptions& opt, const std::string& base_text,
            const std::string& dir_text, const std::string& batch_file, double tol) {
  bool single = !base_text.empty() || !dir_text.empty();
  if (single == !batch_file.empty())
    fail(ErrorCode::invalid_input, "pass either --base and --dir, or --batch");
  if (single && (base_text.empty() || dir_text.empty()))
    fail(ErrorCode::invalid_input, "--base and --dir are both required");
  if (!(tol > 0)) fail(ErrorCode::invalid_input, "tolerance must be positive");

  PhaseTimer timer{opt.timings};
  ParametricMap map;
  SurfaceHandle h = freeze_from(opt, map);
  timer.lap("freeze");

  std::vector<Ray> rays;
  if (single) {
    rays.push_back(Ray{parse_point(base_text), parse_point(dir_text)});
  } else {
    for (const auto& line : batch_lines(batch_file)) {
      auto [b, d] = parse_point_pair(line);
      rays.push_back(Ray{std::move(b), std::move(d)});
    }
  }

  Rat rat_tol(tol);  // exact binary value of the double; only a width target
  json results = json::array();
  for (const auto& ray : rays) {
    auto hit = ray_shoot(h, ray, rat_tol);
    if (opt.json_out) {
      json r;
      r["base"] = point_json(ray.base);
      r["dir"] = point_json(ray.dir);
      r["hit"] = hit.has_value();
      if (hit) {
        r["rho"] = rat_to_string(hit->rho);
        r["lo"] = rat_to_string(hit->lo);
        r["hi"] = rat_to_string(hit->hi);
        r["exact"] = hit->exact;
        r["point"] = point_json(hit->point);
      }
      results.push_back(std::move(r));
    } else if (hit) {
      std::cout << "hit rho=" << rat_to_string(hit->rho) << " in ("
                << rat_to_string(hit->lo) << ", " << rat_to_string(hit->hi) << "]"
                << (hit->exact ? " exact" : "") << "\n";
    } else {
      std::cout << "miss\n";
    }
  }
  if (opt.json_out)
    std::cout << (rays.size() == 1 ? results[0] : results).dump(2) << "\n";
  timer.lap("queries");
  return 0;
}

int cmd_plotdata(const CommonOptions& opt, const std::string& window_text, int res,
                 const std::string& out_file) {
  if (res < 2) fail(ErrorCode::invalid_input, "resolution must be at least 2");
  PhaseTimer timer{opt.timings};
  ParametricMap map;
  SurfaceHandle h = freeze_from(opt, map);
  if (h.support().points[0].size() != 2)
    fail(ErrorCode::invalid_input, "plotdata renders plane curves only");
  timer.lap("freeze");

  std::vector<Rat> w = parse_point(window_text);
  if (w.size() != 4)
    fail(ErrorCode::invalid_input, "--window needs xmin,xmax,ymin,ymax");
  if (!(w[0] < w[1]) || !(w[2] < w[3]))
    fail(ErrorCode::invalid_input, "window must have xmin < xmax and ymin < ymax");

  /* det M(x, y) agrees with the defining polynomial up to one constant
   * factor as a polynomial identity, so the sign grid is valid even on the
   * coordinate axes. */
  const std::vector<Rat>& cof = h.last_row_cofactors();
  std::ostringstream out;
  out << "x,y,sign\n";
  for (int i = 0; i < res; ++i) {
    Rat x = w[0] + (w[1] - w[0]) * Rat(i) / Rat(res - 1);
    for (int j = 0; j < res; ++j) {
      Rat y = w[2] + (w[3] - w[2]) * Rat(j) / Rat(res - 1);
      int s;
      if (h.corank_one()) {
        RatRow row = monomial_row(h.support(), {x, y});
        Rat det(0);
        for (std::size_t k = 0; k < cof.size(); ++k) det += cof[k] * row[k];
        s = sign_of(det);
      } else {
        s = sign_of(h.fallback()->eval({x, y}));
      }
      out << rat_to_string(x) << "," << rat_to_string(y) << "," << s << "\n";
    }
  }
  if (out_file.empty())
    std::cout << out.str();
  else
    write_file(out_file, out.str());
  timer.lap("grid");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implicit-form geometry for rational parameterizations: "
               "implicitization by interpolation, membership, sidedness, and "
               "ray shooting on the matrix representation"};
  app.require_subcommand(1);

  CommonOptions copt;
  std::string mode = "exact";
  double tol = 1e-8;
  std::optional<double> mu_factor;
  std::string out_prefix;
  bool dump_matrix = false, skip_genericity = false;

  CLI::App* imp = app.add_subcommand("implicitize", "compute the implicit polynomial");
  add_common(imp, copt);
  imp->add_option("--mode", mode, "exact or approximate corank detection");
  imp->add_option("--tol", tol, "singular value cutoff for approximate mode");
  imp->add_option("--mu-factor", mu_factor, "rows = ceil(factor * |S|)");
  imp->add_option("--out", out_prefix, "write <prefix>.poly.txt/.poly.json/.diag.json");
  imp->add_flag("--dump-matrix", dump_matrix, "with --out: also write the matrix and samples");
  imp->add_flag("--skip-genericity-check", skip_genericity,
                "do not cross-validate the kernel with a second seed");

  std::string point_text, batch_file;
  CLI::App* mem = app.add_subcommand("member", "is a point on the surface?");
  add_common(mem, copt);
  mem->add_option("--point", point_text, "query point, e.g. '3/2,3/2'");
  mem->add_option("--batch", batch_file, "file with one query point per line");

  std::string pair_text;
  CLI::App* sid = app.add_subcommand("side", "are two points on the same side?");
  add_common(sid, copt);
  sid->add_option("--pair", pair_text, "two points, e.g. '1,1;3,3'");
  sid->add_option("--batch", batch_file, "file with one pair per line");

  std::string base_text, dir_text;
  double ray_tol = 1e-9;
  CLI::App* ray = app.add_subcommand("ray", "first surface hit along a ray");
  add_common(ray, copt);
  ray->add_option("--base", base_text, "ray origin");
  ray->add_option("--dir", dir_text, "ray direction");
  ray->add_option("--tol", ray_tol, "isolation width for the hit parameter");
  ray->add_option("--batch", batch_file, "file with 'base;dir' per line");

  std::string window_text, plot_out;
  int res = 64;
  CLI::App* plot = app.add_subcommand("plotdata", "sign grid over a window (curves)");
  add_common(plot, copt);
  plot->add_option("--window", window_text, "xmin,xmax,ymin,ymax")->required();
  plot->add_option("--res", res, "grid resolution per axis (default 64)");
  plot->add_option("--out", plot_out, "CSV output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (imp->parsed())
      return cmd_implicitize(copt, mode, tol, mu_factor, out_prefix, dump_matrix,
                             skip_genericity);
    if (mem->parsed()) return cmd_member(copt, point_text, batch_file);
    if (sid->parsed()) return cmd_side(copt, pair_text, batch_file);
    if (ray->parsed()) return cmd_ray(copt, base_text, dir_text, batch_file, ray_tol);
    if (plot->parsed()) return cmd_plotdata(copt, window_text, res, plot_out);
  } catch (const simplicit::Error& e) {
    std::cerr << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return static_cast<int>(simplicit::ErrorCode::internal);
  }
  return 0;
}
