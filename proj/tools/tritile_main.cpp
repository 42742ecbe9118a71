#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "tritile/analysis.hpp"
#include "tritile/construct.hpp"
#include "tritile/model.hpp"
#include "tritile/numtheory.hpp"
#include "tritile/render.hpp"
#include "tritile/search.hpp"

using nlohmann::ordered_json;
using namespace tritile;

namespace {

// Exit codes: 0 success, 1 domain-negative (no solutions, no tilings found,
// invalid tiling), 2 usage or unreadable input, 3 violated theorem invariant.
constexpr int kOk = 0, kNegative = 1, kUsage = 2;

long double alpha_rad(const TileSpec& s) {
  return 2.0L * std::asin(static_cast<long double>(s.M) / (2.0L * s.K));
}

double to_deg(long double rad) {
  return static_cast<double>(rad * 180.0L / std::acos(-1.0L));
}

std::string fmt10(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string rat_str(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// cos(alpha) = N / (2 K^2); cos(beta) = sin(3 alpha/2) = M (3K^2 - M^2) / (2 K^3).
Rational cos_alpha(const TileSpec& s) { return make_rational(s.N, 2 * s.K * s.K); }
Rational cos_beta(const TileSpec& s) {
  return make_rational(s.M * (3 * s.K * s.K - s.M * s.M), 2 * s.K * s.K * s.K);
}

ordered_json solution_json(const TileSpec& s) {
  long double alpha = alpha_rad(s);
  long double beta = (std::acos(-1.0L) - 3.0L * alpha) / 2.0L;
  ordered_json j;
  j["M"] = s.M;
  j["K"] = s.K;
  j["D"] = s.D;
  j["divisible"] = s.divisible;
  if (s.divisible) j["J"] = s.J;
  j["tile"] = {s.a_scaled, s.b_scaled, s.c_scaled};
  j["frame"] = {s.X_scaled, s.Y_scaled, s.Z_scaled};
  j["alpha_deg"] = to_deg(alpha);
  j["beta_deg"] = to_deg(beta);
  j["cos_alpha"] = rat_str(cos_alpha(s));
  j["cos_beta"] = rat_str(cos_beta(s));
  return j;
}

void print_solution(const TileSpec& s) {
  long double alpha = alpha_rad(s);
  long double beta = (std::acos(-1.0L) - 3.0L * alpha) / 2.0L;
  std::printf("  M=%lld K=%lld D=%lld: tile (%lld, %lld, %lld), frame (%lld, %lld, %lld), "
              "K | M^2: %s%s\n",
              s.M, s.K, s.D, s.a_scaled, s.b_scaled, s.c_scaled, s.X_scaled, s.Y_scaled,
              s.Z_scaled, s.divisible ? "yes" : "no",
              s.divisible ? (", J=" + std::to_string(s.J)).c_str() : "");
  std::printf("    alpha = %s deg (cos alpha = %s), beta = %s deg (cos beta = %s)\n",
              fmt10(to_deg(alpha)).c_str(), rat_str(cos_alpha(s)).c_str(),
              fmt10(to_deg(beta)).c_str(), rat_str(cos_beta(s)).c_str());
}

int cmd_solve(long long N, bool json) {
  std::vector<Solution> sols = solve_tiling_equation(N);
  Admissibility adm = classify_admissible(N);
  ExistenceVerdict verdict = tiling_exists(N);
  if (json) {
    ordered_json j;
    j["N"] = N;
    j["admissible"] = adm.admissible;
    j["square_part"] = adm.square_part;
    j["squarefree_part"] = adm.squarefree_part;
    j["violating_primes"] = adm.violating_primes;
    j["tiling_exists"] = verdict.exists;
    j["solutions"] = ordered_json::array();
    for (const Solution& s : sols) j["solutions"].push_back(solution_json(derive_tile(s.M, s.K)));
    std::cout << j.dump(2) << "\n";
    return sols.empty() ? kNegative : kOk;
  }
  std::printf("N = %lld\n", N);
  std::printf("admissible: %s (square part %lld, squarefree part %lld)\n",
              adm.admissible ? "yes" : "no", adm.square_part, adm.squarefree_part);
  std::printf("tiling exists: %s\n", verdict.exists ? "yes" : "no");
  if (sols.empty()) {
    std::printf("no solutions of M^2 + %lld = 2 K^2 with 0 < M < K\n", N);
    return kNegative;
  }
  std::printf("solutions: %zu\n", sols.size());
  for (const Solution& s : sols) print_solution(derive_tile(s.M, s.K));
  return kOk;
}

// A remark in the source eliminates N = 14 and 17 by the prime-form
// criterion, yet both are solvable (and 14's search space is analyzed at
// length there); the scan prints a note instead of propagating the remark.
const char* scan_note(long long N) {
  if (N == 14 || N == 17) return "solvable despite a published elimination remark";
  return "";
}

int cmd_scan(long long lo, long long hi, bool json) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("scan: need 1 <= LO <= HI");
  if (json) {
    ordered_json rows = ordered_json::array();
    for (long long n = lo; n <= hi; ++n) {
      ordered_json r;
      r["N"] = n;
      r["solutions"] = static_cast<long long>(solve_tiling_equation(n).size());
      r["admissible"] = classify_admissible(n).admissible;
      r["tiling_exists"] = tiling_exists(n).exists;
      std::string note = scan_note(n);
      if (!note.empty()) r["note"] = note;
      rows.push_back(r);
    }
    ordered_json j;
    j["lo"] = lo;
    j["hi"] = hi;
    j["rows"] = rows;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::printf("%8s %10s %11s %7s\n", "N", "solutions", "admissible", "exists");
  for (long long n = lo; n <= hi; ++n) {
    std::string note = scan_note(n);
    std::printf("%8lld %10zu %11s %7s%s%s\n", n, solve_tiling_equation(n).size(),
                classify_admissible(n).admissible ? "yes" : "no",
                tiling_exists(n).exists ? "yes" : "no", note.empty() ? "" : "  ",
                note.c_str());
  }
  return kOk;
}

int cmd_build(long long M, long long K, std::string out, bool json) {
  TileSpec spec = derive_tile(M, K);
  if (!spec.divisible) {
    std::fprintf(stderr,
                 "K does not divide M^2 (%lld does not divide %lld): "
                 "no triquadratic tiling for N = %lld\n",
                 K, M * M, spec.N);
    return kNegative;
  }
  TriquadraticPlan plan = triquadratic_plan(M, K);
  Tiling t = triquadratic(M, K);
  ValidationReport r = validate(t);
  if (!r.valid) throw invariant_error("constructed tiling failed validation");
  if (out.empty()) out = "tiling-N" + std::to_string(spec.N) + ".tiling";
  save_tiling(t, out);
  if (json) {
    ordered_json j;
    j["N"] = spec.N;
    j["M"] = M;
    j["K"] = K;
    j["J"] = plan.J;
    j["counts"] = {{"a2", plan.count_a2},
                   {"b2", plan.count_b2},
                   {"strip", plan.count_strip},
                   {"total", static_cast<long long>(t.tiles.size())}};
    j["valid"] = r.valid;
    j["file"] = out;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::printf("N = %lld (M=%lld, K=%lld, J=%lld)\n", spec.N, M, K, plan.J);
  std::printf("regions: a^2 = %lld tiles, b^2 = 2 x %lld tiles, strip = %lld tiles\n",
              plan.count_a2, plan.count_b2, plan.count_strip);
  std::printf("validation: pass\n");
  std::printf("wrote %s (%zu tiles)\n", out.c_str(), t.tiles.size());
  return kOk;
}

std::string side_terms(const SegmentSide& s) {
  std::string out;
  auto add = [&](long long n, char letter) {
    if (n == 0) return;
    if (!out.empty()) out += "+";
    if (n > 1) out += std::to_string(n);
    out += letter;
  };
  add(s.a, 'a');
  add(s.b, 'b');
  add(s.c, 'c');
  return out.empty() ? "0" : out;
}

const char* component_type_name(ComponentType t) {
  switch (t) {
    case ComponentType::type1: return "I";
    case ComponentType::type2: return "II";
    case ComponentType::type3: return "III";
    default: return "other";
  }
}

int cmd_verify(const std::string& file, bool report, bool json) {
  Tiling t = load_tiling(file);
  ValidationReport v = validate(t);
  CensusReport census = vertex_census(t);
  TwoColorReport tc = two_color(t);
  DMatrixReport dm = extract_d_matrix(t);
  ComponentReport comp = components(t);
  SegmentReport seg = segments(t);

  if (json) {
    ordered_json j;
    j["file"] = file;
    j["tiles"] = static_cast<long long>(t.tiles.size());
    j["partial"] = t.partial;
    j["valid"] = v.valid;
    j["errors"] = v.errors;
    j["warnings"] = v.warnings;
    j["boundary_fraction"] = {rat_str(v.boundary_fraction[0]), rat_str(v.boundary_fraction[1]),
                              rat_str(v.boundary_fraction[2])};
    ordered_json jc;
    for (const auto& [name, n] : census.counts) jc[name] = n;
    j["census"] = jc;
    j["centers"] = census.centers;
    j["corner_fill_canonical"] = census.corner_fill_canonical;
    j["center_identity_ok"] = !census.center_identity_applicable || census.center_identity_ok;
    j["black_minus_white"] = tc.black_minus_white;
    j["signed_identity_ok"] = !tc.signed_identity_applicable || tc.signed_identity_ok;
    j["d_matrix"] = dm.rows;
    j["d_matrix_equation_ok"] = dm.equation_ok;
    ordered_json jcomp = ordered_json::array();
    for (const ComponentInfo& c : comp.components) {
      jcomp.push_back({{"type", component_type_name(c.type)},
                       {"tiles", static_cast<long long>(c.tiles.size())}});
    }
    j["components"] = jcomp;
    j["segments"] = static_cast<long long>(seg.segments.size());
    j["essential_segments"] = seg.essential_count;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("file: %s\n", file.c_str());
    std::printf("tiles: %zu, mode: %s\n", t.tiles.size(), t.partial ? "partial" : "complete");
    std::printf("valid: %s\n", v.valid ? "yes" : "no");
    for (const std::string& e : v.errors) std::printf("  error: %s\n", e.c_str());
    for (const std::string& w : v.warnings) std::printf("  warning: %s\n", w.c_str());
    if (report) {
      std::printf("boundary coverage: X %s, Y %s, Z %s\n", rat_str(v.boundary_fraction[0]).c_str(),
                  rat_str(v.boundary_fraction[1]).c_str(),
                  rat_str(v.boundary_fraction[2]).c_str());
      std::printf("vertex census:");
      for (const auto& [name, n] : census.counts) std::printf(" %s x%lld", name.c_str(), n);
      std::printf("\n");
      std::printf("black minus white: %lld\n", tc.black_minus_white);
      const char* names[3] = {"X", "Y", "Z"};
      std::printf("d-matrix (a b c edges per frame side):\n");
      for (int i = 0; i < 3; ++i)
        std::printf("  %s: %lld %lld %lld\n", names[i], dm.rows[i][0], dm.rows[i][1],
                    dm.rows[i][2]);
      std::printf("components: %zu (", comp.components.size());
      for (size_t i = 0; i < comp.components.size(); ++i)
        std::printf("%s%s x%zu", i ? ", " : "", component_type_name(comp.components[i].type),
                    comp.components[i].tiles.size());
      std::printf(")\n");
      std::printf("maximal segments: %zu, essential: %lld\n", seg.segments.size(),
                  seg.essential_count);
      for (const MaximalSegment& m : seg.segments) {
        if (!m.essential) continue;
        std::printf("  essential relation: %s = %s\n", side_terms(m.pos).c_str(),
                    side_terms(m.neg).c_str());
      }
    }
  }
  if (!v.valid) return kNegative;
  // Theorem invariants hold on every valid complete tiling; a violation here
  // is a bug signal, not bad input.
  if (!t.partial) {
    if (census.center_identity_applicable && !census.center_identity_ok)
      throw invariant_error("vertex census center identity violated");
    if (tc.signed_identity_applicable && !tc.signed_identity_ok)
      throw invariant_error("signed tile-count identity violated");
    if (!dm.equation_ok) throw invariant_error("edge-count matrix equation violated");
    if (!comp.direction_consistent)
      throw invariant_error("component direction consistency violated");
  }
  return kOk;
}

ordered_json stats_json(const SearchStats& s) {
  return {{"nodes", s.nodes},         {"placements", s.placements},
          {"backtracks", s.backtracks}, {"dead_length", s.dead_length},
          {"dead_angle", s.dead_angle}, {"dead_overlap", s.dead_overlap}};
}

int cmd_search(long long N, long long max_nodes, bool all, const std::string& emit_dir,
               int threads, bool json) {
  std::vector<Solution> sols = solve_tiling_equation(N);
  if (sols.empty()) {
    std::fprintf(stderr, "N = %lld: no solutions of M^2 + N = 2 K^2, nothing to search\n", N);
    return kNegative;
  }
  SearchConfig cfg;
  cfg.max_nodes = max_nodes;
  cfg.emit = all ? EmitMode::all : EmitMode::first;
  cfg.threads = std::getenv("TRITILE_THREADS") ? 0 : threads;  // env overrides the flag
  if (!emit_dir.empty()) std::filesystem::create_directories(emit_dir);

  long long total = 0;
  ordered_json runs = ordered_json::array();
  for (const Solution& s : sols) {
    TileSpec spec = derive_tile(s.M, s.K);
    SearchOutcome o = boundary_search(spec, cfg);
    total += static_cast<long long>(o.found.size());
    if (!emit_dir.empty()) {
      for (size_t i = 0; i < o.found.size(); ++i) {
        char name[96];
        std::snprintf(name, sizeof name, "boundary-N%lld-M%lld-K%lld-%04zu.tiling", N, s.M, s.K,
                      i + 1);
        save_tiling(o.found[i], (std::filesystem::path(emit_dir) / name).string());
      }
    }
    if (json) {
      ordered_json r;
      r["M"] = s.M;
      r["K"] = s.K;
      r["found"] = static_cast<long long>(o.found.size());
      r["exhausted"] = o.exhausted;
      r["node_limit_hit"] = o.node_limit_hit;
      r["stats"] = stats_json(o.stats);
      runs.push_back(r);
    } else {
      std::printf("M=%lld K=%lld: found %zu boundary tiling%s; %s\n", s.M, s.K, o.found.size(),
                  o.found.size() == 1 ? "" : "s",
                  o.exhausted ? "space exhausted"
                              : (o.node_limit_hit ? "stopped at node limit" : "stopped early"));
      std::printf("  nodes %lld, placements %lld, backtracks %lld\n", o.stats.nodes,
                  o.stats.placements, o.stats.backtracks);
      std::printf("  dead ends: length %lld, angle %lld, overlap %lld\n", o.stats.dead_length,
                  o.stats.dead_angle, o.stats.dead_overlap);
    }
  }
  if (json) {
    ordered_json j;
    j["N"] = N;
    j["mode"] = all ? "all" : "first";
    j["runs"] = runs;
    j["total_found"] = total;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("total found: %lld\n", total);
  }
  return total > 0 ? kOk : kNegative;
}

int cmd_render(const std::string& file, std::string out, const std::string& color_by,
               const std::string& format, double scale) {
  Tiling t = load_tiling(file);
  RenderStyle style;
  static const std::map<std::string, ColorMode> modes = {
      {"component", ColorMode::by_component},
      {"sign", ColorMode::by_sign},
      {"region", ColorMode::by_region},
      {"uniform", ColorMode::uniform},
  };
  style.color_mode = modes.at(color_by);
  style.scale = scale;
  bool svg = format == "svg";
  if (out.empty()) {
    std::filesystem::path p(file);
    p.replace_extension(svg ? ".svg" : ".tex");
    out = p.string();
  }
  std::string text = svg ? to_svg(t, style) : to_pstricks(t, style);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + out);
  os << text;
  if (!os.flush()) throw std::runtime_error("write failed: " + out);
  std::printf("wrote %s (%zu tiles, %s)\n", out.c_str(), t.tiles.size(), format.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic laboratory for N-tilings of a triangle by a congruent tile\n"
               "(tile angles alpha, beta, gamma with 3 alpha + 2 beta = pi)"};
  app.require_subcommand(1);

  long long solve_n = 0;
  bool solve_json = false;
  CLI::App* solve = app.add_subcommand("solve", "solve M^2 + N = 2 K^2 and derive the shapes");
  solve->add_option("N", solve_n, "tile count")->required()->check(CLI::PositiveNumber);
  solve->add_flag("--json", solve_json, "machine-readable output");

  long long scan_lo = 0, scan_hi = 0;
  bool scan_json = false;
  CLI::App* scan = app.add_subcommand("scan", "tabulate solvability and existence over a range");
  scan->add_option("LO", scan_lo, "range start")->required()->check(CLI::PositiveNumber);
  scan->add_option("HI", scan_hi, "range end")->required()->check(CLI::PositiveNumber);
  scan->add_flag("--json", scan_json, "machine-readable output");

  long long build_m = 0, build_k = 0;
  std::string build_out;
  bool build_json = false;
  CLI::App* build = app.add_subcommand("build", "construct the triquadratic N-tiling");
  build->add_option("M", build_m, "solution M")->required()->check(CLI::PositiveNumber);
  build->add_option("K", build_k, "solution K")->required()->check(CLI::PositiveNumber);
  build->add_option("-o,--output", build_out, "output tiling file (default tiling-N<N>.tiling)");
  build->add_flag("--json", build_json, "machine-readable output");

  std::string verify_file;
  bool verify_report = false, verify_json = false;
  CLI::App* verify = app.add_subcommand("verify", "validate a tiling file and run the analyses");
  verify->add_option("FILE", verify_file, "tiling file")->required();
  verify->add_flag("--report", verify_report, "print the full analysis report");
  verify->add_flag("--json", verify_json, "machine-readable output");

  long long search_n = 0, search_max_nodes = 0;
  bool search_all = false, search_json = false;
  std::string search_emit_dir;
  int search_threads = 1;
  CLI::App* search = app.add_subcommand("search", "enumerate boundary tilings for N");
  search->add_option("N", search_n, "tile count")->required()->check(CLI::PositiveNumber);
  search->add_option("--max-nodes", search_max_nodes, "stop after this many nodes (0 = unlimited)")
      ->check(CLI::NonNegativeNumber);
  search->add_flag("--all", search_all, "enumerate every boundary tiling (default: stop at one)");
  search->add_option("--emit-dir", search_emit_dir, "write each finding to this directory");
  search->add_option("--threads", search_threads, "worker threads (TRITILE_THREADS overrides)")
      ->check(CLI::PositiveNumber);
  search->add_flag("--json", search_json, "machine-readable output");

  std::string render_file, render_out, render_color = "component", render_format = "svg";
  double render_scale = 1.0;
  CLI::App* render = app.add_subcommand("render", "draw a tiling file as SVG or pstricks TeX");
  render->add_option("FILE", render_file, "tiling file")->required();
  render->add_option("-o,--output", render_out, "output file (default FILE with .svg/.tex)");
  render->add_option("--color-by", render_color, "component, sign, region, or uniform")
      ->check(CLI::IsMember({"component", "sign", "region", "uniform"}));
  render->add_option("--format", render_format, "svg or pstricks")
      ->check(CLI::IsMember({"svg", "pstricks"}));
  render->add_option("--scale", render_scale, "output units per scaled length unit")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(solve_n, solve_json);
    if (scan->parsed()) return cmd_scan(scan_lo, scan_hi, scan_json);
    if (build->parsed()) return cmd_build(build_m, build_k, build_out, build_json);
    if (verify->parsed()) return cmd_verify(verify_file, verify_report, verify_json);
    if (search->parsed())
      return cmd_search(search_n, search_max_nodes, search_all, search_emit_dir, search_threads,
                        search_json);
    if (render->parsed())
      return cmd_render(render_file, render_out, render_color, render_format, render_scale);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const invariant_error& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
