#include "ribnet_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ribnet/cauchy.hpp"
#include "ribnet/diagnostics.hpp"
#include "ribnet/errors.hpp"
#include "ribnet/seeds.hpp"
#include "ribnet_cli/config.hpp"
#include "ribnet_cli/mesh.hpp"
#include "ribnet_cli/net_file.hpp"
#include "ribnet_cli/report.hpp"

namespace ribnet::cli {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string extents_text(const std::vector<int>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "x" : "") + std::to_string(e[i]);
  return s;
}

std::string verdict(bool ok) { return ok ? "result: PASS\n" : "result: FAIL\n"; }

// Options shared by the commands that load a config.
struct CommonOptions {
  std::string config;
  std::string report;
  std::string mesh_dir;
  double tolerance = 0.0;
  CLI::Option* tolerance_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOptions& c) {
  cmd->add_option("--config", c.config, "Schema-tagged JSON config")->check(CLI::ExistingFile);
  cmd->add_option("--report", c.report, "Write the machine-readable report here");
  c.tolerance_opt = cmd->add_option("--tolerance", c.tolerance,
                                    "One tolerance for every check (algebraic checks use 1/100)");
}

void add_mesh_option(CLI::App* cmd, CommonOptions& c) {
  cmd->add_option("--mesh-dir", c.mesh_dir, "Also write OBJ coordinate surfaces of F here");
}

RunConfig load(const std::string& command, const CommonOptions& c, const Environment& env) {
  RunConfig cfg = default_config(env.tolerance);
  cfg.command = command;
  if (!c.config.empty()) apply_config(parse_json_file(c.config), cfg);
  if (c.tolerance_opt->count()) {
    if (!(c.tolerance > 0)) throw InputError("--tolerance must be positive");
    set_tolerance(cfg.tolerances, c.tolerance, "command line");
  }
  if (!c.report.empty()) cfg.output.report = c.report;
  if (!c.mesh_dir.empty()) cfg.output.mesh_dir = c.mesh_dir;
  return cfg;
}

void emit_report(const RunConfig& cfg, const ordered_json& report) {
  if (!cfg.output.report.empty()) write_text_file(cfg.output.report, dump(report));
}

// Writes the net document to the configured path, or to `out` when none.
void emit_net(const RunConfig& cfg, const ordered_json& doc, std::ostream& out) {
  if (cfg.output.net.empty()) {
    out << dump(doc);
  } else {
    write_text_file(cfg.output.net, dump(doc));
  }
}

void emit_meshes(const RunConfig& cfg, const PairNet& net, const std::string& stem, std::ostream& log) {
  if (cfg.output.mesh_dir.empty()) return;
  const std::filesystem::path dir = cfg.output.mesh_dir;
  std::filesystem::create_directories(dir);
  for (const MeshFile& f : obj_slices(net, false, stem)) {
    write_text_file((dir / f.name).string(), f.content);
    log << "  wrote " << (dir / f.name).string() << "\n";
  }
}

NetDiagnostics verify_document(const NetDocument& doc, const PairNet& net, const Tolerances& tol) {
  NetDiagnostics d = verify_net(net, tol.verify);
  if (!doc.record_residuals.empty()) d.checks.push_back(record_check(doc, tol.verify.frame_tol));
  return d;
}

// ------------------------------------------------------------------ generate

struct GenerateOptions {
  CommonOptions common;
  std::string seed, out;
  int m = 0, n = 0, extent = 0;
  std::vector<int> extents;
  std::vector<double> spacings;
  std::uint64_t rng_seed = 0;
  double amplitude = 0, companion = 0, cross_ratio = 0, spread = 0, jitter = 0;
  bool euclidean = false, no_moebius = false, cauchy_only = false;
  CLI::App* app = nullptr;
};

void add_generate(CLI::App& app, GenerateOptions& g) {
  g.app = app.add_subcommand("generate", "Generate a net or its Cauchy data from a seed");
  CLI::App* c = g.app;
  add_common(c, g.common);
  add_mesh_option(c, g.common);
  c->add_option("--seed", g.seed, "Seed kind")->check(CLI::IsMember({"grid", "frames", "circular"}));
  c->add_option("--m", g.m, "Lattice dimension")->check(CLI::PositiveNumber);
  c->add_option("--n", g.n, "Dimension of the ambient space R^n")->check(CLI::Range(2, 8));
  c->add_option("--extent", g.extent, "Vertices per axis")->check(CLI::PositiveNumber);
  c->add_option("--extents", g.extents, "Vertices per axis, one value per axis")->delimiter(',');
  c->add_option("--spacings", g.spacings, "Grid spacings beta_j")->delimiter(',');
  c->add_option("--rng-seed", g.rng_seed, "Random seed");
  c->add_option("--amplitude", g.amplitude, "Frame seed perturbation size");
  c->add_option("--companion", g.companion, "Inverse radius of the frame seed axis spheres");
  c->add_option("--cross-ratio", g.cross_ratio, "Circular seed face cross ratio");
  c->add_option("--spread", g.spread, "Circular seed relative cross-ratio spread");
  c->add_option("--jitter", g.jitter, "Circular seed axis vertex jitter");
  c->add_flag("--euclidean", g.euclidean, "Frame seed with planar edge spheres (F^ = e_inf)");
  c->add_flag("--no-moebius", g.no_moebius, "Skip the random Moebius map of the frame seed");
  c->add_flag("--cauchy-only", g.cauchy_only, "Write only the coordinate 2-planes");
  c->add_option("--out", g.out, "Net file (stdout when omitted)");
}

void apply_generate_flags(const GenerateOptions& g, RunConfig& cfg) {
  SeedSpec& s = cfg.seed;
  auto given = [&](const char* name) { return g.app->get_option(name)->count() > 0; };
  if (given("--seed")) {
    s.kind = g.seed == "grid" ? SeedKind::kGrid : g.seed == "frames" ? SeedKind::kFrames : SeedKind::kCircular;
  }
  if (given("--n")) s.n = g.n;
  const int m = given("--m") ? g.m : static_cast<int>(s.extents.size());
  if (given("--extents")) {
    s.extents = g.extents;
  } else if (given("--extent")) {
    s.extents.assign(static_cast<std::size_t>(m), g.extent);
  } else if (given("--m")) {
    s.extents.resize(static_cast<std::size_t>(m), s.extents.empty() ? 5 : s.extents.front());
  }
  if (given("--m") && static_cast<int>(s.extents.size()) != m) {
    throw InputError("--extents needs one value per axis (m = " + std::to_string(m) + ")");
  }
  if (given("--spacings")) s.spacings = g.spacings;
  if (given("--rng-seed")) s.rng_seed = g.rng_seed;
  if (given("--amplitude")) s.frames.amplitude = g.amplitude;
  if (given("--companion")) s.frames.companion = g.companion;
  if (given("--cross-ratio")) s.field.cross_ratio = g.cross_ratio;
  if (given("--spread")) s.field.spread = g.spread;
  if (given("--jitter")) s.field.jitter = g.jitter;
  if (g.euclidean) s.frames.euclidean = true;
  if (g.no_moebius) s.frames.moebius = false;
  if (g.cauchy_only) s.cauchy_only = true;
  if (!g.out.empty()) cfg.output.net = g.out;
}

ordered_json seed_json(const SeedSpec& s) {
  ordered_json j;
  j["kind"] = seed_kind_name(s.kind);
  j["rng_seed"] = s.rng_seed;
  switch (s.kind) {
    case SeedKind::kGrid:
      j["spacings"] = s.spacings;
      break;
    case SeedKind::kFrames:
      j["amplitude"] = s.frames.amplitude;
      j["companion"] = s.frames.companion;
      j["euclidean"] = s.frames.euclidean;
      j["moebius"] = s.frames.moebius;
      break;
    case SeedKind::kCircular:
      j["cross_ratio"] = s.field.cross_ratio;
      j["spread"] = s.field.spread;
      j["jitter"] = s.field.jitter;
      j["spacing"] = s.field.spacing;
      break;
  }
  j["cauchy_only"] = s.cauchy_only;
  return j;
}

int cmd_generate(RunConfig& cfg, std::ostream& out) {
  SeedSpec& s = cfg.seed;
  for (int e : s.extents) {
    if (e < 1) throw InputError("extents must be positive");
  }
  require_net_dims(static_cast<int>(s.extents.size()), s.n);
  std::ostream& log = cfg.output.net.empty() ? std::cerr : out;
  ordered_json report = report_header("generate", cfg.tolerances);
  report["net"] = lattice_json(Lattice(s.extents), s.n);
  if (s.kind == SeedKind::kGrid && s.spacings.empty()) s.spacings.assign(s.extents.size(), 1.0);
  report["seed"] = seed_json(s);
  log << "ribnet generate: " << seed_kind_name(s.kind) << " seed, n=" << s.n << ", lattice "
      << extents_text(s.extents) << "\n";

  if (s.kind == SeedKind::kCircular) {
    const InitialData init = seed_random_circular(s.n, s.extents, s.field, s.rng_seed);
    init.validate(cfg.tolerances.completion);
    emit_net(cfg, initial_data_to_json(init), out);
    report["initial_data"] = "coordinate 2-planes, concircular within the input tolerance";
    report["passed"] = true;
    emit_report(cfg, report);
    log << "  initial data on the coordinate 2-planes validated\n" << verdict(true);
    return kSuccess;
  }

  PairNet net;
  if (s.kind == SeedKind::kGrid) {
    const FrameSeed seed = seed_grid(s.n, s.extents, s.spacings);
    net = nets_from_frames(seed.lattice, seed.frames);
  } else {
    const FrameSeed seed = seed_random_frames(s.n, s.extents, s.frames, s.rng_seed);
    net = nets_from_frames(seed.lattice, seed.frames);
  }
  const NetDiagnostics d = verify_net(net, cfg.tolerances.verify);
  WriteOptions w;
  if (s.cauchy_only) w = WriteOptions{false, false, 2};
  emit_net(cfg, net_to_json(net, w), out);
  report["verification"] = checks_json(d);
  emit_report(cfg, report);
  log << render_checks(d);
  emit_meshes(cfg, net, "net", log);
  log << verdict(d.passed());
  return d.passed() ? kSuccess : kCheckFailed;
}

// ---------------------------------------------------------------------- fill

int cmd_fill(RunConfig& cfg, const std::string& input, std::ostream& out) {
  const NetDocument doc = read_net_file(input);
  const InitialData init = to_initial_data(doc);
  std::ostream& log = cfg.output.net.empty() ? std::cerr : out;
  ordered_json report = report_header("fill", cfg.tolerances);
  report["net"] = lattice_json(doc.lattice, doc.n);
  report["pair"] = init.has_companion();
  log << "ribnet fill: n=" << doc.n << ", lattice " << extents_text(doc.lattice.extents())
      << (init.has_companion() ? ", F and F^" : ", F only") << "\n";
  FillResult filled;
  try {
    filled = init.has_companion() ? fill_pair_lattice(init, cfg.tolerances.completion)
                                  : fill_lattice(init, cfg.tolerances.completion);
  } catch (const DegenerateConfiguration& e) {
    report["error"] = e.what();
    report["passed"] = false;
    emit_report(cfg, report);
    log << "completion failed: " << e.what() << "\n" << verdict(false);
    return kCheckFailed;
  } catch (const InconsistentData& e) {
    report["error"] = e.what();
    report["passed"] = false;
    emit_report(cfg, report);
    log << "completion failed: " << e.what() << "\n" << verdict(false);
    return kCheckFailed;
  }
  const NetDiagnostics d = verify_document(doc, filled.net, cfg.tolerances);
  emit_net(cfg, net_to_json(filled.net), out);
  report["completion"] = completion_json(filled.report, doc.lattice);
  report["verification"] = checks_json(d);
  emit_report(cfg, report);
  const CompletionReport& c = filled.report;
  log << "  completed " << c.cells.size() << " cells, circle residual " << sci(c.max_circle_residual)
      << ", sphere residual " << sci(c.max_sphere_residual) << "\n"
      << "  multiply determined vertices " << c.discrepancies.size() << ", max discrepancy "
      << sci(c.max_discrepancy) << ", soft violations " << c.soft_violations << "\n"
      << render_checks(d);
  emit_meshes(cfg, filled.net, "net", log);
  log << verdict(d.passed());
  return d.passed() ? kSuccess : kCheckFailed;
}

// -------------------------------------------------------------------- verify

int cmd_verify(RunConfig& cfg, const std::string& input, std::ostream& out) {
  const NetDocument doc = read_net_file(input);
  const PairNet net = to_pair_net(doc);
  const NetDiagnostics d = verify_document(doc, net, cfg.tolerances);
  ordered_json report = report_header("verify", cfg.tolerances);
  report["net"] = lattice_json(doc.lattice, doc.n);
  report["verification"] = checks_json(d);
  emit_report(cfg, report);
  out << "ribnet verify: n=" << doc.n << ", lattice " << extents_text(doc.lattice.extents())
      << (net.has_frames() ? ", with frames" : "") << "\n"
      << render_checks(d) << verdict(d.passed());
  return d.passed() ? kSuccess : kCheckFailed;
}

// -------------------------------------------------------------------- export

int cmd_export(const std::string& input, const std::string& format, const std::string& target,
               const std::string& surface, const std::string& stem, std::ostream& out) {
  const NetDocument doc = read_net_file(input);
  const PairNet net = to_pair_net(doc);
  if (format == "net") {
    const std::string text = dump(net_to_json(net));
    if (target.empty()) {
      out << text;
    } else {
      write_text_file(target, text);
      out << "wrote " << target << "\n";
    }
    return kSuccess;
  }
  const std::filesystem::path dir = target.empty() ? "." : target;
  std::filesystem::create_directories(dir);
  for (const MeshFile& f : obj_slices(net, surface == "Fhat", stem)) {
    write_text_file((dir / f.name).string(), f.content);
    out << "wrote " << (dir / f.name).string() << "\n";
  }
  return kSuccess;
}

// --------------------------------------------------------------------- demos

EuclideanPoint point3(double x, double y, double z) {
  EuclideanPoint p(3);
  p << x, y, z;
  return p;
}

ordered_json point_json(const ConformalPoint& p) {
  const ProjectedPoint x = project(p);
  if (const auto* e = std::get_if<EuclideanPoint>(&x)) {
    return std::vector<double>(e->data(), e->data() + e->size());
  }
  return "infinity";
}

int demo_miquel(ordered_json& report, std::ostream& out) {
  const Algebra& alg = Algebra::get(3);
  std::vector<ConformalPoint> cube;
  for (int b = 0; b < 8; ++b) cube.push_back(lift(alg, point3(b & 1, (b >> 1) & 1, (b >> 2) & 1)));
  const Cell3 cell = complete_cell(std::span(cube).first(7));
  const double error = projective_distance(cell.point.vec(), cube[7].vec());
  const bool ok = error < 1e-10;
  ordered_json j;
  j["computed"] = point_json(cell.point);
  j["expected"] = point_json(cube[7]);
  j["error"] = error;
  j["circle_residual"] = cell.circle_residual;
  j["sphere_residual"] = cell.sphere_residual;
  j["tolerance"] = 1e-10;
  report["unit_cube"] = std::move(j);
  report["passed"] = ok;
  const EuclideanPoint x = std::get<EuclideanPoint>(project(cell.point));
  char buf[160];
  std::snprintf(buf, sizeof buf, "  eighth vertex from seven: (%.15f, %.15f, %.15f)\n", x(0), x(1), x(2));
  out << "ribnet demo miquel: unit cube, seven vertices given\n"
      << buf << "  projective error " << sci(error) << " (tolerance 1.0e-10)\n"
      << "  circle residual " << sci(cell.circle_residual) << ", sphere residual "
      << sci(cell.sphere_residual) << "\n"
      << verdict(ok);
  return ok ? kSuccess : kCheckFailed;
}

int demo_permutability(std::uint64_t seed, const CompletionOptions& copts, ordered_json& report,
                       const std::string& dir, std::ostream& out) {
  constexpr double kTol = 1e-8;
  out << "ribnet demo permutability: the 2^4 hypercube, n=3\n";
  // Data on the 2-cells through the origin determine the rest.
  const HypercubeResult two = hypercube_fill(4, 2, 3, seed_hypercube(4, 2, 3, seed), {}, copts);
  const bool ok_two = two.report.max_discrepancy < kTol && two.max_face_residual < kTol;
  out << "  i=2: " << two.report.cells.size() << " cell completions, "
      << two.report.discrepancies.size() << " redundant, max discrepancy "
      << sci(two.report.max_discrepancy) << ", face residual " << sci(two.max_face_residual) << "\n";

  // The same net restricted to its 3-cells through the origin extends uniquely.
  std::vector<std::optional<ConformalPoint>> three(two.net.F.size());
  const Lattice& lat = two.net.lattice;
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    if (lat.support(v).size() <= 3) three[v] = two.net.F[v];
  }
  const HypercubeResult from_three = hypercube_fill(4, 3, 3, three, {}, copts);
  const std::size_t top = lat.vertex_count() - 1;
  const double unique = projective_distance(from_three.net.F[top].vec(), two.net.F[top].vec());
  const bool ok_three = unique < kTol && from_three.report.max_discrepancy < kTol;
  out << "  i=3: far vertex agrees with the i=2 fill to " << sci(unique) << "\n";

  // Edge data leave one real parameter per 2-cell through the origin.
  const auto edges = seed_hypercube(4, 1, 3, seed);
  const std::vector<double> qa{-1.0, -1.0, -1.0, -1.0, -1.0, -1.0};
  const std::vector<double> qb{-0.8, -1.1, -1.3, -0.9, -1.2, -0.7};
  const HypercubeResult a = hypercube_fill(4, 1, 3, edges, qa, copts);
  const HypercubeResult b = hypercube_fill(4, 1, 3, edges, qb, copts);
  const double apart = projective_distance(a.net.F[top].vec(), b.net.F[top].vec());
  const bool ok_one = a.report.max_discrepancy < kTol && b.report.max_discrepancy < kTol && apart > 1e-6;
  out << "  i=1: two face-parameter choices, both consistent (max discrepancy "
      << sci(std::max(a.report.max_discrepancy, b.report.max_discrepancy))
      << "), far vertices differ by " << sci(apart) << "\n";

  ordered_json j2 = completion_json(two.report, lat);
  j2["max_face_residual"] = two.max_face_residual;
  report["from_2_cells"] = std::move(j2);
  ordered_json j3;
  j3["far_vertex_agreement"] = unique;
  j3["max_discrepancy"] = from_three.report.max_discrepancy;
  report["from_3_cells"] = std::move(j3);
  ordered_json j1;
  j1["parameters_a"] = qa;
  j1["parameters_b"] = qb;
  j1["max_discrepancy_a"] = a.report.max_discrepancy;
  j1["max_discrepancy_b"] = b.report.max_discrepancy;
  j1["far_vertex_separation"] = apart;
  report["from_edges"] = std::move(j1);
  report["rng_seed"] = seed;
  const bool ok = ok_two && ok_three && ok_one;
  report["passed"] = ok;
  if (!dir.empty()) write_text_file((std::filesystem::path(dir) / "hypercube.json").string(), dump(net_to_json(two.net)));
  out << verdict(ok);
  return ok ? kSuccess : kCheckFailed;
}

int demo_grid(const RunConfig& cfg, ordered_json& report, const std::string& dir, std::ostream& out) {
  const std::vector<int> extents{5, 5, 5};
  const std::vector<double> spacing{1.0, 1.0, 1.0};
  const FrameSeed seed = seed_grid(3, extents, spacing);
  const PairNet grid = nets_from_frames(seed.lattice, seed.frames);
  const FillResult filled = fill_pair_lattice(initial_data_from_net(grid, true), cfg.tolerances.completion);
  double worst = 0.0;
  for (std::size_t v = 0; v < grid.lattice.vertex_count(); ++v) {
    const EuclideanPoint x = std::get<EuclideanPoint>(project(filled.net.F[v]));
    const MultiIndex t = grid.lattice.multi_index(v);
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(x(k) - t[static_cast<std::size_t>(k)]));
  }
  const NetDiagnostics d = verify_net(filled.net, cfg.tolerances.verify);
  const bool ok = d.passed() && worst < 1e-10;
  report["net"] = lattice_json(grid.lattice, 3);
  report["max_grid_deviation"] = worst;
  report["completion"] = completion_json(filled.report, grid.lattice);
  report["verification"] = checks_json(d);
  report["passed"] = ok;
  out << "ribnet demo grid: 5x5x5 integer grid filled from its coordinate planes\n"
      << "  max deviation from the integer grid " << sci(worst) << "\n"
      << render_checks(d) << verdict(ok);
  if (!dir.empty()) {
    write_text_file((std::filesystem::path(dir) / "grid.json").string(), dump(net_to_json(filled.net)));
    for (const MeshFile& f : obj_slices(filled.net, false, "grid")) {
      write_text_file((std::filesystem::path(dir) / f.name).string(), f.content);
    }
  }
  return ok ? kSuccess : kCheckFailed;
}

int cmd_demo(RunConfig& cfg, const std::string& name, const std::string& dir, std::uint64_t seed,
             std::ostream& out) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
  ordered_json report = report_header("demo " + name, cfg.tolerances);
  int code = kSuccess;
  if (name == "miquel") {
    code = demo_miquel(report, out);
  } else if (name == "permutability") {
    code = demo_permutability(seed, cfg.tolerances.completion, report, dir, out);
  } else {
    code = demo_grid(cfg, report, dir, out);
  }
  if (cfg.output.report.empty() && !dir.empty()) {
    cfg.output.report = (std::filesystem::path(dir) / "report.json").string();
  }
  emit_report(cfg, report);
  return code;
}

}  // namespace

Environment process_environment() {
  Environment env;
  if (const char* t = std::getenv(kToleranceEnv)) env.tolerance = std::string(t);
  return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Ribaucour pairs of discrete circular nets in the light-cone model", "ribnet"};
  app.require_subcommand(1);

  GenerateOptions gen;
  add_generate(app, gen);

  CommonOptions fill_common;
  std::string fill_input, fill_out;
  CLI::App* fill = app.add_subcommand("fill", "Complete a net from its coordinate 2-planes");
  add_common(fill, fill_common);
  add_mesh_option(fill, fill_common);
  fill->add_option("--input", fill_input, "Net file with the initial data")->required()->check(CLI::ExistingFile);
  fill->add_option("--out", fill_out, "Filled net file (stdout when omitted)");

  CommonOptions verify_common;
  std::string verify_input;
  CLI::App* verify = app.add_subcommand("verify", "Check every invariant of a net file");
  add_common(verify, verify_common);
  verify->add_option("--input", verify_input, "Net file")->required()->check(CLI::ExistingFile);

  std::string export_input, export_format = "obj", export_out, export_surface = "F", export_stem = "net";
  CLI::App* exp = app.add_subcommand("export", "Export a net as OBJ quad meshes or a normalised net file");
  exp->add_option("--input", export_input, "Net file")->required()->check(CLI::ExistingFile);
  exp->add_option("--format", export_format, "obj or net")->check(CLI::IsMember({"obj", "net"}));
  exp->add_option("--out", export_out, "Directory for obj, file for net");
  exp->add_option("--surface", export_surface, "Which net to mesh")->check(CLI::IsMember({"F", "Fhat"}));
  exp->add_option("--stem", export_stem, "File name prefix of the meshes");

  CommonOptions demo_common;
  std::string demo_name, demo_dir;
  std::uint64_t demo_seed = 1;
  CLI::App* demo = app.add_subcommand("demo", "Run a worked example");
  add_common(demo, demo_common);
  demo->add_option("name", demo_name, "miquel, permutability or grid")
      ->required()
      ->check(CLI::IsMember({"miquel", "permutability", "grid"}));
  demo->add_option("--out", demo_dir, "Directory for the demo files and report");
  demo->add_option("--rng-seed", demo_seed, "Random seed of the permutability data");

  std::vector<const char*> argv{"ribnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kBadInput;
  }

  try {
    if (*gen.app) {
      RunConfig cfg = load("generate", gen.common, env);
      apply_generate_flags(gen, cfg);
      return cmd_generate(cfg, out);
    }
    if (*fill) {
      RunConfig cfg = load("fill", fill_common, env);
      if (!fill_out.empty()) cfg.output.net = fill_out;
      return cmd_fill(cfg, fill_input, out);
    }
    if (*verify) {
      RunConfig cfg = load("verify", verify_common, env);
      return cmd_verify(cfg, verify_input, out);
    }
    if (*exp) return cmd_export(export_input, export_format, export_out, export_surface, export_stem, out);
    RunConfig cfg = load("demo", demo_common, env);
    return cmd_demo(cfg, demo_name, demo_dir, demo_seed, out);
  } catch (const InputError& e) {
    err << "ribnet: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "ribnet: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    err << "ribnet: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "ribnet: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace ribnet::cli
