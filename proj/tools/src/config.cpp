#include "ribnet_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ribnet::cli {

json parse_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open " + file);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(file + ": " + e.what());
  }
}

namespace {

double positive(double v, const std::string& where) {
  if (!(v > 0) || !std::isfinite(v)) throw InputError(where + ": must be a positive number");
  return v;
}

void read_net_section(ObjectReader r, SeedSpec& s) {
  s.n = r.optional<int>("n", s.n);
  const int m = r.optional<int>("m", static_cast<int>(s.extents.size()));
  if (r.has("extents")) {
    s.extents = r.array<int>("extents");
  } else if (m != static_cast<int>(s.extents.size())) {
    s.extents.assign(static_cast<std::size_t>(m), s.extents.empty() ? 5 : s.extents.front());
  }
  if (static_cast<int>(s.extents.size()) != m) throw InputError(r.path("extents") + ": needs m entries");
  r.finish();
}

void read_seed_section(ObjectReader r, SeedSpec& s) {
  const std::string kind = r.optional<std::string>("kind", seed_kind_name(s.kind));
  if (kind == "grid") {
    s.kind = SeedKind::kGrid;
  } else if (kind == "frames") {
    s.kind = SeedKind::kFrames;
  } else if (kind == "circular") {
    s.kind = SeedKind::kCircular;
  } else {
    throw InputError(r.path("kind") + ": expected grid, frames or circular");
  }
  if (r.has("spacings")) s.spacings = r.array<double>("spacings");
  s.rng_seed = r.optional<std::uint64_t>("rng_seed", s.rng_seed);
  s.frames.amplitude = r.optional<double>("amplitude", s.frames.amplitude);
  s.frames.companion = positive(r.optional<double>("companion", s.frames.companion), r.path("companion"));
  s.frames.euclidean = r.optional<bool>("euclidean", s.frames.euclidean);
  s.frames.moebius = r.optional<bool>("moebius", s.frames.moebius);
  s.field.cross_ratio = r.optional<double>("cross_ratio", s.field.cross_ratio);
  s.field.spread = r.optional<double>("spread", s.field.spread);
  s.field.jitter = r.optional<double>("jitter", s.field.jitter);
  s.field.spacing = r.optional<double>("spacing", s.field.spacing);
  s.cauchy_only = r.optional<bool>("cauchy_only", s.cauchy_only);
  r.finish();
}

void read_tolerances(ObjectReader r, Tolerances& t) {
  if (r.has("default")) {
    set_tolerance(t, positive(r.optional<double>("default", 0.0), r.path("default")), "config");
  }
  auto field = [&](const char* key, double& target) {
    if (!r.has(key)) return;
    target = positive(r.optional<double>(key, 0.0), r.path(key));
    t.source = "config";
  };
  field("face", t.verify.face_tol);
  field("mc", t.verify.mc_tol);
  field("symmetry", t.verify.symmetry_tol);
  field("frame", t.verify.frame_tol);
  field("cross_ratio", t.verify.cross_ratio_tol);
  field("cell", t.verify.cell_tol);
  field("input", t.completion.input_tol);
  field("soft", t.completion.soft_tol);
  field("hard", t.completion.hard_tol);
  t.verify.max_cell_dim = r.optional<int>("max_cell_dim", t.verify.max_cell_dim);
  r.finish();
}

void read_output(ObjectReader r, OutputSpec& o) {
  o.net = r.optional<std::string>("net", o.net);
  o.report = r.optional<std::string>("report", o.report);
  o.mesh_dir = r.optional<std::string>("mesh_dir", o.mesh_dir);
  r.finish();
}

}  // namespace

std::string seed_kind_name(SeedKind kind) {
  switch (kind) {
    case SeedKind::kGrid: return "grid";
    case SeedKind::kFrames: return "frames";
    case SeedKind::kCircular: return "circular";
  }
  return "frames";
}

void set_tolerance(Tolerances& t, double tol, std::string source) {
  const int cells = t.verify.max_cell_dim;
  t.verify = scaled_options(tol);
  t.verify.max_cell_dim = cells;
  t.source = std::move(source);
}

RunConfig default_config(const std::optional<std::string>& tolerance_env) {
  RunConfig c;
  if (tolerance_env) {
    double v = 0.0;
    std::istringstream in(*tolerance_env);
    if (!(in >> v) || !(in >> std::ws).eof() || !(v > 0) || !std::isfinite(v)) {
      throw InputError(std::string(kToleranceEnv) + "='" + *tolerance_env +
                       "' is not a positive number");
    }
    set_tolerance(c.tolerances, v, kToleranceEnv);
    c.tolerances.env_value = tolerance_env;
  }
  return c;
}

void apply_config(const json& doc, RunConfig& c) {
  ObjectReader r(doc, "config");
  const std::string schema = r.required<std::string>("schema");
  if (schema != kConfigSchema) {
    throw InputError("config.schema: expected '" + std::string(kConfigSchema) + "', got '" + schema + "'");
  }
  const std::string command = r.optional<std::string>("command", c.command);
  if (!c.command.empty() && command != c.command) {
    throw InputError("config.command: file is for '" + command + "', invoked as '" + c.command + "'");
  }
  if (r.has("net")) read_net_section(ObjectReader(r.child("net"), "config.net"), c.seed);
  if (r.has("seed")) read_seed_section(ObjectReader(r.child("seed"), "config.seed"), c.seed);
  if (r.has("tolerances")) {
    read_tolerances(ObjectReader(r.child("tolerances"), "config.tolerances"), c.tolerances);
  }
  if (r.has("output")) read_output(ObjectReader(r.child("output"), "config.output"), c.output);
  r.finish();
}

}  // namespace ribnet::cli
