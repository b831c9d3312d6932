#include "ribnet_cli/report.hpp"

#include <algorithm>
#include <cstdio>

namespace ribnet::cli {

std::string format_index(const MultiIndex& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::string render_location(const Location& at) {
  std::string s = "vertex " + format_index(at.vertex);
  if (!at.axes.empty()) s += " axes " + format_index(at.axes);
  return s;
}

CheckResult record_check(const NetDocument& doc, double tol) {
  CheckResult c{"record_consistency", 0.0, tol, 0, 0, std::nullopt};
  for (const auto& r : doc.record_residuals) {
    c.record(r.distance, Location{doc.lattice.multi_index(r.vertex), {}});
  }
  return c;
}

ordered_json report_header(const std::string& command, const Tolerances& tol) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  ordered_json t;
  t["source"] = tol.source;
  t[kToleranceEnv] = tol.env_value ? ordered_json(*tol.env_value) : ordered_json(nullptr);
  t["face"] = tol.verify.face_tol;
  t["mc"] = tol.verify.mc_tol;
  t["symmetry"] = tol.verify.symmetry_tol;
  t["frame"] = tol.verify.frame_tol;
  t["cross_ratio"] = tol.verify.cross_ratio_tol;
  t["cell"] = tol.verify.cell_tol;
  t["max_cell_dim"] = tol.verify.max_cell_dim;
  t["input"] = tol.completion.input_tol;
  t["soft"] = tol.completion.soft_tol;
  t["hard"] = tol.completion.hard_tol;
  j["tolerances"] = std::move(t);
  return j;
}

ordered_json lattice_json(const Lattice& lat, int n) {
  ordered_json j;
  j["n"] = n;
  j["m"] = lat.dim();
  j["extents"] = lat.extents();
  return j;
}

namespace {

ordered_json location_json(const std::optional<Location>& at) {
  if (!at) return nullptr;
  ordered_json j;
  j["vertex"] = at->vertex;
  j["axes"] = at->axes;
  return j;
}

}  // namespace

ordered_json checks_json(const NetDiagnostics& d) {
  ordered_json list = ordered_json::array();
  for (const auto& c : d.checks) {
    ordered_json j;
    j["name"] = c.name;
    j["max"] = c.max;
    j["tolerance"] = c.tolerance;
    j["evaluated"] = c.evaluated;
    j["degenerate"] = c.degenerate;
    j["passed"] = c.passed();
    j["first_failure"] = location_json(c.first_failure);
    list.push_back(std::move(j));
  }
  ordered_json out;
  out["passed"] = d.passed();
  if (const CheckResult* f = d.first_failure()) {
    ordered_json ff = location_json(f->first_failure);
    ff["check"] = f->name;
    out["first_failure"] = std::move(ff);
  } else {
    out["first_failure"] = nullptr;
  }
  out["checks"] = std::move(list);
  return out;
}

ordered_json completion_json(const CompletionReport& r, const Lattice& lat) {
  ordered_json j;
  j["cells"] = r.cells.size();
  j["max_circle_residual"] = r.max_circle_residual;
  j["max_sphere_residual"] = r.max_sphere_residual;
  j["multiply_determined"] = r.discrepancies.size();
  j["max_discrepancy"] = r.max_discrepancy;
  j["soft_violations"] = r.soft_violations;
  j["degenerate_edges"] = r.degenerate_edges;
  j["flipped_spheres"] = r.flipped_spheres;
  j["euclidean"] = r.euclidean;
  ordered_json worst = nullptr;
  if (!r.discrepancies.empty()) {
    const auto it = std::max_element(r.discrepancies.begin(), r.discrepancies.end(),
                                     [](const Discrepancy& a, const Discrepancy& b) {
                                       return a.distance < b.distance;
                                     });
    worst = ordered_json::object();
    worst["vertex"] = lat.multi_index(it->vertex);
    worst["axes"] = it->axes;
    worst["companion"] = it->companion;
    worst["distance"] = it->distance;
  }
  j["worst_discrepancy"] = std::move(worst);
  return j;
}

std::string render_checks(const NetDiagnostics& d) {
  std::string out;
  char buf[160];
  for (const auto& c : d.checks) {
    std::snprintf(buf, sizeof buf, "  %-26s max %.3e  tol %.1e  evaluated %6zu  degenerate %4zu  %s\n",
                  c.name.c_str(), c.max, c.tolerance, c.evaluated, c.degenerate,
                  c.passed() ? "PASS" : "FAIL");
    out += buf;
  }
  if (const CheckResult* f = d.first_failure()) {
    out += "first failure: " + f->name + " at " + render_location(*f->first_failure) + "\n";
  }
  return out;
}

}  // namespace ribnet::cli
