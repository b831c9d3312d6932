#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ribnet/net.hpp"

namespace ribnet {

struct VerifyOptions {
  double face_tol = 1e-8;         // r4norm / max(1, |r0|) of faces and edge quadruples
  double mc_tol = 1e-10;          // both integrability conditions, scaled
  double symmetry_tol = 1e-10;    // edge-sphere orderings, scaled
  double frame_tol = 1e-8;        // nets against frames, projective
  double cross_ratio_tol = 1e-8;  // closed forms against direct evaluation, relative
  double cell_tol = 1e-8;         // cell spheres, normalised incidence
  int max_cell_dim = 3;
};

// Options derived from one tolerance: geometric checks use tol, the
// algebraic ones (integrability, symmetry) tol / 100.
VerifyOptions scaled_options(double tol);

struct Location {
  MultiIndex vertex;
  std::vector<int> axes;
};

struct CheckResult {
  std::string name;
  double max = 0.0;
  double tolerance = 0.0;
  std::size_t evaluated = 0;
  std::size_t degenerate = 0;
  std::optional<Location> first_failure;

  bool passed() const { return !first_failure.has_value(); }
  void record(double value, const Location& where);
};

struct NetDiagnostics {
  std::vector<CheckResult> checks;
  bool passed() const;
  const CheckResult* find(const std::string& name) const;
  // First failing check in report order, with its location.
  const CheckResult* first_failure() const;
};

// Runs every check that the data in `net` supports.
NetDiagnostics verify_net(const PairNet& net, const VerifyOptions& opts = {});

}  // namespace ribnet
