#include "ribnet/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ribnet/errors.hpp"

namespace ribnet {
namespace {

double scaled_r4(const CrossRatioValue& r) { return r.r4norm / std::max(1.0, std::abs(r.r0)); }

double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

Location at(const Lattice& lat, std::size_t v, std::vector<int> axes) {
  return Location{lat.multi_index(v), std::move(axes)};
}

}  // namespace

VerifyOptions scaled_options(double tol) {
  VerifyOptions o;
  o.face_tol = o.frame_tol = o.cross_ratio_tol = o.cell_tol = tol;
  o.mc_tol = o.symmetry_tol = tol / 100.0;
  return o;
}

void CheckResult::record(double value, const Location& where) {
  ++evaluated;
  max = std::max(max, value);
  if (!(value <= tolerance) && !first_failure) first_failure = where;
}

bool NetDiagnostics::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const CheckResult* NetDiagnostics::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const CheckResult* NetDiagnostics::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed()) return &c;
  }
  return nullptr;
}

NetDiagnostics verify_net(const PairNet& net, const VerifyOptions& opts) {
  const Lattice& lat = net.lattice;
  const int m = lat.dim();
  const bool pair = !net.Fhat.empty();
  NetDiagnostics out;
  out.checks.reserve(24);  // check() hands out references into this vector
  auto check = [&](const std::string& name, double tol) -> CheckResult& {
    out.checks.push_back(CheckResult{name, 0.0, tol, 0, 0, std::nullopt});
    return out.checks.back();
  };
  auto faces = [&](auto&& fn) {
    for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          const int axes[] = {i, j};
          if (lat.has_cell(v, axes)) fn(v, i, j);
        }
      }
    }
  };
  auto edges = [&](auto&& fn) {
    for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
      for (int j = 0; j < m; ++j) {
        if (lat.has_edge(v, j)) fn(v, j, lat.shift(v, j));
      }
    }
  };

  auto face_concircularity = [&](const std::vector<ConformalPoint>& P, const std::string& name) {
    CheckResult& c = check(name, opts.face_tol);
    faces([&](std::size_t v, int i, int j) {
      const std::size_t vi = lat.shift(v, i), vj = lat.shift(v, j), vij = lat.shift(vi, j);
      try {
        c.record(scaled_r4(cross_ratio(P[v], P[vi], P[vij], P[vj])), at(lat, v, {i, j}));
      } catch (const DegenerateConfiguration&) {
        ++c.degenerate;
      }
    });
  };
  face_concircularity(net.F, "face_concircularity_F");
  if (pair && !net.euclidean) face_concircularity(net.Fhat, "face_concircularity_Fhat");

  if (pair) {
    CheckResult& c = check("edge_concircularity", opts.face_tol);
    edges([&](std::size_t v, int j, std::size_t w) {
      const Multivector quad[] = {net.Fhat[v].vec() / net.Fhat[v].vec().norm(),
                                  net.F[v].vec() / net.F[v].vec().norm(),
                                  net.F[w].vec() / net.F[w].vec().norm(),
                                  net.Fhat[w].vec() / net.Fhat[w].vec().norm()};
      c.record(wedge_residual(quad), at(lat, v, {j}));
    });
  }

  if (net.has_frames()) {
    const Algebra& alg = net.algebra();
    CheckResult& unit = check("frame_unit", opts.mc_tol);
    CheckResult& cons = check("frame_consistency", opts.frame_tol);
    for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
      const Versor& phi = net.frames[v];
      const double scale = phi.mv().norm() * phi.mv().norm();
      unit.record(phi.even() && phi.norm_sign() > 0 ? phi.unit_residual() / scale : 1.0, at(lat, v, {}));
      double d = projective_distance(phi.apply(alg.e0()).grade(1), net.F[v].vec());
      if (pair) d = std::max(d, projective_distance(phi.apply(alg.einf()).grade(1), net.Fhat[v].vec()));
      cons.record(d, at(lat, v, {}));
    }
    CheckResult& sym = check("edge_symmetry", opts.symmetry_tol);
    CheckResult& refl = check("edge_reflection", opts.frame_tol);
    edges([&](std::size_t v, int j, std::size_t w) {
      const EdgeSphereValue e = edge_sphere_value(net.frames[v], net.frames[w], j);
      sym.record(std::max(e.asymmetry.scaled, e.non_vector), at(lat, v, {j}));
      const Multivector& S = e.sphere;
      double d = projective_distance((S * net.F[v].vec() * S).grade(1), net.F[w].vec());
      if (pair) {
        d = std::max(d, projective_distance((S * net.Fhat[v].vec() * S).grade(1), net.Fhat[w].vec()));
      }
      refl.record(d, at(lat, v, {j}));
    });
  }

  if (net.has_edge_vectors()) {
    const auto& s = net.edge_vectors;
    CheckResult& mc = check("mc_frame", opts.mc_tol);
    faces([&](std::size_t v, int i, int j) {
      const Residual r = mc_residual_face(s[lat.edge_slot(v, i)], s[lat.edge_slot(v, j)],
                                          s[lat.edge_slot(lat.shift(v, j), i)],
                                          s[lat.edge_slot(lat.shift(v, i), j)], i, j);
      mc.record(r.scaled, at(lat, v, {i, j}));
    });
    if (pair) {
      CheckResult& ec = check("edge_cross_ratio", opts.cross_ratio_tol);
      edges([&](std::size_t v, int j, std::size_t w) {
        const auto closed = edge_cross_ratio_closed_form(s[lat.edge_slot(v, j)]);
        if (!closed) {
          ++ec.degenerate;
          return;
        }
        try {
          const CrossRatioValue direct = cross_ratio(net.Fhat[v], net.F[v], net.F[w], net.Fhat[w]);
          ec.record(relative_error(*closed, direct.r0), at(lat, v, {j}));
        } catch (const DegenerateConfiguration&) {
          ++ec.degenerate;
        }
      });
    }
    CheckResult& fc = check("face_cross_ratio", opts.cross_ratio_tol);
    faces([&](std::size_t v, int i, int j) {
      const std::size_t vi = lat.shift(v, i), vj = lat.shift(v, j), vij = lat.shift(vi, j);
      const auto closed = face_cross_ratio_closed_form(s[lat.edge_slot(v, i)], s[lat.edge_slot(vj, i)],
                                                       s[lat.edge_slot(v, j)], s[lat.edge_slot(vi, j)]);
      if (!closed) {
        ++fc.degenerate;
        return;
      }
      try {
        const CrossRatioValue direct = cross_ratio(net.F[v], net.F[vi], net.F[vij], net.F[vj]);
        fc.record(relative_error(*closed, direct.r0), at(lat, v, {i, j}));
      } catch (const DegenerateConfiguration&) {
        ++fc.degenerate;
      }
    });
  }

  if (net.has_edge_spheres()) {
    const auto& S = net.edge_spheres;
    CheckResult& mc = check("mc_sphere", opts.mc_tol);
    CheckResult& rank = check("mc_sphere_rank", 2.0);
    faces([&](std::size_t v, int i, int j) {
      const SphereFaceResidual r =
          mc_residual_spheres(S[lat.edge_slot(v, i)], S[lat.edge_slot(lat.shift(v, i), j)],
                              S[lat.edge_slot(v, j)], S[lat.edge_slot(lat.shift(v, j), i)]);
      mc.record(r.residual.scaled, at(lat, v, {i, j}));
      rank.record(r.span_rank, at(lat, v, {i, j}));
    });
    if (net.euclidean) {
      CheckResult& planes = check("euclidean_planes", opts.mc_tol);
      const Multivector einf = net.algebra().einf();
      edges([&](std::size_t v, int j, std::size_t) {
        const Multivector& s = S[lat.edge_slot(v, j)];
        planes.record((s * einf + einf * s).norm() / s.norm(), at(lat, v, {j}));
      });
    }
  }

  if (net.euclidean) {
    CheckResult& chart = check("chart_normalizable", 0.0);
    for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
      chart.record(net.F[v].is_infinite() ? 1.0 : 0.0, at(lat, v, {}));
    }
  }

  const int top = std::min(m, opts.max_cell_dim);
  auto cells = [&](CellNet which, int kmin, int kmax, const std::string& name) {
    CheckResult& c = check(name, opts.cell_tol);
    for (int k = kmin; k <= kmax; ++k) {
      for (const auto& axes : axis_subsets(m, k)) {
        for (std::size_t base : lat.cell_bases(axes)) {
          const CellSphereReport r = cell_sphere_check(net, base, axes, which);
          if (r.degenerate()) {
            ++c.degenerate;
          } else {
            c.record(r.residual, at(lat, base, axes));
          }
        }
      }
    }
  };
  if (m >= 3) cells(CellNet::kF, 3, top, "cell_sphere_F");
  if (pair && !net.euclidean && m >= 3) cells(CellNet::kFhat, 3, top, "cell_sphere_Fhat");
  // A pair k-cell with k = n spans all of space.
  if (pair) cells(CellNet::kPair, 2, std::min(top, net.n - 1), "cell_sphere_pair");

  if (pair && net.has_frames() && net.has_edge_vectors() && m < net.n) {
    CheckResult& c = check("ribaucour_congruence", opts.cell_tol);
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) all[static_cast<std::size_t>(j)] = j;
    for (std::size_t base : lat.cell_bases(all)) {
      const SphereBlade blade = ribaucour_congruence(net, base);
      double worst = 0.0;
      for (std::size_t v : lat.cell_vertices(base, all)) {
        worst = std::max(worst, incidence_residual(net.F[v].vec(), blade));
        worst = std::max(worst, incidence_residual(net.Fhat[v].vec(), blade));
      }
      c.record(worst, at(lat, base, all));
    }
  }
  return out;
}

}  // namespace ribnet
