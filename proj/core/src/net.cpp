#include "ribnet/net.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ribnet/errors.hpp"
#include "ribnet/subspace.hpp"

namespace ribnet {
namespace {

std::string format_index(const MultiIndex& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

void require_unit_spacelike(const Multivector& s, const char* what) {
  require_grade(s, 1, what);
  const double q = minkowski_inner(s, s);
  if (std::abs(q - 1.0) > 1e-9 * std::max(1.0, s.norm() * s.norm())) {
    throw std::invalid_argument(std::string(what) + ": vector is not a unit sphere (s^2 != -1)");
  }
}

Multivector unit(const Multivector& v) { return v / v.norm(); }

// Axis through which the spanning tree reaches a vertex: its first nonzero axis.
int tree_axis(const Lattice& lattice, std::size_t v) {
  for (int a = 0; a < lattice.dim(); ++a) {
    if (lattice.coordinate(v, a) != 0) return a;
  }
  return -1;
}

Multivector sphere_between(const Versor& phi_t, const Versor& phi_next, int axis) {
  const Multivector ej = axis_generator(phi_t.algebra(), axis);
  return (phi_t.inverse().mv() * ej * phi_next.mv()).grade(1);
}

}  // namespace

Multivector axis_generator(const Algebra& alg, int axis) { return alg.e(axis + 1); }

void require_net_dims(int m, int n) {
  if (m < 1 || m > n) {
    throw std::invalid_argument("net dimension m must satisfy 1 <= m <= n (got m=" +
                                std::to_string(m) + ", n=" + std::to_string(n) + ")");
  }
}

Versor propagate_frame(const Versor& phi, const Multivector& s, int axis) {
  require_unit_spacelike(s, "propagate_frame");
  const Multivector ej = axis_generator(phi.algebra(), axis);
  return Versor::from_multivector(ej * s * phi.mv());
}

SpinFrameField integrate_edge_vectors(const Lattice& lattice, const EdgeField& s,
                                      const Versor& origin) {
  require_net_dims(lattice.dim(), origin.algebra().n());
  if (s.size() != lattice.edge_slot_count()) {
    throw std::invalid_argument("edge field size does not match the lattice");
  }
  SpinFrameField frames(lattice.vertex_count(), origin);
  for (std::size_t v = 1; v < lattice.vertex_count(); ++v) {
    const int a = tree_axis(lattice, v);
    const std::size_t parent = v - lattice.stride(a);
    const Multivector& edge = s[lattice.edge_slot(parent, a)];
    if (!edge.valid()) throw std::invalid_argument("missing edge vector on a tree edge");
    frames[v] = propagate_frame(frames[parent], edge, a);
  }
  return frames;
}

Multivector edge_vector_from_frames(const Versor& phi_t, const Versor& phi_next, int axis) {
  const Multivector ej = axis_generator(phi_t.algebra(), axis);
  return (-(ej * phi_next.mv() * phi_t.inverse().mv())).grade(1);
}

PairNet nets_from_frames(const Lattice& lattice, SpinFrameField frames, double snap_tol) {
  if (frames.size() != lattice.vertex_count() || frames.empty()) {
    throw std::invalid_argument("frame field size does not match the lattice");
  }
  const Algebra& alg = frames.front().algebra();
  require_net_dims(lattice.dim(), alg.n());
  PairNet net;
  net.lattice = lattice;
  net.n = alg.n();
  net.F.reserve(frames.size());
  net.Fhat.reserve(frames.size());
  const Multivector e0 = alg.e0();
  const Multivector einf = alg.einf();
  bool euclidean = true;
  for (const Versor& phi : frames) {
    net.F.push_back(ConformalPoint::from_vector(phi.apply(e0).grade(1)));
    net.Fhat.push_back(ConformalPoint::from_vector(phi.apply(einf).grade(1)));
    euclidean = euclidean && projective_distance(net.Fhat.back().vec(), einf) <= snap_tol;
  }
  if (euclidean) {
    const ConformalPoint inf = ConformalPoint::from_vector(einf);
    std::fill(net.Fhat.begin(), net.Fhat.end(), inf);
    net.euclidean = true;
  }
  net.edge_vectors.assign(lattice.edge_slot_count(), Multivector());
  net.edge_spheres.assign(lattice.edge_slot_count(), Multivector());
  for (std::size_t v = 0; v < lattice.vertex_count(); ++v) {
    for (int j = 0; j < lattice.dim(); ++j) {
      if (!lattice.has_edge(v, j)) continue;
      const std::size_t w = lattice.shift(v, j);
      net.edge_vectors[lattice.edge_slot(v, j)] = edge_vector_from_frames(frames[v], frames[w], j);
      net.edge_spheres[lattice.edge_slot(v, j)] = sphere_between(frames[v], frames[w], j);
    }
  }
  net.frames = std::move(frames);
  return net;
}

EdgeSphereValue edge_sphere_value(const Versor& phi_t, const Versor& phi_next, int axis) {
  const Multivector ej = axis_generator(phi_t.algebra(), axis);
  const Multivector a = phi_t.inverse().mv() * ej * phi_next.mv();
  const Multivector b = phi_next.inverse().mv() * ej * phi_t.mv();
  EdgeSphereValue out;
  out.sphere = a.grade(1);
  const double scale = std::max(a.norm(), b.norm());
  out.asymmetry.raw = (a - b).norm();
  out.asymmetry.scaled = scale > 0 ? out.asymmetry.raw / scale : 0.0;
  out.non_vector = scale > 0 ? (a - out.sphere).norm() / scale : 0.0;
  return out;
}

Multivector edge_sphere(const Versor& phi_t, const Versor& phi_next, int axis, double rel_tol) {
  EdgeSphereValue v = edge_sphere_value(phi_t, phi_next, axis);
  if (v.asymmetry.scaled > rel_tol || v.non_vector > rel_tol) {
    throw InconsistentData("frames are not related along the edge (asymmetry " +
                           std::to_string(v.asymmetry.scaled) + ")");
  }
  return v.sphere;
}

Residual mc_residual_face(const Multivector& s_i, const Multivector& s_j,
                          const Multivector& s_i_shifted, const Multivector& s_j_shifted,
                          int axis_i, int axis_j) {
  const Algebra& alg = s_i.algebra();
  const Multivector ei = axis_generator(alg, axis_i);
  const Multivector ej = axis_generator(alg, axis_j);
  const Multivector lhs = ej * s_j_shifted * ei * s_i;
  const Multivector rhs = ei * s_i_shifted * ej * s_j;
  Residual r;
  r.raw = (lhs - rhs).norm();
  const double scale = s_i.norm() * s_j.norm() * s_i_shifted.norm() * s_j_shifted.norm();
  r.scaled = scale > 0 ? r.raw / scale : r.raw;
  return r;
}

SphereFaceResidual mc_residual_spheres(const Multivector& S_i, const Multivector& S_j_shifted,
                                       const Multivector& S_j, const Multivector& S_i_shifted,
                                       double rank_tol) {
  const Multivector sum = S_i * S_j_shifted + S_j * S_i_shifted;
  SphereFaceResidual out;
  out.residual.raw = sum.norm();
  const double scale = std::max(S_i.norm() * S_j_shifted.norm(), S_j.norm() * S_i_shifted.norm());
  out.residual.scaled = scale > 0 ? out.residual.raw / scale : out.residual.raw;
  const Multivector cols[] = {unit(S_i), unit(S_j_shifted), unit(S_j), unit(S_i_shifted)};
  out.span_rank = numeric_rank(to_matrix(cols), rank_tol);
  return out;
}

std::optional<double> edge_cross_ratio_closed_form(const Multivector& s, double rel_tol) {
  const Algebra& alg = s.algebra();
  const double a = minkowski_inner(alg.e0(), s);
  const double b = minkowski_inner(alg.einf(), s);
  const double scale = s.norm();
  if (std::abs(a) <= rel_tol * scale || std::abs(b) <= rel_tol * scale) return std::nullopt;
  const double e0_einf = minkowski_inner(alg.e0(), alg.einf());
  return e0_einf / (2.0 * a * b);
}

std::optional<double> face_cross_ratio_closed_form(const Multivector& s_i,
                                                   const Multivector& s_i_shifted,
                                                   const Multivector& s_j,
                                                   const Multivector& s_j_shifted,
                                                   double rel_tol) {
  const Multivector e0 = s_i.algebra().e0();
  const double num = minkowski_inner(e0, s_i) * minkowski_inner(e0, s_i_shifted);
  const double da = minkowski_inner(e0, s_j);
  const double db = minkowski_inner(e0, s_j_shifted);
  if (std::abs(da) <= rel_tol * s_j.norm() || std::abs(db) <= rel_tol * s_j_shifted.norm()) {
    return std::nullopt;
  }
  return -num / (da * db);
}

CellSphereReport cell_sphere_check(const PairNet& net, std::size_t base, std::span<const int> axes,
                                   CellNet which, double generic_tol) {
  const Lattice& lat = net.lattice;
  const int k = static_cast<int>(axes.size());
  if (k < 1 || k > lat.dim()) throw std::invalid_argument("cell dimension out of range");
  if (!lat.has_cell(base, axes)) throw std::invalid_argument("cell leaves the lattice");
  std::vector<Multivector> points;
  for (std::size_t v : lat.cell_vertices(base, axes)) {
    if (which != CellNet::kFhat) points.push_back(unit(net.F[v].vec()));
    if (which != CellNet::kF) points.push_back(unit(net.Fhat[v].vec()));
  }
  const int needed = std::min(which == CellNet::kPair ? k + 2 : k + 1, net.n + 2);
  std::vector<Multivector> chosen;
  for (const Multivector& p : points) {
    if (static_cast<int>(chosen.size()) == needed) break;
    chosen.push_back(p);
    if (chosen.size() > 1 && wedge_residual(chosen) <= generic_tol) chosen.pop_back();
  }
  CellSphereReport report;
  report.generic_points = static_cast<int>(chosen.size());
  if (static_cast<int>(chosen.size()) < needed) return report;
  auto blade = sphere_through(std::span<const Multivector>(chosen), 0.0);
  if (!blade) return report;
  for (const Multivector& p : points) {
    report.residual = std::max(report.residual, incidence_residual(p, *blade));
  }
  report.sphere = std::move(blade);
  return report;
}

SphereBlade ribaucour_congruence(const PairNet& net, std::size_t base) {
  const Lattice& lat = net.lattice;
  const int m = lat.dim();
  if (m >= net.n) throw std::invalid_argument("Ribaucour congruence needs m < n");
  if (!net.has_frames() || !net.has_edge_vectors()) {
    throw std::invalid_argument("Ribaucour congruence needs frames and edge vectors");
  }
  std::vector<int> axes(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) axes[static_cast<std::size_t>(j)] = j;
  if (!lat.has_cell(base, axes)) throw std::invalid_argument("m-cell leaves the lattice");
  const Algebra& alg = net.algebra();
  Multivector blade = alg.e0();
  for (int j = 0; j < m; ++j) {
    const Multivector& s = net.edge_vectors[lat.edge_slot(base, j)];
    if (!s.valid()) throw std::invalid_argument("missing edge vector at the cell");
    blade = blade ^ s;
  }
  blade = blade ^ alg.einf();
  return SphereBlade{net.frames[base].apply(blade), SphereBlade::Form::kTimelike, m};
}

Multivector align_sign(Multivector s, const Multivector& reference) {
  if (minkowski_inner(s, reference) < 0) s *= -1.0;
  return s;
}

Multivector canonical_sign(Multivector s) {
  const double cut = 1e-9 * s.max_abs();
  for (double c : s.coefficients()) {
    if (std::abs(c) > cut) {
      if (c < 0) s *= -1.0;
      break;
    }
  }
  return s;
}

Multivector recover_edge_sphere(const Multivector& Fa, const Multivector& Fb,
                                const Multivector& Fhat_a, const Multivector& Fhat_b,
                                double rel_tol) {
  const Multivector a = unit(Fa), b = unit(Fb), ha = unit(Fhat_a), hb = unit(Fhat_b);
  const Multivector quad[] = {a, b, ha, hb};
  if (wedge_residual(quad) > rel_tol) {
    throw DegenerateConfiguration("edge points are not concircular");
  }
  const bool f_degenerate = projective_distance(a, b) <= rel_tol;
  const bool h_degenerate = projective_distance(ha, hb) <= rel_tol;
  Multivector S;
  if (f_degenerate && h_degenerate) {
    throw DegenerateConfiguration("both edges degenerate; the edge sphere is undetermined");
  } else if (f_degenerate) {
    S = minkowski_inner(hb, a) * ha - minkowski_inner(ha, a) * hb;
  } else if (h_degenerate) {
    S = minkowski_inner(b, ha) * a - minkowski_inner(a, ha) * b;
  } else {
    const Multivector cols[] = {a, b, -ha, -hb};
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_matrix(cols), Eigen::ComputeFullV);
    const Eigen::VectorXd x = svd.matrixV().col(3);
    S = x(0) * a + x(1) * b;
  }
  const double q = minkowski_inner(S, S);
  const double scale = S.norm() * S.norm();
  if (!(scale > 0) || q <= rel_tol * scale) {
    throw DegenerateConfiguration("the point pairs separate each other; no reflecting sphere");
  }
  S /= std::sqrt(q);
  return canonical_sign(std::move(S));
}

EdgeField edge_spheres_from_nets(const PairNet& net, double rel_tol) {
  const Lattice& lat = net.lattice;
  EdgeField out(lat.edge_slot_count());
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    for (int j = 0; j < lat.dim(); ++j) {
      if (!lat.has_edge(v, j)) continue;
      const std::size_t w = lat.shift(v, j);
      Multivector S;
      try {
        S = recover_edge_sphere(net.F[v].vec(), net.F[w].vec(), net.Fhat[v].vec(),
                                net.Fhat[w].vec(), rel_tol);
      } catch (const DegenerateConfiguration& e) {
        throw DegenerateConfiguration(std::string(e.what()) + " at edge " +
                                      format_index(lat.multi_index(v)) + " axis " +
                                      std::to_string(j));
      }
      if (lat.coordinate(v, j) > 0) S = align_sign(std::move(S), out[lat.edge_slot(v - lat.stride(j), j)]);
      out[lat.edge_slot(v, j)] = std::move(S);
    }
  }
  return out;
}

FrameIntegration frame_from_edge_spheres(const Lattice& lattice, const EdgeField& spheres,
                                         const Versor& origin, SignPolicy policy,
                                         double rel_tol) {
  require_net_dims(lattice.dim(), origin.algebra().n());
  if (spheres.size() != lattice.edge_slot_count()) {
    throw std::invalid_argument("edge sphere field size does not match the lattice");
  }
  FrameIntegration out;
  out.spheres = spheres;
  for (std::size_t v = 0; v < lattice.vertex_count(); ++v) {
    for (int j = 0; j < lattice.dim(); ++j) {
      if (lattice.has_edge(v, j)) require_unit_spacelike(spheres[lattice.edge_slot(v, j)], "edge sphere");
    }
  }

  auto check_faces = [&](const EdgeField& S) {
    for (std::size_t v = 0; v < lattice.vertex_count(); ++v) {
      for (int i = 0; i < lattice.dim(); ++i) {
        for (int j = i + 1; j < lattice.dim(); ++j) {
          const int axes[] = {i, j};
          if (!lattice.has_cell(v, axes)) continue;
          const auto r = mc_residual_spheres(S[lattice.edge_slot(v, i)],
                                             S[lattice.edge_slot(lattice.shift(v, i), j)],
                                             S[lattice.edge_slot(v, j)],
                                             S[lattice.edge_slot(lattice.shift(v, j), i)]);
          if (r.residual.scaled > rel_tol) {
            throw InconsistentData("edge spheres admit no frame at face " +
                                   format_index(lattice.multi_index(v)) + " axes (" +
                                   std::to_string(i) + "," + std::to_string(j) +
                                   "), residual " + std::to_string(r.residual.scaled));
          }
        }
      }
    }
  };
  if (policy == SignPolicy::kStrict) check_faces(out.spheres);

  // Each frame is the mean of its predictions along all incoming edges, so
  // rounding does not accumulate along one path. The tree edge fixes the sign.
  const Algebra& alg = origin.algebra();
  out.frames.assign(lattice.vertex_count(), origin);
  for (std::size_t w = 1; w < lattice.vertex_count(); ++w) {
    const int tree = tree_axis(lattice, w);
    auto predict = [&](int j) {
      const std::size_t v = w - lattice.stride(j);
      return -(axis_generator(alg, j) * out.frames[v].mv() * out.spheres[lattice.edge_slot(v, j)]);
    };
    const Multivector reference = predict(tree);
    const double scale = reference.norm();
    Multivector sum = reference;
    for (int j = 0; j < lattice.dim(); ++j) {
      if (j == tree || lattice.coordinate(w, j) == 0) continue;
      Multivector candidate = predict(j);
      const double same = (candidate - reference).norm() / scale;
      const double flipped = (candidate + reference).norm() / scale;
      double closure = same;
      if (policy == SignPolicy::kResolve && flipped < same) {
        out.spheres[lattice.edge_slot(w - lattice.stride(j), j)] *= -1.0;
        candidate *= -1.0;
        ++out.flipped;
        closure = flipped;
      }
      out.max_closure = std::max(out.max_closure, closure);
      if (closure > rel_tol) {
        throw InconsistentData("frame integration does not close at edge " +
                               format_index(lattice.multi_index(w - lattice.stride(j))) + " axis " +
                               std::to_string(j) + ", mismatch " + std::to_string(closure));
      }
      sum += candidate;
    }
    const double norm = std::sqrt(std::abs((sum.reverse() * sum).scalar()));
    out.frames[w] = Versor::from_multivector(sum / norm);
  }
  if (policy == SignPolicy::kResolve) check_faces(out.spheres);
  return out;
}

Multivector future_pointing(const Multivector& p) { return p[1] < 0 ? -p : p; }

Versor adapted_frame(const Multivector& F, const Multivector& Fhat) {
  const Algebra& alg = F.algebra();
  const Multivector f = future_pointing(F);
  const Multivector fh = future_pointing(Fhat);
  const double prod = minkowski_inner(f, fh);
  if (!(prod < -1e-12 * f.norm() * fh.norm())) {
    throw DegenerateConfiguration("adapted frame needs two distinct points");
  }
  // Scale F to its chart representative when finite so the first reflection
  // is between two points of equal weight.
  const double f_e0 = null_basis_coordinates(f).e0;
  const double alpha = f_e0 > 1e-12 * f.norm() ? 1.0 / f_e0 : std::sqrt(-0.5 / prod);
  const double beta = -0.5 / (alpha * prod);
  const Multivector target_a = alpha * f;
  const Multivector target_b = beta * fh;

  std::vector<Multivector> reflections;
  auto reflect = [](const Multivector& s, const Multivector& x) {
    return x - 2.0 * minkowski_inner(x, s) * s;
  };
  auto apply_all = [&](Multivector x) {
    for (const Multivector& s : reflections) x = reflect(s, x);
    return x;
  };
  auto add_reflection = [&](const Multivector& from, const Multivector& to) {
    const Multivector d = from - to;
    if (d.norm() <= 1e-13 * std::max(from.norm(), to.norm())) return;
    const double q = minkowski_inner(d, d);
    if (!(q > 0)) throw DegenerateConfiguration("adapted frame: no reflection between the points");
    reflections.push_back(d / std::sqrt(q));
  };
  add_reflection(alg.e0(), target_a);
  add_reflection(apply_all(alg.einf()), target_b);
  if (reflections.size() % 2 == 1) {
    Multivector u = apply_all(alg.e(1));
    reflections.push_back(u / std::sqrt(minkowski_inner(u, u)));
  }
  if (reflections.empty()) return Versor::identity(alg);
  return Versor::from_vectors(reflections);
}

}  // namespace ribnet
