#include "ribnet/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ribnet/errors.hpp"
#include "ribnet/subspace.hpp"

namespace ribnet {
namespace {

std::string where(const Lattice& lat, std::size_t v) {
  std::ostringstream os;
  os << '(';
  const MultiIndex t = lat.multi_index(v);
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

Multivector unit(const Multivector& v) { return v / v.norm(); }

double face_residual(const Multivector& a, const Multivector& b, const Multivector& c,
                     const Multivector& d) {
  const Multivector q[] = {unit(a), unit(b), unit(c), unit(d)};
  return wedge_residual(q);
}

using PointStore = std::vector<std::optional<ConformalPoint>>;

void check_faces(const Lattice& lat, const PointStore& pts, double tol, const char* net) {
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    for (int i = 0; i < lat.dim(); ++i) {
      for (int j = i + 1; j < lat.dim(); ++j) {
        const int axes[] = {i, j};
        if (!lat.has_cell(v, axes)) continue;
        const auto cv = lat.cell_vertices(v, axes);
        if (!(pts[cv[0]] && pts[cv[1]] && pts[cv[2]] && pts[cv[3]])) continue;
        const double r =
            face_residual(pts[cv[0]]->vec(), pts[cv[1]]->vec(), pts[cv[3]]->vec(), pts[cv[2]]->vec());
        if (r > tol) {
          throw InconsistentData(std::string("initial ") + net + " face at " + where(lat, v) +
                                 " axes (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") is not concircular (residual " + std::to_string(r) + ")");
        }
      }
    }
  }
}

// Fills one point store in place and appends to the report.
void fill_points(const Lattice& lat, PointStore& pts, bool companion,
                 const CompletionOptions& opts, CompletionReport& report) {
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    const std::vector<int> sup = lat.support(v);
    if (sup.size() < 3) continue;
    std::optional<ConformalPoint> value = pts[v];
    for (const auto& pick : axis_subsets(static_cast<int>(sup.size()), 3)) {
      const std::array<int, 3> axes{sup[static_cast<std::size_t>(pick[0])],
                                    sup[static_cast<std::size_t>(pick[1])],
                                    sup[static_cast<std::size_t>(pick[2])]};
      const std::size_t base = v - lat.stride(axes[0]) - lat.stride(axes[1]) - lat.stride(axes[2]);
      const auto cv = lat.cell_vertices(base, axes);
      std::vector<ConformalPoint> seven;
      seven.reserve(7);
      for (std::size_t p = 0; p < 7; ++p) seven.push_back(*pts[cv[p]]);
      Cell3 cell;
      try {
        cell = complete_cell(seven, opts);
      } catch (const DegenerateConfiguration& e) {
        throw DegenerateConfiguration(std::string(e.what()) + " (cell completing vertex " +
                                      where(lat, v) + ")");
      } catch (const InconsistentData& e) {
        throw InconsistentData(std::string(e.what()) + " (cell completing vertex " +
                               where(lat, v) + ")");
      }
      report.add(CellCompletion{v, axes, companion, cell.circle_residual, cell.sphere_residual});
      if (!value) {
        value = cell.point;
        continue;
      }
      const double d = projective_distance(value->vec(), cell.point.vec());
      report.add(Discrepancy{v, axes, companion, d}, opts.soft_tol);
      if (d > opts.hard_tol) {
        throw InconsistentData("vertex " + where(lat, v) + " is determined inconsistently (" +
                               std::to_string(d) + ")");
      }
    }
    pts[v] = value;
  }
}

bool all_infinite(const PointStore& pts) {
  for (const auto& p : pts) {
    if (p && !p->is_infinite()) return false;
  }
  return true;
}

}  // namespace

void CompletionReport::add(const CellCompletion& c) {
  cells.push_back(c);
  max_circle_residual = std::max(max_circle_residual, c.circle_residual);
  max_sphere_residual = std::max(max_sphere_residual, c.sphere_residual);
}

void CompletionReport::add(const Discrepancy& d, double soft_tol) {
  discrepancies.push_back(d);
  max_discrepancy = std::max(max_discrepancy, d.distance);
  if (d.distance > soft_tol) ++soft_violations;
}

void InitialData::validate(const CompletionOptions& opts) const {
  const Algebra& alg = Algebra::get(n);
  if (F.size() != lattice.vertex_count()) {
    throw std::invalid_argument("initial data size does not match the lattice");
  }
  if (has_companion() && Fhat.size() != F.size()) {
    throw std::invalid_argument("companion data size does not match the lattice");
  }
  auto check_point = [&](const std::optional<ConformalPoint>& p, std::size_t v, const char* net) {
    if (p) {
      if (&p->algebra() != &alg) throw AlgebraMismatch("initial data point in another algebra");
      return;
    }
    if (lattice.support(v).size() <= 2) {
      throw std::invalid_argument(std::string("initial data misses ") + net + " at " +
                                  where(lattice, v));
    }
  };
  for (std::size_t v = 0; v < F.size(); ++v) {
    check_point(F[v], v, "F");
    if (has_companion()) check_point(Fhat[v], v, "F^");
  }
  check_faces(lattice, F, opts.input_tol, "F");
  if (has_companion()) check_faces(lattice, Fhat, opts.input_tol, "F^");
}

InitialData initial_data_from_net(const PairNet& net, bool with_companion, int k) {
  InitialData init;
  init.n = net.n;
  init.lattice = net.lattice;
  init.F.resize(net.lattice.vertex_count());
  if (with_companion) init.Fhat.resize(net.lattice.vertex_count());
  for (std::size_t v = 0; v < net.lattice.vertex_count(); ++v) {
    if (static_cast<int>(net.lattice.support(v).size()) > k) continue;
    init.F[v] = net.F[v];
    if (with_companion) init.Fhat[v] = net.Fhat[v];
  }
  if (net.has_frames()) init.origin_frame = net.frames.front();
  return init;
}

Cell3 complete_cell(std::span<const ConformalPoint> seven, const CompletionOptions& opts) {
  if (seven.size() != 7) throw std::invalid_argument("complete_cell needs seven points");
  std::vector<Multivector> p;
  p.reserve(8);
  for (const auto& q : seven) p.push_back(unit(q.vec()));
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = i + 1; j < 7; ++j) {
      if (projective_distance(p[i], p[j]) <= 1e-12) {
        throw DegenerateConfiguration("cell points " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
      }
    }
  }
  const int faces[3][4] = {{0, 1, 3, 2}, {0, 1, 5, 4}, {0, 2, 6, 4}};
  for (const auto& f : faces) {
    if (face_residual(p[f[0]], p[f[1]], p[f[2]], p[f[3]]) > opts.input_tol) {
      throw DegenerateConfiguration("cell face is not concircular");
    }
  }
  auto circle = [&](int a, int b, int c) {
    const Multivector pts[] = {p[a], p[b], p[c]};
    auto s = sphere_through(std::span<const Multivector>(pts));
    if (!s) throw DegenerateConfiguration("three cell points are dependent");
    return *s;
  };
  const SphereBlade c1 = circle(1, 3, 5);
  const SphereBlade c2 = circle(2, 3, 6);
  const SphereBlade c3 = circle(4, 5, 6);
  const CircleIntersection meet = circle_intersect(c1, c2);
  if (std::holds_alternative<Disjoint>(meet)) {
    throw InconsistentData("cell circles do not meet");
  }
  if (std::holds_alternative<TangentPoint>(meet)) {
    throw DegenerateConfiguration("cell circles are tangent");
  }
  const PointPair& pair = std::get<PointPair>(meet);
  const double ra = incidence_residual(pair.first.vec(), c3);
  const double rb = incidence_residual(pair.second.vec(), c3);
  if (std::max(ra, rb) <= opts.soft_tol) {
    throw DegenerateConfiguration("both circle intersections lie on the third circle");
  }
  const ConformalPoint& chosen = ra <= rb ? pair.first : pair.second;
  const double on_c3 = std::min(ra, rb);
  if (on_c3 > opts.hard_tol) {
    throw InconsistentData("the three cell circles have no common point (residual " +
                           std::to_string(on_c3) + ")");
  }
  Cell3 out;
  out.point = chosen.normalized();
  const Multivector x = unit(out.point.vec());
  out.circle_residual =
      std::max({incidence_residual(x, c1), incidence_residual(x, c2), on_c3});
  p.push_back(x);
  const int n = chosen.algebra().n();
  if (n >= 3) {
    const Multivector base[] = {p[0], p[1], p[2], p[4]};
    if (auto sphere = sphere_through(std::span<const Multivector>(base))) {
      for (const auto& q : p) out.sphere_residual = std::max(out.sphere_residual, incidence_residual(q, *sphere));
    }
  }
  return out;
}

ConformalPoint complete_cell_3d(std::span<const ConformalPoint> seven,
                                const CompletionOptions& opts) {
  return complete_cell(seven, opts).point;
}

FillResult fill_lattice(const InitialData& init, const CompletionOptions& opts) {
  init.validate(opts);
  FillResult out;
  PointStore pts = init.F;
  fill_points(init.lattice, pts, false, opts, out.report);
  out.net.lattice = init.lattice;
  out.net.n = init.n;
  out.net.F.reserve(pts.size());
  for (auto& p : pts) out.net.F.push_back(std::move(*p));
  return out;
}

FillResult fill_pair_lattice(const InitialData& init, const CompletionOptions& opts) {
  if (!init.has_companion()) throw std::invalid_argument("pair filling needs F^ data");
  init.validate(opts);
  const Lattice& lat = init.lattice;
  require_net_dims(lat.dim(), init.n);

  // Pair conditions on the given data: edge quadruples concircular and
  // corresponding faces on a common 2-sphere.
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    for (int j = 0; j < lat.dim(); ++j) {
      if (!lat.has_edge(v, j)) continue;
      const std::size_t w = lat.shift(v, j);
      if (!(init.F[v] && init.F[w] && init.Fhat[v] && init.Fhat[w])) continue;
      const double r = face_residual(init.F[v]->vec(), init.F[w]->vec(), init.Fhat[w]->vec(),
                                     init.Fhat[v]->vec());
      if (r > opts.input_tol) {
        throw InconsistentData("pair condition violated: edge quadruple at " + where(lat, v) +
                               " axis " + std::to_string(j) + " is not concircular (residual " +
                               std::to_string(r) + ")");
      }
    }
  }

  FillResult out;
  PointStore F = init.F;
  fill_points(lat, F, false, opts, out.report);
  PairNet& net = out.net;
  net.lattice = lat;
  net.n = init.n;
  for (auto& p : F) net.F.push_back(std::move(*p));

  const Algebra& alg = Algebra::get(init.n);
  if (all_infinite(init.Fhat)) {
    net.euclidean = true;
    net.Fhat.assign(net.F.size(), ConformalPoint::from_vector(alg.einf()));
  } else {
    PointStore H = init.Fhat;
    fill_points(lat, H, true, opts, out.report);
    for (auto& p : H) net.Fhat.push_back(std::move(*p));
  }
  out.report.euclidean = net.euclidean;

  // Pair cells of the filled nets: each face pair on a 2-sphere.
  if (init.n >= 3) {
    for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
      for (int i = 0; i < lat.dim(); ++i) {
        for (int j = i + 1; j < lat.dim(); ++j) {
          const int axes[] = {i, j};
          if (!lat.has_cell(v, axes)) continue;
          const CellSphereReport r = cell_sphere_check(net, v, axes, CellNet::kPair);
          if (!r.degenerate() && r.residual > opts.hard_tol) {
            throw InconsistentData("pair condition violated: face pair at " + where(lat, v) +
                                   " axes (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") is not on a 2-sphere");
          }
        }
      }
    }
  }

  // Edge spheres from the points on the coordinate planes only; the rest
  // are completed at sphere level, which keeps rounding from the point fill
  // out of the frames.
  EdgeField spheres(lat.edge_slot_count());
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    for (int j = 0; j < lat.dim(); ++j) {
      if (!lat.has_edge(v, j)) continue;
      const std::size_t w = lat.shift(v, j);
      if (lat.support(w).size() > 2) continue;
      try {
        spheres[lat.edge_slot(v, j)] = recover_edge_sphere(net.F[v].vec(), net.F[w].vec(),
                                                           net.Fhat[v].vec(), net.Fhat[w].vec(),
                                                           opts.input_tol);
      } catch (const DegenerateConfiguration& e) {
        throw DegenerateConfiguration(std::string(e.what()) + " at edge " + where(lat, v) +
                                      " axis " + std::to_string(j));
      }
    }
  }
  complete_sphere_field(lat, spheres);
  const Versor origin = init.origin_frame ? *init.origin_frame
                                          : adapted_frame(net.F.front().vec(), net.Fhat.front().vec());
  FrameIntegration integ =
      frame_from_edge_spheres(lat, spheres, origin, SignPolicy::kResolve, opts.input_tol);
  out.report.flipped_spheres = integ.flipped;
  net.edge_spheres = std::move(integ.spheres);
  net.frames = std::move(integ.frames);
  net.edge_vectors.assign(lat.edge_slot_count(), Multivector());
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    for (int j = 0; j < lat.dim(); ++j) {
      if (!lat.has_edge(v, j)) continue;
      const Multivector s = edge_vector_from_frames(net.frames[v], net.frames[lat.shift(v, j)], j);
      if (!edge_cross_ratio_closed_form(s)) ++out.report.degenerate_edges;
      net.edge_vectors[lat.edge_slot(v, j)] = s;
    }
  }
  return out;
}

EuclideanPoint point_by_cross_ratio(const EuclideanPoint& x1, const EuclideanPoint& x2,
                                    const EuclideanPoint& x4, double q) {
  const EuclideanPoint d2 = x2 - x1;
  const EuclideanPoint d4 = x4 - x1;
  const double l2 = d2.norm();
  if (l2 == 0.0 || d4.norm() == 0.0 || (x4 - x2).norm() == 0.0) {
    throw DegenerateConfiguration("cross-ratio construction needs three distinct points");
  }
  const EuclideanPoint u = d2 / l2;
  EuclideanPoint w = d4 - d4.dot(u) * u;
  if (w.norm() <= 1e-14 * d4.norm()) {
    Eigen::Index k = 0;
    u.cwiseAbs().minCoeff(&k);
    w = EuclideanPoint::Unit(u.size(), k);
    w -= w.dot(u) * u;
  }
  w.normalize();
  using C = std::complex<double>;
  const C z1(0.0, 0.0), z2(l2, 0.0), z4(d4.dot(u), d4.dot(w));
  // q (z2 - z3)(z4 - z1) = (z1 - z2)(z3 - z4), solved for z3.
  const C denom = (z1 - z2) + q * (z4 - z1);
  if (std::abs(denom) <= 1e-14 * (std::abs(z2) + std::abs(z4))) {
    throw DegenerateConfiguration("cross-ratio construction puts the point at infinity");
  }
  const C z3 = (q * (z4 - z1) * z2 + (z1 - z2) * z4) / denom;
  return x1 + z3.real() * u + z3.imag() * w;
}

HypercubeResult hypercube_fill(int k, int i, int n,
                               const std::vector<std::optional<ConformalPoint>>& data,
                               std::span<const double> face_parameters,
                               const CompletionOptions& opts) {
  if (k < 2 || i < 1 || i > k) throw std::invalid_argument("hypercube_fill needs 1 <= i <= k, k >= 2");
  const Lattice lat(std::vector<int>(static_cast<std::size_t>(k), 2));
  if (data.size() != lat.vertex_count()) throw std::invalid_argument("hypercube data size mismatch");
  PointStore pts(lat.vertex_count());
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    const int order = static_cast<int>(lat.support(v).size());
    if (order <= i) {
      if (!data[v]) throw std::invalid_argument("hypercube data misses vertex " + where(lat, v));
      pts[v] = data[v];
    } else if (data[v]) {
      pts[v] = data[v];
    }
  }
  if (i == 1) {
    const auto pairs = axis_subsets(k, 2);
    if (face_parameters.size() != pairs.size()) {
      throw std::invalid_argument("i = 1 needs one parameter per 2-cell through the origin");
    }
    for (std::size_t f = 0; f < pairs.size(); ++f) {
      const int a = pairs[f][0], b = pairs[f][1];
      const std::size_t va = lat.stride(a), vb = lat.stride(b);
      const auto x1 = project(*pts[0]), x2 = project(*pts[va]), x4 = project(*pts[vb]);
      if (!std::holds_alternative<EuclideanPoint>(x1) || !std::holds_alternative<EuclideanPoint>(x2) ||
          !std::holds_alternative<EuclideanPoint>(x4)) {
        throw DegenerateConfiguration("the face parameter needs finite points");
      }
      const EuclideanPoint x3 = point_by_cross_ratio(std::get<EuclideanPoint>(x1), std::get<EuclideanPoint>(x2),
                                                     std::get<EuclideanPoint>(x4), face_parameters[f]);
      pts[va + vb] = lift(Algebra::get(n), x3);
    }
  }
  InitialData init;
  init.n = n;
  init.lattice = lat;
  init.F = std::move(pts);
  FillResult filled = fill_lattice(init, opts);
  HypercubeResult out{std::move(filled.net), std::move(filled.report), 0.0};
  for (const auto& axes : axis_subsets(k, 2)) {
    for (std::size_t base : lat.cell_bases(axes)) {
      const auto cv = lat.cell_vertices(base, axes);
      out.max_face_residual = std::max(
          out.max_face_residual, face_residual(out.net.F[cv[0]].vec(), out.net.F[cv[1]].vec(),
                                               out.net.F[cv[3]].vec(), out.net.F[cv[2]].vec()));
    }
  }
  return out;
}

CellSpheres complete_cell_spheres(const EdgeField& S, const Lattice& lat, std::size_t w, int a,
                                  int b, int c) {
  auto at = [&](std::size_t v, int axis) -> const Multivector& {
    const Multivector& s = S[lat.edge_slot(v, axis)];
    if (!s.valid()) throw std::invalid_argument("sphere-level completion misses an edge sphere");
    return s;
  };
  const std::size_t wa = lat.shift(w, a), wb = lat.shift(w, b);
  const Multivector span_ac[] = {at(wb, a), at(wb, c)};
  const Multivector span_bc[] = {at(wa, b), at(wa, c)};
  const Eigen::MatrixXd A = column_basis(to_matrix(span_ac), 2);
  const Eigen::MatrixXd B = column_basis(to_matrix(span_bc), 2);
  Multivector u = from_column(S[lat.edge_slot(w, a)].algebra(), intersect_spans(A, B, 1).col(0));
  const double q = minkowski_inner(u, u);
  if (!(q > 1e-12 * u.norm() * u.norm())) {
    throw DegenerateConfiguration("sphere-level cell completion gives no real sphere");
  }
  u = align_sign(u / std::sqrt(q), at(wa, c));
  CellSpheres out;
  out.c = u;
  out.a = (at(wb, c) * at(wb, a) * u).grade(1);
  out.b = (at(wa, c) * at(wa, b) * u).grade(1);
  return out;
}

void complete_sphere_field(const Lattice& lat, EdgeField& S) {
  auto unit_sphere = [](const Multivector& s) {
    const double q = minkowski_inner(s, s);
    if (!(q > 0)) throw DegenerateConfiguration("sphere-level completion gives no real sphere");
    return s / std::sqrt(q);
  };
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    const std::vector<int> sup = lat.support(v);
    if (sup.size() < 3) continue;
    const int a = sup[0], b = sup[1], c = sup.back();
    const std::size_t w = v - lat.stride(a) - lat.stride(b) - lat.stride(c);
    const CellSpheres cell = complete_cell_spheres(S, lat, w, a, b, c);
    S[lat.edge_slot(v - lat.stride(a), a)] = unit_sphere(cell.a);
    S[lat.edge_slot(v - lat.stride(b), b)] = unit_sphere(cell.b);
    S[lat.edge_slot(v - lat.stride(c), c)] = unit_sphere(cell.c);
    // Remaining axes by the face rule with c.
    for (std::size_t k = 2; k + 1 < sup.size(); ++k) {
      const int i = sup[k];
      const std::size_t q = v - lat.stride(i) - lat.stride(c);
      S[lat.edge_slot(v - lat.stride(i), i)] = unit_sphere(
          (S[lat.edge_slot(q, c)] * S[lat.edge_slot(q, i)] * cell.c).grade(1));
    }
  }
}

}  // namespace ribnet
