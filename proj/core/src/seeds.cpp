#include "ribnet/seeds.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ribnet/errors.hpp"

namespace ribnet {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return unit_uniform(engine_()); }
  double symmetric() { return 2.0 * uniform() - 1.0; }

 private:
  std::mt19937_64 engine_;
};

Multivector unit_sphere(const Multivector& s) {
  const double q = minkowski_inner(s, s);
  if (!(q > 0)) throw DegenerateConfiguration("seed produced a non-spacelike edge sphere");
  return s / std::sqrt(q);
}

// A unit vector in span(x, y) at "angle" phi from y; hyperbolic when the span
// is Lorentzian.
Multivector rotate_in_span(const Multivector& y, const Multivector& x, double phi) {
  const Multivector w = x - minkowski_inner(x, y) * y;
  const double q = minkowski_inner(w, w);
  if (std::abs(q) <= 1e-12 * w.norm() * w.norm()) return y;
  if (q > 0) return std::cos(phi) * y + std::sin(phi) * (w / std::sqrt(q));
  return std::cosh(phi) * y + std::sinh(phi) * (w / std::sqrt(-q));
}

}  // namespace

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

FrameSeed seed_grid(int n, const std::vector<int>& extents, std::span<const double> spacings) {
  const Lattice lat(extents);
  require_net_dims(lat.dim(), n);
  if (spacings.size() != static_cast<std::size_t>(lat.dim())) {
    throw std::invalid_argument("seed_grid needs one spacing per axis");
  }
  const Algebra& alg = Algebra::get(n);
  EdgeField s(lat.edge_slot_count());
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    for (int j = 0; j < lat.dim(); ++j) {
      if (!lat.has_edge(v, j)) continue;
      const double beta = spacings[static_cast<std::size_t>(j)];
      if (beta == 0.0) throw std::invalid_argument("grid spacings must be nonzero");
      s[lat.edge_slot(v, j)] = axis_generator(alg, j) + beta * alg.einf();
    }
  }
  FrameSeed seed{lat, integrate_edge_vectors(lat, s, Versor::identity(alg)), {}};
  PairNet net = nets_from_frames(lat, seed.frames);
  seed.edge_spheres = std::move(net.edge_spheres);
  return seed;
}

InitialData seed_random_circular(int n, const std::vector<int>& extents,
                                 const ParameterField& field, std::uint64_t seed) {
  const Lattice lat(extents);
  const Algebra& alg = Algebra::get(n);
  Rng rng(seed);
  std::vector<EuclideanPoint> x(lat.vertex_count());
  std::vector<EuclideanPoint> dir(static_cast<std::size_t>(lat.dim()));
  for (int a = 0; a < lat.dim(); ++a) {
    EuclideanPoint d = EuclideanPoint::Zero(n);
    d(a % n) = 1.0;
    if (a >= n) d((a + 1) % n) = 0.5 * (a / n);
    dir[static_cast<std::size_t>(a)] = d.normalized();
  }
  InitialData init;
  init.n = n;
  init.lattice = lat;
  init.F.resize(lat.vertex_count());
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    const std::vector<int> sup = lat.support(v);
    if (sup.size() > 2) continue;
    if (sup.size() <= 1) {
      EuclideanPoint p = EuclideanPoint::Zero(n);
      if (!sup.empty()) {
        const int a = sup.front();
        p = field.spacing * lat.coordinate(v, a) * dir[static_cast<std::size_t>(a)];
      }
      for (int k = 0; k < n; ++k) p(k) += field.jitter * rng.symmetric();
      x[v] = p;
    } else {
      const std::size_t vi = v - lat.stride(sup[1]);  // base + t_i
      const std::size_t vj = v - lat.stride(sup[0]);  // base + t_j
      const std::size_t base = vi - lat.stride(sup[0]);
      const double q = field.cross_ratio * (1.0 + field.spread * rng.symmetric());
      x[v] = point_by_cross_ratio(x[base], x[vi], x[vj], q);
    }
    init.F[v] = lift(alg, x[v]);
  }
  return init;
}

namespace {

FrameSeed random_frames_attempt(int n, const std::vector<int>& extents,
                                const RandomFrameOptions& opts, Rng& rng) {
  const Lattice lat(extents);
  const int m = lat.dim();
  const Algebra& alg = Algebra::get(n);
  const double amp = opts.amplitude;
  // Unit-size picture keeps the frame coefficients of order one.
  const double h = 1.0 / std::max(1, *std::max_element(extents.begin(), extents.end()) - 1);
  EdgeField S(lat.edge_slot_count());
  auto slot = [&](std::size_t v, int j) -> Multivector& { return S[lat.edge_slot(v, j)]; };
  // Curved mode: the axis-j spheres are nearly concentric about a centre at
  // distance ~1/companion behind the origin.
  std::vector<double> axis_distance(static_cast<std::size_t>(m));
  for (auto& d : axis_distance) d = (1.0 + 0.5 * rng.uniform()) / opts.companion;

  for (std::size_t v = 1; v < lat.vertex_count(); ++v) {
    const std::vector<int> sup = lat.support(v);
    if (sup.size() == 1) {
      // Perturbed bisector plane of the axis edge into v, or a large sphere
      // tangent to it at the edge midpoint.
      const int j = sup.front();
      EuclideanPoint normal(n), mid = EuclideanPoint::Zero(n);
      for (int i = 0; i < n; ++i) normal(i) = i == j ? 1.0 : amp * h * rng.symmetric();
      normal.normalize();
      mid(j) = (lat.coordinate(v, j) - 0.5 + 0.25 * amp * rng.symmetric()) * h;
      if (opts.euclidean) {
        slot(v - lat.stride(j), j) = plane(alg, normal, normal.dot(mid)).vec();
      } else {
        const double distance = axis_distance[static_cast<std::size_t>(j)];
        const double radius = distance + mid(j);
        slot(v - lat.stride(j), j) = hypersphere(alg, mid - radius * normal, radius).vec();
      }
    } else if (sup.size() == 2) {
      // Face rule: S_j(b + t_i) rotated in span(S_i(b), S_j(b)), then
      // S_i(b + t_j) = S_j(b) S_i(b) S_j(b + t_i).
      const int i = sup[0], j = sup[1];
      const std::size_t b = v - lat.stride(i) - lat.stride(j);
      const Multivector& si = slot(b, i);
      const Multivector& sj = slot(b, j);
      // Turning S_j by the face's departure from orthogonality keeps that
      // departure from compounding along the lattice.
      const double defect = std::asin(std::clamp(minkowski_inner(si, sj), -1.0, 1.0));
      Multivector sj_next = rotate_in_span(sj, si, -defect + amp * h * rng.symmetric());
      if (opts.euclidean) sj_next = unit_sphere(sj_next);
      slot(lat.shift(b, i), j) = sj_next;
      slot(lat.shift(b, j), i) = unit_sphere((sj * si * sj_next).grade(1));
    }
  }
  complete_sphere_field(lat, S);

  Versor origin = Versor::identity(alg);
  if (opts.moebius && !opts.euclidean) {
    // Inversion in a sphere centred off the lattice followed by a reflection
    // in a plane through the centre: F^(0) becomes that centre.
    EuclideanPoint centre(n);
    for (int k = 0; k < n; ++k) centre(k) = -(0.3 + 0.4 * rng.uniform());
    EuclideanPoint normal = EuclideanPoint::Zero(n);
    for (int k = 0; k < n; ++k) normal(k) = rng.symmetric();
    normal.normalize();
    const Multivector inv = hypersphere(alg, centre, 1.0).vec();
    const Multivector refl = plane(alg, normal, normal.dot(centre)).vec();
    const Multivector pair[] = {inv, refl};
    origin = Versor::from_vectors(pair);
    for (auto& s : S) {
      if (s.valid()) s = unit_sphere(origin.apply(s).grade(1));
    }
  }
  FrameIntegration integ = frame_from_edge_spheres(lat, S, origin, SignPolicy::kStrict, 1e-8);
  return FrameSeed{lat, std::move(integ.frames), std::move(integ.spheres)};
}

}  // namespace

FrameSeed seed_random_frames(int n, const std::vector<int>& extents,
                             const RandomFrameOptions& opts, std::uint64_t seed) {
  require_net_dims(static_cast<int>(extents.size()), n);
  Rng rng(seed);
  // Occasionally a random draw drives a cell past the point where its far
  // sphere is real; the stream simply continues with a fresh draw.
  constexpr int kAttempts = 16;
  for (int attempt = 1;; ++attempt) {
    try {
      return random_frames_attempt(n, extents, opts, rng);
    } catch (const Error&) {
      if (attempt == kAttempts) throw;
    }
  }
}

std::vector<std::optional<ConformalPoint>> seed_hypercube(int k, int i, int n, std::uint64_t seed) {
  if (i < 1 || i > 2) throw std::invalid_argument("seed_hypercube supports i = 1 or 2");
  const Lattice lat(std::vector<int>(static_cast<std::size_t>(k), 2));
  const Algebra& alg = Algebra::get(n);
  Rng rng(seed);
  std::vector<EuclideanPoint> x(lat.vertex_count());
  std::vector<std::optional<ConformalPoint>> out(lat.vertex_count());
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    const std::vector<int> sup = lat.support(v);
    if (static_cast<int>(sup.size()) > i) continue;
    if (sup.size() <= 1) {
      EuclideanPoint p(n);
      for (int c = 0; c < n; ++c) p(c) = rng.symmetric();
      if (!sup.empty()) p(sup.front() % n) += 1.0 + 0.3 * (sup.front() / n);
      x[v] = p;
    } else {
      const std::size_t vi = v - lat.stride(sup[1]);
      const std::size_t vj = v - lat.stride(sup[0]);
      x[v] = point_by_cross_ratio(x[0], x[vi], x[vj], -1.0 + 0.4 * rng.symmetric());
    }
    out[v] = lift(alg, x[v]);
  }
  return out;
}

Versor random_moebius(const Algebra& alg, std::uint64_t seed) {
  Rng rng(seed);
  const int n = alg.n();
  auto random_sphere = [&] {
    EuclideanPoint c(n);
    for (int k = 0; k < n; ++k) c(k) = 3.0 * rng.symmetric();
    return hypersphere(alg, c, 0.5 + 2.5 * rng.uniform()).vec();
  };
  for (;;) {
    const Multivector pair[] = {random_sphere(), random_sphere()};
    Versor v = Versor::from_vectors(pair);
    if (v.mv().norm() <= kMaxMoebiusNorm) return v;
  }
}

}  // namespace ribnet
