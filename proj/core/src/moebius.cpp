#include "ribnet/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ribnet/errors.hpp"
#include "ribnet/subspace.hpp"

namespace ribnet {
namespace {

Multivector wedge_all(std::span<const Multivector> points) {
  Multivector w = points.front();
  for (std::size_t i = 1; i < points.size(); ++i) w = w ^ points[i];
  return w;
}

std::vector<Multivector> vectors_of(std::span<const ConformalPoint> points) {
  std::vector<Multivector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.vec());
  return out;
}

}  // namespace

NullBasisCoordinates null_basis_coordinates(const Multivector& v) {
  require_grade(v, 1, "null_basis_coordinates");
  const int n = v.algebra().n();
  const double a = v[1];
  const double c = v[std::size_t{1} << (n + 1)];
  NullBasisCoordinates out;
  out.e0 = a + c;
  out.einf = a - c;
  out.euclidean.resize(n);
  for (int i = 1; i <= n; ++i) out.euclidean(i - 1) = v[std::size_t{1} << i];
  return out;
}

// ----------------------------------------------------------- ConformalPoint

ConformalPoint ConformalPoint::from_vector(Multivector v) {
  require_grade(v, 1, "ConformalPoint");
  const double scale = v.norm();
  if (scale == 0.0) throw DegenerateConfiguration("zero vector is not a point");
  if (std::abs(minkowski_inner(v, v)) > tol::kRelative * scale * scale) {
    throw DegenerateConfiguration("vector is not null");
  }
  return ConformalPoint(std::move(v), Normalization::kProjective);
}

bool ConformalPoint::is_infinite() const {
  const Multivector einf = v_.algebra().einf();
  return std::abs(minkowski_inner(v_, einf)) <= tol::kRelative * v_.norm();
}

ConformalPoint ConformalPoint::normalized() const {
  if (!is_infinite()) {
    const double chart = -2.0 * minkowski_inner(v_, v_.algebra().einf());
    return ConformalPoint(v_ / chart, Normalization::kChart);
  }
  Multivector u = v_ / v_.norm();
  for (double c : u.coefficients()) {
    if (c != 0.0) {
      if (c < 0.0) u = -u;
      break;
    }
  }
  return ConformalPoint(std::move(u), Normalization::kProjective);
}

ConformalPoint lift(const Algebra& alg, const EuclideanPoint& x) {
  if (x.size() != alg.n()) throw std::invalid_argument("lift: dimension mismatch");
  return ConformalPoint(alg.vector(1.0, std::span<const double>(x.data(), x.size()), x.squaredNorm()),
                        ConformalPoint::Normalization::kChart);
}

ProjectedPoint project(const Multivector& p) {
  return project(ConformalPoint::from_vector(p));
}

ProjectedPoint project(const ConformalPoint& p) {
  if (p.is_infinite()) return PointAtInfinity{};
  const NullBasisCoordinates c = null_basis_coordinates(p.vec());
  return EuclideanPoint(c.euclidean / c.e0);
}

double projective_distance(const Multivector& a, const Multivector& b) {
  require_same_algebra(a, b);
  const Multivector ua = a / a.norm();
  const Multivector ub = b / b.norm();
  return std::min((ua - ub).norm(), (ua + ub).norm());
}

// -------------------------------------------------------------- Hypersphere

Hypersphere Hypersphere::from_vector(const Multivector& s) {
  require_grade(s, 1, "Hypersphere");
  const double q = minkowski_inner(s, s);
  const double scale = s.norm();
  if (!(q > tol::kRelative * scale * scale)) {
    throw DegenerateConfiguration("hypersphere vector must be spacelike");
  }
  return Hypersphere(s / std::sqrt(q));
}

bool Hypersphere::is_plane() const {
  return std::abs(minkowski_inner(s_, s_.algebra().einf())) <= tol::kRelative * s_.norm();
}

std::variant<Hypersphere::Sphere, Hypersphere::Plane> Hypersphere::readout() const {
  const NullBasisCoordinates c = null_basis_coordinates(s_);
  if (is_plane()) {
    const double len = c.euclidean.norm();
    return Plane{c.euclidean / len, 0.5 * c.einf / len};
  }
  return Sphere{c.euclidean / c.e0, 1.0 / std::abs(c.e0)};
}

Hypersphere hypersphere(const Algebra& alg, const EuclideanPoint& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("hypersphere: radius must be positive");
  if (center.size() != alg.n()) throw std::invalid_argument("hypersphere: dimension mismatch");
  const double c2 = center.squaredNorm();
  Multivector s =
      alg.vector(1.0, std::span<const double>(center.data(), center.size()), c2 - radius * radius);
  return Hypersphere::from_vector(s / radius);
}

Hypersphere plane(const Algebra& alg, const EuclideanPoint& normal, double offset) {
  if (normal.size() != alg.n()) throw std::invalid_argument("plane: dimension mismatch");
  if (std::abs(normal.norm() - 1.0) > 1e-12) throw std::invalid_argument("plane: normal must be unit");
  return Hypersphere::from_vector(
      alg.vector(0.0, std::span<const double>(normal.data(), normal.size()), 2.0 * offset));
}

// -------------------------------------------------------------- SphereBlade

int SphereBlade::grade() const {
  return form == Form::kTimelike ? sphere_dim + 2 : blade.algebra().n() - sphere_dim;
}

SphereBlade SphereBlade::to_timelike() const {
  if (form == Form::kTimelike) return *this;
  return SphereBlade{dual(blade), Form::kTimelike, sphere_dim};
}

SphereBlade SphereBlade::to_spacelike() const {
  if (form == Form::kSpacelike) return *this;
  return SphereBlade{dual(blade), Form::kSpacelike, sphere_dim};
}

double incidence_residual(const Multivector& p, const SphereBlade& s) {
  require_grade(p, 1, "incidence_residual");
  const double scale = p.norm() * s.blade.norm();
  if (scale == 0.0) throw DegenerateConfiguration("incidence with a zero blade");
  if (s.form == SphereBlade::Form::kTimelike) return (p ^ s.blade).norm() / scale;
  const int g = s.grade();
  const Multivector pb = p * s.blade;
  const Multivector bp = s.blade * p;
  const Multivector contraction = (g % 2 == 0) ? (pb - bp) * 0.5 : (pb + bp) * 0.5;
  return contraction.grade(g - 1).norm() / scale;
}

bool incident_point_sphere(const ConformalPoint& p, const Hypersphere& s, double rel_tol) {
  // p s + s p = -2 <p, s>.
  return std::abs(minkowski_inner(p.vec(), s.vec())) <= rel_tol * p.vec().norm() * s.vec().norm();
}

bool incident_point_circle(const ConformalPoint& p, const SphereBlade& c, double rel_tol) {
  return incidence_residual(p.vec(), c) <= rel_tol;
}

bool spheres_orthogonal(const Hypersphere& a, const Hypersphere& b, double rel_tol) {
  return std::abs(minkowski_inner(a.vec(), b.vec())) <= rel_tol;
}

double sphere_angle(const Hypersphere& a, const Hypersphere& b) {
  return std::acos(std::clamp(minkowski_inner(a.vec(), b.vec()), -1.0, 1.0));
}

double wedge_residual(std::span<const Multivector> points) {
  if (points.empty()) return 0.0;
  double scale = 1.0;
  for (const auto& p : points) scale *= p.norm();
  if (scale == 0.0) return 0.0;
  return wedge_all(points).norm() / scale;
}

std::optional<SphereBlade> sphere_through(std::span<const Multivector> points, double rel_tol) {
  if (points.empty()) throw std::invalid_argument("sphere_through: no points");
  const int n = points.front().algebra().n();
  const int count = static_cast<int>(points.size());
  if (count < 2 || count > n + 2) {
    throw std::invalid_argument("sphere_through: need between 2 and n+2 points, got " +
                                std::to_string(count));
  }
  for (const auto& p : points) require_grade(p, 1, "sphere_through");
  if (wedge_residual(points) <= rel_tol) return std::nullopt;
  return SphereBlade{wedge_all(points), SphereBlade::Form::kTimelike, count - 2};
}

std::optional<SphereBlade> sphere_through(std::span<const ConformalPoint> points, double rel_tol) {
  const auto vecs = vectors_of(points);
  return sphere_through(std::span<const Multivector>(vecs), rel_tol);
}

// -------------------------------------------------------------- cross ratio

CrossRatioValue cross_ratio(const Multivector& p1, const Multivector& p2, const Multivector& p3,
                            const Multivector& p4) {
  const double l14 = minkowski_inner(p1, p4);
  const double l23 = minkowski_inner(p2, p3);
  // Each pair is tested on its own, at the level of rounding in the inner
  // product; small but honest circles must not be flagged.
  constexpr double kCoincident = 1e-13;
  if (std::abs(l14) <= kCoincident * p1.norm() * p4.norm() ||
      std::abs(l23) <= kCoincident * p2.norm() * p3.norm()) {
    throw DegenerateConfiguration("cross ratio: coincident points p1~p4 or p2~p3");
  }
  // (p1 p4 + p4 p1)(p2 p3 + p3 p2) = 4 <p1,p4><p2,p3>.
  const double denominator = 4.0 * l14 * l23;
  const Multivector forward = ((p1 * p2) * p3) * p4;
  const Multivector numerator = forward + forward.reverse();
  CrossRatioValue r;
  r.r0 = numerator.scalar() / denominator;
  const Multivector r4 = numerator.grade(4) / denominator;
  r.r4norm = std::sqrt(std::abs(scalar_product(r4.reverse(), r4)));
  return r;
}

CrossRatioValue cross_ratio(const ConformalPoint& p1, const ConformalPoint& p2,
                            const ConformalPoint& p3, const ConformalPoint& p4) {
  return cross_ratio(p1.vec(), p2.vec(), p3.vec(), p4.vec());
}

ConformalPoint inversion(const ConformalPoint& p, const Hypersphere& s) {
  Multivector image = (s.vec() * p.vec() * s.vec()).grade(1);
  return ConformalPoint::from_vector(std::move(image)).normalized();
}

// ------------------------------------------------------ point pairs, circles

namespace {

// Nearest point of a nearly null vector: its Euclidean part, or infinity.
ConformalPoint snap_to_cone(const Algebra& alg, const Multivector& v) {
  const NullBasisCoordinates c = null_basis_coordinates(v);
  if (std::abs(c.e0) <= tol::kRelative * v.norm()) return ConformalPoint::from_vector(alg.einf());
  return lift(alg, c.euclidean / c.e0);
}

}  // namespace

std::variant<PointPair, TangentPoint, Disjoint> classify_plane(const Algebra& alg,
                                                               const Eigen::MatrixXd& basis,
                                                               double tangent_tol) {
  if (basis.cols() != 2) throw std::invalid_argument("classify_plane: expected a 2-plane basis");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(Eigen::Matrix2d(gram(basis)));
  const Eigen::Vector2d lambda = eig.eigenvalues();  // ascending
  const double scale = std::max(std::abs(lambda(0)), std::abs(lambda(1)));
  if (scale == 0.0) throw DegenerateConfiguration("classify_plane: totally null plane");
  const Eigen::MatrixXd dirs = basis * eig.eigenvectors();
  if (std::abs(lambda(0)) <= tangent_tol * scale) {
    return TangentPoint{snap_to_cone(alg, from_column(alg, dirs.col(0)))};
  }
  if (lambda(0) > 0.0) return Disjoint{};
  // Null directions of the quadratic form restricted to the Euclidean-
  // orthonormalised plane: g00 + 2 g01 t + g11 t^2 = 0.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(dirs);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dirs.rows(), 2);
  const Eigen::MatrixXd g = gram(q);
  const double disc = std::sqrt(std::max(0.0, g(0, 1) * g(0, 1) - g(0, 0) * g(1, 1)));
  const double root = -(g(0, 1) + std::copysign(disc, g(0, 1)));
  const Eigen::Vector2d c1(g(1, 1), root);
  const Eigen::Vector2d c2(root, g(0, 0));
  return PointPair{ConformalPoint::from_vector(from_column(alg, q * c1.normalized())).normalized(),
                   ConformalPoint::from_vector(from_column(alg, q * c2.normalized())).normalized()};
}

PointPair extract_point_pair(const SphereBlade& blade) {
  const SphereBlade timelike = blade.to_timelike();
  if (timelike.sphere_dim != 0) throw GradeError("extract_point_pair: expected a 0-sphere");
  require_grade(timelike.blade, 2, "extract_point_pair");
  const Eigen::MatrixXd basis = blade_kernel(timelike.blade);
  if (basis.cols() != 2) throw DegenerateConfiguration("extract_point_pair: not a pure 2-blade");
  auto result = classify_plane(timelike.blade.algebra(), basis);
  if (auto* pair = std::get_if<PointPair>(&result)) return *pair;
  if (std::holds_alternative<TangentPoint>(result)) {
    throw DegenerateConfiguration("extract_point_pair: tangent plane has a single null direction");
  }
  throw DegenerateConfiguration("extract_point_pair: spacelike plane has no real points");
}

CircleIntersection circle_intersect(const SphereBlade& c1, const SphereBlade& c2) {
  const SphereBlade a = c1.to_timelike();
  const SphereBlade b = c2.to_timelike();
  if (a.sphere_dim != 1 || b.sphere_dim != 1) throw GradeError("circle_intersect: expected circles");
  const Eigen::MatrixXd ua = blade_kernel(a.blade);
  const Eigen::MatrixXd ub = blade_kernel(b.blade);
  if (ua.cols() != 3 || ub.cols() != 3) {
    throw DegenerateConfiguration("circle_intersect: circle blade is not pure");
  }
  Eigen::MatrixXd joint(ua.rows(), 6);
  joint << ua, ub;
  const int rank = numeric_rank(joint);
  if (rank <= 3) throw DegenerateConfiguration("circle_intersect: circles coincide");
  if (rank > 4) throw DegenerateConfiguration("circle_intersect: circles are not co-spherical");
  return classify_plane(a.blade.algebra(), intersect_spans(ua, ub, 2));
}

}  // namespace ribnet
