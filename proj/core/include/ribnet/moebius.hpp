#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <variant>

#include <Eigen/Dense>

#include "ribnet/clifford.hpp"

// Points, spheres and the Moebius-invariant predicates of the light-cone
// model. Finite points use the chart  p e_inf + e_inf p = 1, i.e.
//   lift(x) = e_0 + sum x_i e_i + |x|^2 e_inf.
namespace ribnet {

using EuclideanPoint = Eigen::VectorXd;

struct PointAtInfinity {
  friend bool operator==(PointAtInfinity, PointAtInfinity) { return true; }
};

using ProjectedPoint = std::variant<EuclideanPoint, PointAtInfinity>;

// Coordinates of a grade-1 element on the basis e_0, e_1..e_n, e_inf.
struct NullBasisCoordinates {
  double e0 = 0.0;
  Eigen::VectorXd euclidean;
  double einf = 0.0;
};
NullBasisCoordinates null_basis_coordinates(const Multivector& v);

// A null grade-1 element, i.e. a point of the conformal n-sphere.
class ConformalPoint {
 public:
  enum class Normalization { kChart, kProjective };

  ConformalPoint() = default;
  // Throws DegenerateConfiguration for zero or non-null input.
  static ConformalPoint from_vector(Multivector v);

  const Multivector& vec() const noexcept { return v_; }
  const Algebra& algebra() const { return v_.algebra(); }
  Normalization normalization() const noexcept { return normalization_; }
  bool is_chart_normalized() const noexcept { return normalization_ == Normalization::kChart; }
  // <p, e_inf> vanishes: the class of e_inf.
  bool is_infinite() const;
  // Chart representative when finite; otherwise unit coefficient norm with
  // the first nonzero coefficient positive.
  ConformalPoint normalized() const;

 private:
  ConformalPoint(Multivector v, Normalization n) : v_(std::move(v)), normalization_(n) {}
  friend ConformalPoint lift(const Algebra&, const EuclideanPoint&);

  Multivector v_;
  Normalization normalization_ = Normalization::kProjective;
};

ConformalPoint lift(const Algebra& alg, const EuclideanPoint& x);
// Throws DegenerateConfiguration on zero or non-null input.
ProjectedPoint project(const Multivector& p);
ProjectedPoint project(const ConformalPoint& p);

// Distance between the rays of a and b: coefficient-space distance of the
// unit representatives, minimised over the sign.
double projective_distance(const Multivector& a, const Multivector& b);

// Unit spacelike vector (s^2 = -1) representing a hypersphere or plane.
class Hypersphere {
 public:
  struct Sphere {
    EuclideanPoint center;
    double radius;
  };
  struct Plane {
    EuclideanPoint normal;  // unit
    double offset;          // plane is {x : normal . x = offset}
  };

  Hypersphere() = default;
  // Normalises a spacelike vector; throws DegenerateConfiguration otherwise.
  static Hypersphere from_vector(const Multivector& s);

  const Multivector& vec() const noexcept { return s_; }
  // s e_inf + e_inf s = 0.
  bool is_plane() const;
  // Planes are detected first; spheres report the center with e_0 weight 1/r.
  std::variant<Sphere, Plane> readout() const;

 private:
  explicit Hypersphere(Multivector s) : s_(std::move(s)) {}
  Multivector s_;
};

// Throws std::invalid_argument for radius <= 0.
Hypersphere hypersphere(const Algebra& alg, const EuclideanPoint& center, double radius);
// Throws std::invalid_argument unless |normal| = 1.
Hypersphere plane(const Algebra& alg, const EuclideanPoint& normal, double offset);

// An m-sphere as a pure blade, either a spacelike (n-m)-vector or a timelike
// (m+2)-vector; dual() converts between the two.
struct SphereBlade {
  enum class Form { kSpacelike, kTimelike };

  Multivector blade;
  Form form = Form::kTimelike;
  int sphere_dim = 0;

  int grade() const;
  SphereBlade to_timelike() const;
  SphereBlade to_spacelike() const;
};

// Normalised incidence residual of a point with a sphere blade: |p ^ B| for
// the timelike form, |p _| B| for the spacelike form, divided by |p||B|.
double incidence_residual(const Multivector& p, const SphereBlade& s);

bool incident_point_sphere(const ConformalPoint& p, const Hypersphere& s,
                           double rel_tol = tol::kRelative);
bool incident_point_circle(const ConformalPoint& p, const SphereBlade& c,
                           double rel_tol = tol::kRelative);
bool spheres_orthogonal(const Hypersphere& a, const Hypersphere& b,
                        double rel_tol = tol::kRelative);
// arccos of the clamped <a, b>.
double sphere_angle(const Hypersphere& a, const Hypersphere& b);

// The m-sphere p_1 ^ ... ^ p_{m+2} through the given points (2 <= count <= n+2),
// or nullopt when the wedge vanishes within tolerance.
// Throws std::invalid_argument on a bad point count.
std::optional<SphereBlade> sphere_through(std::span<const ConformalPoint> points,
                                          double rel_tol = tol::kRelative);
std::optional<SphereBlade> sphere_through(std::span<const Multivector> points,
                                          double rel_tol = tol::kRelative);

// Normalised |p_1 ^ ... ^ p_k|, zero iff the points are dependent.
double wedge_residual(std::span<const Multivector> points);

// r = (p1 p2 p3 p4 + p4 p3 p2 p1) / ((p1 p4 + p4 p1)(p2 p3 + p3 p2)), kept as
// its scalar part and the norm of its grade-4 part.
struct CrossRatioValue {
  double r0 = 0.0;
  double r4norm = 0.0;
  // r0 + i r4norm, the complex cross ratio up to conjugation.
  std::complex<double> complex() const { return {r0, r4norm}; }
};

// Throws DegenerateConfiguration when p1 ~ p4 or p2 ~ p3.
CrossRatioValue cross_ratio(const Multivector& p1, const Multivector& p2, const Multivector& p3,
                            const Multivector& p4);
CrossRatioValue cross_ratio(const ConformalPoint& p1, const ConformalPoint& p2,
                            const ConformalPoint& p3, const ConformalPoint& p4);

// s p s; the inversion centre goes to the point at infinity.
ConformalPoint inversion(const ConformalPoint& p, const Hypersphere& s);

struct PointPair {
  ConformalPoint first;
  ConformalPoint second;
};
struct TangentPoint {
  ConformalPoint point;
};
struct Disjoint {};

// Null directions of a 2-plane given by an orthonormal coefficient basis.
std::variant<PointPair, TangentPoint, Disjoint> classify_plane(
    const Algebra& alg, const Eigen::MatrixXd& basis, double tangent_tol = tol::kTangent);

// The two points of a timelike 2-blade (a point pair). Throws
// DegenerateConfiguration for spacelike or tangent planes.
PointPair extract_point_pair(const SphereBlade& blade);

using CircleIntersection = std::variant<PointPair, TangentPoint, Disjoint>;

// Intersection of two distinct circles on a common 2-sphere. Throws
// DegenerateConfiguration if the circles coincide or are not co-spherical.
CircleIntersection circle_intersect(const SphereBlade& c1, const SphereBlade& c2);

}  // namespace ribnet
