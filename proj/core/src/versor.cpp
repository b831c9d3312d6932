#include "ribnet/versor.hpp"

#include <cmath>
#include <string>

#include "ribnet/errors.hpp"

namespace ribnet {
namespace {

constexpr std::uint32_t kEvenGrades = 0x55555555u;
constexpr std::uint32_t kOddGrades = 0xAAAAAAAAu;

}  // namespace

Versor Versor::identity(const Algebra& alg) { return Versor(alg.scalar(1.0), true, 1.0); }

Versor Versor::from_vector(const Multivector& s) {
  require_grade(s, 1, "Versor::from_vector");
  return from_multivector(s);
}

Versor Versor::from_vectors(std::span<const Multivector> factors) {
  if (factors.empty()) throw std::invalid_argument("Versor::from_vectors: no factors");
  Multivector v = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) v = v * factors[i];
  return from_multivector(std::move(v));
}

Versor Versor::from_multivector(Multivector m) {
  const std::uint32_t mask = m.grade_mask(tol::kRelative);
  const bool even = (mask & kOddGrades) == 0;
  const bool odd = (mask & kEvenGrades) == 0;
  if (!even && !odd) throw NonUnitVersor("versor mixes even and odd grades");
  const Multivector n = m.reverse() * m;
  const double s = n.scalar();
  const double scale = std::max(1.0, m.norm() * m.norm());
  if (!n.is_grade(0, tol::kRelative) || std::abs(std::abs(s) - 1.0) > tol::kRelative * scale) {
    throw NonUnitVersor("reverse(V) V = " + std::to_string(s) + " is not a unit scalar");
  }
  return Versor(std::move(m), even, s > 0 ? 1.0 : -1.0);
}

double Versor::unit_residual() const {
  Multivector n = v_.reverse() * v_;
  n[0] -= sign_;
  return n.norm();
}

Versor Versor::inverse() const { return Versor(v_.reverse() * sign_, even_, sign_); }

Multivector Versor::apply(const Multivector& x) const {
  return (v_.reverse() * x) * v_ * sign_;
}

Versor operator*(const Versor& a, const Versor& b) {
  return Versor(a.v_ * b.v_, a.even_ == b.even_, a.sign_ * b.sign_);
}

Versor operator-(const Versor& a) { return Versor(-a.v_, a.even_, a.sign_); }

Multivector versor_apply(const Versor& phi, const Multivector& x) { return phi.apply(x); }

}  // namespace ribnet
