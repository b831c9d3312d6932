#pragma once

#include <span>

#include "ribnet/clifford.hpp"

namespace ribnet {

// Product of unit grade-1 elements, acting by p -> V^{-1} p V.
//
// Construction checks that reverse(V) V is a scalar of modulus one, so the
// inverse is reverse(V) divided by that sign. Even versors built from unit
// spacelike vectors have reverse(V) V = +1.
class Versor {
 public:
  static Versor identity(const Algebra& alg);
  // A single unit vector (s^2 = +-1); odd.
  static Versor from_vector(const Multivector& s);
  static Versor from_vectors(std::span<const Multivector> factors);
  // Throws NonUnitVersor unless reverse(m) m = +-1 and m has a single parity.
  static Versor from_multivector(Multivector m);

  const Multivector& mv() const noexcept { return v_; }
  const Algebra& algebra() const { return v_.algebra(); }
  bool even() const noexcept { return even_; }
  // reverse(V) V, either +1 or -1.
  double norm_sign() const noexcept { return sign_; }
  // |reverse(V) V - sign| including any non-scalar content.
  double unit_residual() const;

  Versor inverse() const;
  Multivector apply(const Multivector& x) const;

  // Clifford product: (A * B).apply(x) == B.apply(A.apply(x)).
  friend Versor operator*(const Versor& a, const Versor& b);
  friend Versor operator-(const Versor& a);

 private:
  Versor(Multivector v, bool even, double sign) : v_(std::move(v)), even_(even), sign_(sign) {}

  Multivector v_;
  bool even_ = true;
  double sign_ = 1.0;
};

// Phi^{-1} x Phi.
Multivector versor_apply(const Versor& phi, const Multivector& x);

}  // namespace ribnet
