#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ribnet {

class Multivector;

// Relative tolerances shared by the kernel. Thresholds are always scaled by
// the magnitudes of the inputs; the model is projective.
namespace tol {
inline constexpr double kRelative = 1e-9;
inline constexpr double kTangent = 1e-7;
}  // namespace tol

// Clifford algebra of Minkowski space R^{n+2}_1.
//
// Internally the generators are an orthonormal basis f_0, f_1, ..., f_{n+1}
// with f_0^2 = +1 and f_i^2 = -1 otherwise; generator f_i is bit i of a basis
// blade index. The pseudo-orthonormal basis used by the geometry is
//
//   e_i   = f_i                 (1 <= i <= n)
//   e_0   = (f_0 + f_{n+1}) / 2
//   e_inf = (f_0 - f_{n+1}) / 2
//
// so that -e_i^2 = e_0 e_inf + e_inf e_0 = 1 and e_0^2 = e_inf^2 = 0 hold to
// the last bit. Instances are immutable and shared; obtain one with get().
class Algebra {
 public:
  static constexpr int kMinDim = 2;
  static constexpr int kMaxDim = 8;

  // Throws std::invalid_argument unless kMinDim <= n <= kMaxDim.
  static const Algebra& get(int n);

  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  int n() const noexcept { return n_; }
  int generator_count() const noexcept { return n_ + 2; }
  std::size_t blade_count() const noexcept { return blade_count_; }

  // Square of orthonormal generator f_bit: +1 for the timelike f_0.
  double generator_square(int bit) const noexcept { return bit == 0 ? 1.0 : -1.0; }

  // Sign s with f_A f_B = s f_{A xor B}, including the metric factor.
  double product_sign(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<double>(product_sign_[a * blade_count_ + b]);
  }
  // Sign of f_A ^ f_B, zero when the blades share a generator.
  double wedge_sign(std::uint32_t a, std::uint32_t b) const noexcept;

  Multivector zero() const;
  Multivector scalar(double value) const;
  Multivector e0() const;
  Multivector einf() const;
  // Spacelike unit generator e_i, 1 <= i <= n.
  Multivector e(int i) const;
  // Grade-1 element c0 e_0 + sum x_i e_i + cinf e_inf; x must have n entries.
  Multivector vector(double c0, std::span<const double> x, double cinf) const;
  // Grade-1 element from coefficients on the orthonormal f basis (n+2 entries).
  Multivector from_orthonormal(std::span<const double> coeffs) const;
  // eps = (e_0 - e_inf) ^ e_1 ^ ... ^ e_n ^ (e_0 + e_inf).
  Multivector pseudoscalar() const;

 private:
  explicit Algebra(int n);

  int n_;
  std::size_t blade_count_;
  std::vector<std::int8_t> product_sign_;
  std::vector<double> pseudoscalar_;
};

// Element of the algebra with dense storage over the 2^(n+2) basis blades.
class Multivector {
 public:
  // An empty value, only useful as a placeholder in containers.
  Multivector() = default;
  explicit Multivector(const Algebra& alg);
  Multivector(const Algebra& alg, std::vector<double> coeffs);

  bool valid() const noexcept { return alg_ != nullptr; }
  const Algebra& algebra() const;
  std::span<const double> coefficients() const noexcept { return c_; }
  double operator[](std::size_t blade) const { return c_[blade]; }
  double& operator[](std::size_t blade) { return c_[blade]; }

  Multivector grade(int k) const;
  // Grade-1 coefficients on the orthonormal basis f_0..f_{n+1}.
  std::vector<double> vector_coefficients() const;
  // Bitmask of grades carrying a coefficient above rel_tol * max_abs().
  std::uint32_t grade_mask(double rel_tol = 0.0) const;
  // True when all content outside grade k is below rel_tol * max_abs().
  bool is_grade(int k, double rel_tol = tol::kRelative) const;

  Multivector reverse() const;
  double scalar() const noexcept { return c_.empty() ? 0.0 : c_[0]; }
  // Euclidean norm of the coefficient array; used only for scaling.
  double norm() const noexcept;
  double max_abs() const noexcept;

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& other);
  Multivector& operator-=(const Multivector& other);
  Multivector& operator*=(double s);
  Multivector& operator/=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, double s) { return a /= s; }
  // Geometric product.
  friend Multivector operator*(const Multivector& a, const Multivector& b);
  // Outer product.
  friend Multivector operator^(const Multivector& a, const Multivector& b);

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.alg_ == b.alg_ && a.c_ == b.c_;
  }

 private:
  const Algebra* alg_ = nullptr;
  std::vector<double> c_;
};

// <u, v> = -(uv + vu)/2 for grade-1 u, v; so <e_i, e_i> = 1, <e_0, e_inf> = -1/2.
// Throws GradeError on other grades.
double minkowski_inner(const Multivector& u, const Multivector& v);

// Scalar part of a b; no grade requirement.
double scalar_product(const Multivector& a, const Multivector& b);

// [v, B] = vB - Bv for grade-1 v and grade-2 B. The result is grade 1.
Multivector adjoint_bracket(const Multivector& v, const Multivector& bivector);

// Left multiplication by the pseudoscalar eps; maps grade g to grade n+2-g
// and flips the sign of the blade square.
Multivector dual(const Multivector& v);

// det(<s_i, s_j>) for a pure k-blade s_1 ^ ... ^ s_k; computed as
// (-1)^k <reverse(B) B>_0. Positive on spacelike blades.
double blade_square(const Multivector& blade, int k);

// Whether `a` (pure grade k) factors into k vectors. Grade 2 uses the test
// a^2 in grade 0; higher grades count the kernel of v -> v ^ a.
// Throws GradeError on mixed-grade input.
bool is_pure_blade(const Multivector& a, int k);

// Checks shared by the kernel.
void require_same_algebra(const Multivector& a, const Multivector& b);
void require_grade(const Multivector& a, int k, const char* what);

}  // namespace ribnet
