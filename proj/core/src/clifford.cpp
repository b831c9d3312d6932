#include "ribnet/clifford.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "ribnet/errors.hpp"
#include "ribnet/subspace.hpp"

namespace ribnet {
namespace {

// Number of transpositions needed to bring f_A f_B into canonical order.
int reorder_parity(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return swaps & 1;
}

int grade_of(std::size_t blade) { return std::popcount(static_cast<std::uint32_t>(blade)); }

}  // namespace

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(int n) : n_(n), blade_count_(std::size_t{1} << (n + 2)) {
  product_sign_.resize(blade_count_ * blade_count_);
  for (std::uint32_t a = 0; a < blade_count_; ++a) {
    for (std::uint32_t b = 0; b < blade_count_; ++b) {
      // Every shared generator except f_0 squares to -1.
      const int metric = std::popcount((a & b) & ~std::uint32_t{1}) & 1;
      const int parity = reorder_parity(a, b) ^ metric;
      product_sign_[a * blade_count_ + b] = parity ? -1 : 1;
    }
  }
}

const Algebra& Algebra::get(int n) {
  if (n < kMinDim || n > kMaxDim) {
    throw std::invalid_argument("algebra dimension n must lie in [" + std::to_string(kMinDim) +
                                ", " + std::to_string(kMaxDim) + "], got " +
                                std::to_string(n));
  }
  constexpr std::size_t kSlots = kMaxDim - kMinDim + 1;
  static std::array<std::once_flag, kSlots> flags;
  static std::array<std::unique_ptr<Algebra>, kSlots> instances;
  const std::size_t slot = static_cast<std::size_t>(n - kMinDim);
  std::call_once(flags[slot], [n, slot] {
    instances[slot].reset(new Algebra(n));
    Algebra& alg = *instances[slot];
    Multivector eps = (alg.e0() - alg.einf());
    for (int i = 1; i <= n; ++i) eps = eps ^ alg.e(i);
    eps = eps ^ (alg.e0() + alg.einf());
    alg.pseudoscalar_.assign(eps.coefficients().begin(), eps.coefficients().end());
  });
  return *instances[slot];
}

double Algebra::wedge_sign(std::uint32_t a, std::uint32_t b) const noexcept {
  if ((a & b) != 0) return 0.0;
  return product_sign(a, b);
}

Multivector Algebra::zero() const { return Multivector(*this); }

Multivector Algebra::scalar(double value) const {
  Multivector m(*this);
  m[0] = value;
  return m;
}

Multivector Algebra::e0() const {
  Multivector m(*this);
  m[1] = 0.5;
  m[std::size_t{1} << (n_ + 1)] = 0.5;
  return m;
}

Multivector Algebra::einf() const {
  Multivector m(*this);
  m[1] = 0.5;
  m[std::size_t{1} << (n_ + 1)] = -0.5;
  return m;
}

Multivector Algebra::e(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("generator index out of range");
  Multivector m(*this);
  m[std::size_t{1} << i] = 1.0;
  return m;
}

Multivector Algebra::vector(double c0, std::span<const double> x, double cinf) const {
  if (static_cast<int>(x.size()) != n_) {
    throw std::invalid_argument("vector: expected " + std::to_string(n_) + " coordinates");
  }
  Multivector m(*this);
  m[1] = 0.5 * (c0 + cinf);
  m[std::size_t{1} << (n_ + 1)] = 0.5 * (c0 - cinf);
  for (int i = 1; i <= n_; ++i) m[std::size_t{1} << i] = x[static_cast<std::size_t>(i - 1)];
  return m;
}

Multivector Algebra::from_orthonormal(std::span<const double> coeffs) const {
  if (static_cast<int>(coeffs.size()) != n_ + 2) {
    throw std::invalid_argument("from_orthonormal: expected n+2 coefficients");
  }
  Multivector m(*this);
  for (int i = 0; i < n_ + 2; ++i) m[std::size_t{1} << i] = coeffs[static_cast<std::size_t>(i)];
  return m;
}

Multivector Algebra::pseudoscalar() const { return Multivector(*this, pseudoscalar_); }

// ------------------------------------------------------------ Multivector

Multivector::Multivector(const Algebra& alg) : alg_(&alg), c_(alg.blade_count(), 0.0) {}

Multivector::Multivector(const Algebra& alg, std::vector<double> coeffs)
    : alg_(&alg), c_(std::move(coeffs)) {
  if (c_.size() != alg.blade_count()) {
    throw std::invalid_argument("coefficient array length does not match the algebra");
  }
}

const Algebra& Multivector::algebra() const {
  if (alg_ == nullptr) throw std::logic_error("use of an empty Multivector");
  return *alg_;
}

Multivector Multivector::grade(int k) const {
  Multivector out(algebra());
  for (std::size_t b = 0; b < c_.size(); ++b) {
    if (grade_of(b) == k) out.c_[b] = c_[b];
  }
  return out;
}

std::vector<double> Multivector::vector_coefficients() const {
  const int count = algebra().generator_count();
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = c_[std::size_t{1} << i];
  return v;
}

std::uint32_t Multivector::grade_mask(double rel_tol) const {
  const double threshold = rel_tol * max_abs();
  std::uint32_t mask = 0;
  for (std::size_t b = 0; b < c_.size(); ++b) {
    if (std::abs(c_[b]) > threshold) mask |= 1u << grade_of(b);
  }
  return mask;
}

bool Multivector::is_grade(int k, double rel_tol) const {
  return (grade_mask(rel_tol) & ~(1u << k)) == 0;
}

Multivector Multivector::reverse() const {
  Multivector out = *this;
  for (std::size_t b = 0; b < c_.size(); ++b) {
    const int g = grade_of(b);
    if ((g * (g - 1) / 2) & 1) out.c_[b] = -out.c_[b];
  }
  return out;
}

double Multivector::norm() const noexcept {
  double s = 0.0;
  for (double x : c_) s += x * x;
  return std::sqrt(s);
}

double Multivector::max_abs() const noexcept {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

Multivector Multivector::operator-() const {
  Multivector out = *this;
  for (double& x : out.c_) x = -x;
  return out;
}

Multivector& Multivector::operator+=(const Multivector& other) {
  require_same_algebra(*this, other);
  for (std::size_t b = 0; b < c_.size(); ++b) c_[b] += other.c_[b];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& other) {
  require_same_algebra(*this, other);
  for (std::size_t b = 0; b < c_.size(); ++b) c_[b] -= other.c_[b];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Multivector& Multivector::operator/=(double s) {
  for (double& x : c_) x /= s;
  return *this;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  require_same_algebra(a, b);
  const Algebra& alg = *a.alg_;
  const std::size_t size = alg.blade_count();
  Multivector out(alg);
  for (std::uint32_t i = 0; i < size; ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    for (std::uint32_t j = 0; j < size; ++j) {
      const double bj = b.c_[j];
      if (bj == 0.0) continue;
      out.c_[i ^ j] += alg.product_sign(i, j) * ai * bj;
    }
  }
  return out;
}

Multivector operator^(const Multivector& a, const Multivector& b) {
  require_same_algebra(a, b);
  const Algebra& alg = *a.alg_;
  const std::size_t size = alg.blade_count();
  Multivector out(alg);
  for (std::uint32_t i = 0; i < size; ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    for (std::uint32_t j = 0; j < size; ++j) {
      const double bj = b.c_[j];
      if (bj == 0.0 || (i & j) != 0) continue;
      out.c_[i | j] += alg.product_sign(i, j) * ai * bj;
    }
  }
  return out;
}

// ---------------------------------------------------------- free functions

void require_same_algebra(const Multivector& a, const Multivector& b) {
  if (&a.algebra() != &b.algebra()) {
    throw AlgebraMismatch("operands belong to algebras of dimension " +
                          std::to_string(a.algebra().n()) + " and " +
                          std::to_string(b.algebra().n()));
  }
}

void require_grade(const Multivector& a, int k, const char* what) {
  if (!a.is_grade(k)) {
    throw GradeError(std::string(what) + ": expected a grade-" + std::to_string(k) + " element");
  }
}

double minkowski_inner(const Multivector& u, const Multivector& v) {
  require_same_algebra(u, v);
  require_grade(u, 1, "minkowski_inner");
  require_grade(v, 1, "minkowski_inner");
  const int count = u.algebra().generator_count();
  double s = -u[1] * v[1];
  for (int i = 1; i < count; ++i) s += u[std::size_t{1} << i] * v[std::size_t{1} << i];
  return s;
}

double scalar_product(const Multivector& a, const Multivector& b) {
  require_same_algebra(a, b);
  const Algebra& alg = a.algebra();
  double s = 0.0;
  for (std::uint32_t i = 0; i < alg.blade_count(); ++i) {
    s += alg.product_sign(i, i) * a[i] * b[i];
  }
  return s;
}

Multivector adjoint_bracket(const Multivector& v, const Multivector& bivector) {
  require_grade(v, 1, "adjoint_bracket");
  require_grade(bivector, 2, "adjoint_bracket");
  return (v * bivector - bivector * v).grade(1);
}

Multivector dual(const Multivector& v) { return v.algebra().pseudoscalar() * v; }

double blade_square(const Multivector& blade, int k) {
  const double s = scalar_product(blade.reverse(), blade);
  return (k & 1) ? -s : s;
}

bool is_pure_blade(const Multivector& a, int k) {
  const Algebra& alg = a.algebra();
  if (k < 0 || k > alg.generator_count()) throw GradeError("is_pure_blade: grade out of range");
  require_grade(a, k, "is_pure_blade");
  if (k <= 1 || k >= alg.generator_count() - 1) return true;
  if (k == 2) {
    const Multivector sq = a * a;
    return sq.is_grade(0, tol::kRelative);
  }
  return blade_kernel(a).cols() == k;
}

}  // namespace ribnet
