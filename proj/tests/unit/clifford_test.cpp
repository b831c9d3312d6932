#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ribnet/clifford.hpp"
#include "ribnet/errors.hpp"
#include "test_support.hpp"

namespace ribnet {
namespace {

using prop::Gen;
using prop::for_all;

double rel_diff(const Multivector& a, const Multivector& b) {
  return (a - b).norm() / std::max(1.0, std::max(a.norm(), b.norm()));
}

std::vector<Multivector> null_basis(const Algebra& alg) {
  std::vector<Multivector> basis{alg.e0()};
  for (int i = 1; i <= alg.n(); ++i) basis.push_back(alg.e(i));
  basis.push_back(alg.einf());
  return basis;
}

TEST(Algebra, RejectsUnsupportedDimensions) {
  EXPECT_THROW(Algebra::get(1), std::invalid_argument);
  EXPECT_THROW(Algebra::get(Algebra::kMaxDim + 1), std::invalid_argument);
  EXPECT_EQ(&Algebra::get(3), &Algebra::get(3));
  EXPECT_EQ(Algebra::get(3).blade_count(), 32u);
}

TEST(Algebra, GeneratorRelationsHoldExactly) {
  for (int n : {2, 3, 4, 5}) {
    const Algebra& alg = Algebra::get(n);
    const Multivector e0 = alg.e0(), ei = alg.einf();
    EXPECT_EQ(e0 * e0, alg.zero());
    EXPECT_EQ(ei * ei, alg.zero());
    EXPECT_EQ(e0 * ei + ei * e0, alg.scalar(1.0));
    EXPECT_EQ(minkowski_inner(e0, ei), -0.5);
    for (int i = 1; i <= n; ++i) {
      EXPECT_EQ(alg.e(i) * alg.e(i), alg.scalar(-1.0));
      EXPECT_EQ(alg.e(i) * e0, -(e0 * alg.e(i)));
      EXPECT_EQ(alg.e(i) * ei, -(ei * alg.e(i)));
      for (int j = i + 1; j <= n; ++j) EXPECT_EQ(alg.e(i) * alg.e(j), -(alg.e(j) * alg.e(i)));
    }
  }
}

TEST(Algebra, BracketIdentityIsExactOnNullBasis) {
  for (int n : {3, 4}) {
    const Algebra& alg = Algebra::get(n);
    const auto basis = null_basis(alg);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (const auto& ek : basis) {
          const Multivector bij = basis[i] * basis[j];
          const Multivector lhs = ek * bij - bij * ek;
          const Multivector rhs = 2.0 * (minkowski_inner(basis[j], ek) * basis[i] -
                                         minkowski_inner(basis[i], ek) * basis[j]);
          EXPECT_EQ(lhs, rhs) << "i=" << i << " j=" << j;
        }
      }
    }
  }
}

TEST(Algebra, AdjointBracketMatchesCommutator) {
  for_all(100, 11, [](Gen& g) {
    const Algebra& alg = Algebra::get(g.integer(3, 4));
    const Multivector v = g.vector(alg);
    const Multivector B = (g.vector(alg) ^ g.vector(alg)) + (g.vector(alg) ^ g.vector(alg));
    const Multivector br = adjoint_bracket(v, B);
    EXPECT_LT(rel_diff(br, v * B - B * v), 1e-13);
    EXPECT_TRUE(br.is_grade(1, 1e-12));
  });
}

TEST(Multivector, ProductIsAssociativeAndDistributive) {
  for_all(500, 1, [](Gen& g) {
    const Algebra& alg = Algebra::get(g.integer(3, 4));
    const Multivector a = g.multivector(alg), b = g.multivector(alg), c = g.multivector(alg);
    EXPECT_LT(rel_diff((a * b) * c, a * (b * c)), 1e-12);
    EXPECT_LT(rel_diff(a * (b + c), a * b + a * c), 1e-12);
    EXPECT_LT(rel_diff((a ^ b) ^ c, a ^ (b ^ c)), 1e-12);
  });
}

TEST(Multivector, VectorProductsSplitIntoInnerAndOuter) {
  for_all(200, 2, [](Gen& g) {
    const Algebra& alg = Algebra::get(g.integer(2, 5));
    const Multivector u = g.vector(alg), v = g.vector(alg);
    EXPECT_LT(rel_diff(u ^ v, 0.5 * (u * v - v * u)), 1e-14);
    EXPECT_LT(rel_diff(u * v, (u ^ v) - alg.scalar(minkowski_inner(u, v))), 1e-14);
    EXPECT_LT(rel_diff(u ^ v, -(v ^ u)), 1e-15);
    EXPECT_NEAR((u * u).scalar(), -minkowski_inner(u, u), 1e-14);
  });
}

TEST(Multivector, ReverseIsAnAntiAutomorphism) {
  for_all(200, 3, [](Gen& g) {
    const Algebra& alg = Algebra::get(g.integer(2, 4));
    const Multivector a = g.multivector(alg), b = g.multivector(alg);
    EXPECT_LT(rel_diff((a * b).reverse(), b.reverse() * a.reverse()), 1e-12);
    EXPECT_EQ(a.reverse().reverse(), a);
  });
}

TEST(Multivector, GradesDecomposeTheElement) {
  for_all(50, 4, [](Gen& g) {
    const Algebra& alg = Algebra::get(g.integer(2, 4));
    const Multivector a = g.multivector(alg);
    Multivector sum = alg.zero();
    for (int k = 0; k <= alg.generator_count(); ++k) sum += a.grade(k);
    EXPECT_EQ(sum, a);
    EXPECT_TRUE(a.grade(2).is_grade(2, 0.0));
    EXPECT_FALSE(a.is_grade(2));
  });
}

TEST(Multivector, MixingAlgebrasThrows) {
  const Multivector a = Algebra::get(3).e(1), b = Algebra::get(4).e(1);
  EXPECT_THROW(a * b, AlgebraMismatch);
  EXPECT_THROW(a + b, AlgebraMismatch);
  EXPECT_THROW(minkowski_inner(a, b), AlgebraMismatch);
}

TEST(Multivector, InnerProductRejectsOtherGrades) {
  const Algebra& alg = Algebra::get(3);
  EXPECT_THROW(minkowski_inner(alg.e(1) * alg.e(2), alg.e(1)), GradeError);
}

TEST(Multivector, OrthonormalAndNullCoordinatesAgree) {
  const Algebra& alg = Algebra::get(3);
  const double f[] = {1.0, 0.0, 0.0, 0.0, 1.0};
  EXPECT_EQ(alg.from_orthonormal(f), 2.0 * alg.e0());
  const double x[] = {0.25, -1.5, 3.0};
  const Multivector v = alg.vector(2.0, x, -0.5);
  const std::vector<double> c = v.vector_coefficients();
  EXPECT_EQ(alg.from_orthonormal(c), v);
}

TEST(Dual, MapsGradesAndIsInvolutiveUpToSign) {
  for_all(100, 5, [](Gen& g) {
    const Algebra& alg = Algebra::get(g.integer(2, 5));
    const int k = g.integer(0, alg.generator_count());
    const Multivector a = g.multivector(alg).grade(k);
    const Multivector d = dual(a);
    EXPECT_TRUE(d.is_grade(alg.generator_count() - k, 0.0));
    const Multivector dd = dual(d);
    EXPECT_TRUE(rel_diff(dd, a) < 1e-14 || rel_diff(dd, -a) < 1e-14);
  });
}

TEST(Dual, PseudoscalarIsUnit) {
  for (int n : {2, 3, 4}) {
    const Algebra& alg = Algebra::get(n);
    const Multivector eps = alg.pseudoscalar();
    EXPECT_TRUE(eps.is_grade(n + 2, 0.0));
    EXPECT_NEAR(std::abs((eps.reverse() * eps).scalar()), 1.0, 1e-15);
  }
}

TEST(Blade, SquareIsGramDeterminant) {
  for_all(200, 6, [](Gen& g) {
    const Algebra& alg = Algebra::get(g.integer(3, 4));
    const Multivector u = g.vector(alg), v = g.vector(alg);
    const double det = minkowski_inner(u, u) * minkowski_inner(v, v) -
                       std::pow(minkowski_inner(u, v), 2);
    EXPECT_NEAR(blade_square(u ^ v, 2), det, 1e-12 * std::max(1.0, std::abs(det)));
  });
}

TEST(Blade, PurityTest) {
  const Algebra& alg = Algebra::get(4);
  EXPECT_TRUE(is_pure_blade(alg.e(1) ^ alg.e(2), 2));
  EXPECT_TRUE(is_pure_blade(alg.e0() ^ alg.e(3) ^ alg.einf(), 3));
  EXPECT_FALSE(is_pure_blade((alg.e(1) ^ alg.e(2)) + (alg.e(3) ^ alg.e(4)), 2));
  EXPECT_THROW(is_pure_blade(alg.e(1) + (alg.e(1) ^ alg.e(2)), 2), GradeError);
  for_all(100, 7, [&](Gen& g) {
    const Multivector b = g.vector(alg) ^ g.vector(alg) ^ g.vector(alg);
    EXPECT_TRUE(is_pure_blade(b, 3));
  });
}

}  // namespace
}  // namespace ribnet
