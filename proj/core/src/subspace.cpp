#include "ribnet/subspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "ribnet/errors.hpp"

namespace ribnet {

Eigen::MatrixXd to_matrix(std::span<const Multivector> vectors) {
  if (vectors.empty()) return {};
  const int rows = vectors.front().algebra().generator_count();
  Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    require_same_algebra(vectors.front(), vectors[c]);
    for (int r = 0; r < rows; ++r) {
      m(r, static_cast<Eigen::Index>(c)) = vectors[c][std::size_t{1} << r];
    }
  }
  return m;
}

Multivector from_column(const Algebra& alg, const Eigen::Ref<const Eigen::VectorXd>& column) {
  if (column.size() != alg.generator_count()) {
    throw std::invalid_argument("from_column: wrong column length");
  }
  Multivector v(alg);
  for (int r = 0; r < alg.generator_count(); ++r) v[std::size_t{1} << r] = column(r);
  return v;
}

Eigen::MatrixXd blade_kernel(const Multivector& a, double rel_tol) {
  const Algebra& alg = a.algebra();
  const int cols = alg.generator_count();
  const auto rows = static_cast<Eigen::Index>(alg.blade_count());
  Eigen::MatrixXd wedge_map = Eigen::MatrixXd::Zero(rows, cols);
  for (int i = 0; i < cols; ++i) {
    const std::uint32_t gen = 1u << i;
    for (std::uint32_t b = 0; b < alg.blade_count(); ++b) {
      const double ab = a[b];
      if (ab == 0.0 || (b & gen) != 0) continue;
      wedge_map(static_cast<Eigen::Index>(gen | b), i) += alg.product_sign(gen, b) * ab;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(wedge_map, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double top = sigma.size() > 0 ? sigma(0) : 0.0;
  if (top == 0.0) return Eigen::MatrixXd::Identity(cols, cols);
  int rank = 0;
  while (rank < sigma.size() && sigma(rank) > rel_tol * top) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues();
}

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol) {
  const Eigen::VectorXd sigma = singular_values(m);
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  int rank = 0;
  while (rank < sigma.size() && sigma(rank) > rel_tol * sigma(0)) ++rank;
  return rank;
}

Eigen::MatrixXd column_basis(const Eigen::MatrixXd& m, int rank) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

double minkowski(const Eigen::Ref<const Eigen::VectorXd>& u,
                 const Eigen::Ref<const Eigen::VectorXd>& v) {
  return u.dot(v) - 2.0 * u(0) * v(0);
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& basis) {
  Eigen::MatrixXd g(basis.cols(), basis.cols());
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    for (Eigen::Index j = 0; j < basis.cols(); ++j) g(i, j) = minkowski(basis.col(i), basis.col(j));
  }
  return g;
}

Eigen::MatrixXd intersect_spans(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                int expected_dim) {
  // a x = b y  <=>  [a, -b] (x; y) = 0.
  Eigen::MatrixXd stacked(a.rows(), a.cols() + b.cols());
  stacked << a, -b;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const Eigen::MatrixXd null = svd.matrixV().rightCols(expected_dim);
  Eigen::MatrixXd vecs = a * null.topRows(a.cols());
  return column_basis(vecs, expected_dim);
}

}  // namespace ribnet
