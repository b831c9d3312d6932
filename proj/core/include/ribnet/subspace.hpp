#pragma once

#include <span>

#include <Eigen/Dense>

#include "ribnet/clifford.hpp"

// Linear algebra on grade-1 elements, done in coefficient space of the
// orthonormal basis f_0..f_{n+1}. Ranks and kernels are metric-free; the
// Minkowski metric only enters through gram().
namespace ribnet {

// Columns are the orthonormal-basis coefficients of the given grade-1 elements.
Eigen::MatrixXd to_matrix(std::span<const Multivector> vectors);

// Grade-1 element from a column of coefficients.
Multivector from_column(const Algebra& alg, const Eigen::Ref<const Eigen::VectorXd>& column);

// Orthonormal (coefficient-space) basis of {v : v ^ a = 0}. For a pure
// k-blade this is the k-dimensional subspace the blade represents.
Eigen::MatrixXd blade_kernel(const Multivector& a, double rel_tol = tol::kRelative);

// Singular values of the matrix, largest first.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);

// Number of singular values above rel_tol times the largest.
int numeric_rank(const Eigen::MatrixXd& m, double rel_tol = tol::kRelative);

// Orthonormal basis of the column span, keeping rank `rank` directions.
Eigen::MatrixXd column_basis(const Eigen::MatrixXd& m, int rank);

// Gram matrix <b_i, b_j> of the columns under the Minkowski product.
Eigen::MatrixXd gram(const Eigen::MatrixXd& basis);

// Minkowski product of two coefficient columns.
double minkowski(const Eigen::Ref<const Eigen::VectorXd>& u,
                 const Eigen::Ref<const Eigen::VectorXd>& v);

// Orthonormal basis of the intersection of two column spans (both given by
// orthonormal columns). `expected_dim` selects how many directions to keep.
Eigen::MatrixXd intersect_spans(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                int expected_dim);

}  // namespace ribnet
