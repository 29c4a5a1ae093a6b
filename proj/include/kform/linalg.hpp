#pragma once

#include <Eigen/Dense>

namespace kform::linalg {

// Singular-value cutoff used for every rank decision in the library. The
// cutoff is relative to max(sigma_max, 1): the library keeps its operators on
// O(1)-normalized data, so a spectrum that sits entirely below unit scale is
// roundoff noise and the matrix counts as zero.
inline constexpr double kRankCutoff = 1e-9;

// Orthonormal basis (columns) of the nullspace of a. Singular values below
// rel_cutoff * max(sigma_max, 1) count as zero; a numerically zero matrix has
// a full nullspace.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_cutoff = kRankCutoff);

// Orthonormal basis (columns) of the column span of a.
Eigen::MatrixXd column_span(const Eigen::MatrixXd& a, double rel_cutoff = kRankCutoff);

int rank(const Eigen::MatrixXd& a, double rel_cutoff = kRankCutoff);

// Inverse square root of a symmetric positive definite matrix; eigenvalues
// below rel_cutoff * lambda_max make the call fail (returns false).
bool inverse_sqrt_spd(const Eigen::MatrixXd& s, Eigen::MatrixXd* out,
                      double rel_cutoff = 1e-8);

}  // namespace kform::linalg
