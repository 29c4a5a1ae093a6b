#include "kform/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>

namespace kform::linalg {

namespace {

// Number of singular values above the cutoff. The cutoff is relative to the
// top singular value, floored at unit scale: operators here act on O(1)-
// normalized data, so a matrix whose largest singular value is far below 1
// is roundoff noise and must count as zero, not as a rank-1 direction.
template <typename Svd>
int rank_of(const Svd& svd, double rel_cutoff) {
  const auto& sv = svd.singularValues();
  if (!sv.size()) return 0;
  double top = sv(0);
  if (top <= 0.0 || top < 1e-300) return 0;
  double cutoff = rel_cutoff * std::max(top, 1.0);
  int r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

}  // namespace

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rel_cutoff) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0 || a.size() == 0 || a.norm() < 1e-300)
    return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  int r = rank_of(svd, rel_cutoff);
  return svd.matrixV().rightCols(cols - r);
}

Eigen::MatrixXd column_span(const Eigen::MatrixXd& a, double rel_cutoff) {
  if (a.cols() == 0 || a.size() == 0 || a.norm() < 1e-300)
    return Eigen::MatrixXd::Zero(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank_of(svd, rel_cutoff));
}

int rank(const Eigen::MatrixXd& a, double rel_cutoff) {
  if (a.size() == 0 || a.norm() < 1e-300) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return rank_of(svd, rel_cutoff);
}

bool inverse_sqrt_spd(const Eigen::MatrixXd& s, Eigen::MatrixXd* out,
                      double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) return false;
  const auto& ev = es.eigenvalues();
  double top = ev(ev.size() - 1);
  if (top <= 0.0) return false;
  Eigen::VectorXd inv_sqrt(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < rel_cutoff * top) return false;
    inv_sqrt(i) = 1.0 / std::sqrt(ev(i));
  }
  *out = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
  return true;
}

}  // namespace kform::linalg
