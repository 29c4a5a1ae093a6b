#pragma once

#include <Eigen/Dense>

#include "kform/linalg.hpp"
#include "kform/multivector.hpp"

namespace kform {

// Subspace of the degree-p forms over R^n, held as an orthonormal column
// basis in the lexicographic coefficient coordinates.
class Subspace {
 public:
  Subspace(int n, int p, Eigen::MatrixXd orthonormal_basis);

  static Subspace full(int n, int p);
  static Subspace zero_subspace(int n, int p);
  // Span of arbitrary (column) vectors, orthonormalized with the library
  // rank cutoff.
  static Subspace from_span(int n, int p, const Eigen::MatrixXd& vectors,
                            double rel_cutoff = linalg::kRankCutoff);
  static Subspace from_forms(const std::vector<Multivector>& forms, int p,
                             double rel_cutoff = linalg::kRankCutoff);

  int n() const { return n_; }
  int p() const { return p_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  Multivector basis_form(int k) const;

  Eigen::MatrixXd projector() const;
  // Norm of the component of v orthogonal to the subspace.
  double residual(const Eigen::VectorXd& v) const;
  double residual(const Multivector& u) const;
  bool contains(const Eigen::VectorXd& v, double tol) const;

 private:
  int n_;
  int p_;
  Eigen::MatrixXd basis_;
};

// Frobenius distance between the orthogonal projectors; the library's notion
// of subspace equality is distance < 1e-8.
double projector_distance(const Subspace& a, const Subspace& b);

// Span of all (n-p)-fold contractions of the volume form; equals the full
// degree-p space.
Subspace volume_contractions(int n, int p);

}  // namespace kform
