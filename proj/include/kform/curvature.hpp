#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kform/multivector.hpp"

namespace kform {

// One component of a curvature tensor in the operator-on-2-forms convention:
// value = <R(e_i ∧ e_j), e_k ∧ e_l>. Unlisted components follow from the
// symmetries R_{ijkl} = -R_{jikl} = -R_{ijlk} = R_{klij} or are zero.
struct CurvatureEntry {
  int i, j, k, l;
  double value;
};

// Algebraic curvature tensor on R^n, stored as the symmetric first-Bianchi
// operator op2 on 2-forms (lexicographic pair basis).
//
// Conventions fixed across the library:
//   A_omega X = X ⌟ omega              (2-form <-> skew endomorphism)
//   R_{X,Y} = -rho(A_{op2(X∧Y)})       (action on forms; see form_operators)
// The minus sign is what makes constant_curvature(n, kappa > 0) come out with
// Ricci = (n-1)·kappa·id, Ric(X) = Σ_i R_{X,e_i} e_i, and a nonnegative
// Casimir; with it the curvature of the unit sphere acts on vectors as
// R_{X,Y}Z = <Y,Z>X - <X,Z>Y.
class CurvatureTensor {
 public:
  static CurvatureTensor from_op2(int n, Eigen::MatrixXd op2);
  static CurvatureTensor from_components(int n, const std::vector<CurvatureEntry>& entries);
  static CurvatureTensor flat(int n);
  static CurvatureTensor constant_curvature(int n, double kappa);
  // Complex projective space of complex dimension m (so n = 2m), normalized
  // to holomorphic sectional curvature 4; J0 e_{2k-1} = e_{2k}.
  static CurvatureTensor fubini_study(int m);
  // Direct sum on R^{n_a + n_b}: factor blocks of op2, zero on mixed pairs.
  static CurvatureTensor product(const CurvatureTensor& a, const CurvatureTensor& b);
  // Rank-2 self-dual Weyl operator on R^4: eigenvalue +1 on alpha, -1 on
  // beta, 0 on gamma and on all anti-self-dual 2-forms, where
  // alpha = e12+e34, beta = e13-e24, gamma = e14+e23 (norms sqrt(2)).
  static CurvatureTensor weyl4();
  // Same op2 on the 2-form block of the first n coordinates of R^new_n,
  // zero elsewhere.
  static CurvatureTensor embed_trivial(const CurvatureTensor& r, int new_n);
  // Symmetric random op2 projected orthogonally onto the first-Bianchi
  // subspace; deterministic in the seed.
  static CurvatureTensor random_curvature(int n, std::uint64_t seed);

  int n() const { return n_; }
  const Eigen::MatrixXd& op2() const { return op2_; }
  // Component <R(e_i∧e_j), e_k∧e_l> for arbitrary index order (signs applied).
  double entry(int i, int j, int k, int l) const;
  Multivector apply_to_two_form(const Multivector& omega) const;

  const Eigen::MatrixXd& ricci() const { return ricci_; }
  double scalar() const { return scalar_; }
  std::optional<double> einstein_constant() const { return einstein_; }
  const Eigen::MatrixXd& weyl_op2() const { return weyl_op2_; }
  double weyl_norm() const { return weyl_op2_.norm(); }

  // Max first-Bianchi cyclic sum, relative to the tensor's scale.
  double bianchi_residual() const;
  // Canonical nonzero components (i<j, k<l, (i,j) <= (k,l)).
  std::vector<CurvatureEntry> to_entries(double tol = 1e-14) const;

 private:
  CurvatureTensor(int n, Eigen::MatrixXd op2);

  int n_;
  Eigen::MatrixXd op2_;       // binomial(n,2) square, symmetric
  Eigen::MatrixXd ricci_;     // n×n
  double scalar_ = 0.0;
  std::optional<double> einstein_;
  Eigen::MatrixXd weyl_op2_;  // Ricci-free part, op2 coordinates
};

// Orthogonal split into scalar, traceless-Ricci and Weyl summands
// (norm-orthogonal; parts sum back to the input).
struct CurvatureDecomposition {
  CurvatureTensor scalar_part;
  CurvatureTensor traceless_ricci_part;
  CurvatureTensor weyl_part;
  double scalar_norm;
  double traceless_ricci_norm;
  double weyl_norm;
};

CurvatureDecomposition decompose(const CurvatureTensor& r);

// JSON file format: {"n": int, "entries": [{"i","j","k","l","value"}, ...]}.
CurvatureTensor load_curvature_json(const std::string& path);
void save_curvature_json(const CurvatureTensor& r, const std::string& path);

}  // namespace kform
