#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kform/curvature.hpp"
#include "kform/multivector.hpp"

namespace kform {

// Skew-symmetric endomorphism of R^n, the infinitesimal rotation attached to
// a 2-form by A_omega X = X ⌟ omega.
struct SkewEndo {
  Eigen::MatrixXd mat;

  static SkewEndo from_matrix(Eigen::MatrixXd m, double tol = 1e-10);
  static SkewEndo from_two_form(const Multivector& omega);
  Multivector to_two_form() const;
  int n() const { return static_cast<int>(mat.rows()); }
};

// Degree-preserving derivation action of so(n) on forms: on degree 1 it is
// the matrix action, and rho(A)(a ∧ b) = rho(A)a ∧ b + a ∧ rho(A)b.
Multivector rho_action(const SkewEndo& a, const Multivector& u);

// Curvature action R_{X,Y} u = -rho(A_{op2(X∧Y)}) u.
Multivector curv_action(const CurvatureTensor& r, const Vector& x, const Vector& y,
                        const Multivector& u);

// Degree-raising curvature operator R⁺(X) u = Σ_i e_i ∧ R_{X,e_i} u.
Multivector r_plus(const CurvatureTensor& r, const Vector& x, const Multivector& u);

// Matrix of the Casimir-type operator q(R) = -Σ_i 𝓘(e_i) R⁺(e_i) on degree p.
// On degree 1 it equals the Ricci matrix; for constant curvature 1 it is
// p(n-p)·id.
Eigen::MatrixXd casimir(const CurvatureTensor& r, int p);

// Dense matrix of a linear map between fixed form degrees.
struct FormOperator {
  int n;
  int p_in;
  int p_out;
  Eigen::MatrixXd matrix;  // dim(Λ^p_out) × dim(Λ^p_in)

  Multivector apply(const Multivector& u) const;
};

FormOperator wedge_matrix(int n, int i, int p);        // e_i ∧ · : p -> p+1
FormOperator contraction_matrix(int n, int i, int p);  // e_i ⌟ · : p -> p-1
FormOperator rho_matrix(const SkewEndo& a, int p);
FormOperator r_plus_matrix(const CurvatureTensor& r, int i, int p);
FormOperator curv_action_matrix(const CurvatureTensor& r, int i, int j, int p);

// Algebraic Kähler operators of an orthogonal complex structure j0, one
// matrix per degree p = 0..n: j = rho(j0), l = wedging by the Kähler 2-form
// kappa(X,Y) = <j0 X, Y>, lam = adjoint of l.
struct KahlerOperators {
  std::vector<FormOperator> j;
  std::vector<FormOperator> l;
  std::vector<FormOperator> lam;
};

KahlerOperators kahler_ops(const Eigen::MatrixXd& j0);

}  // namespace kform
