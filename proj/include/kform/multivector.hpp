#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "kform/combinatorics.hpp"

namespace kform {

// Tangent vector of R^n, identified throughout with a degree-1 form via the
// metric that makes e_1..e_n orthonormal.
using Vector = Eigen::VectorXd;

// Element of the exterior algebra over R^n. Coefficients are dense per
// degree, indexed by increasing index tuples in lexicographic order.
class Multivector {
 public:
  explicit Multivector(int n);

  static Multivector zero(int n) { return Multivector(n); }
  static Multivector scalar(int n, double c);
  // e.g. basis(4, {1,3}) = e1 ∧ e3
  static Multivector basis(int n, std::initializer_list<int> indices);
  static Multivector basis_mask(int n, std::uint32_t mask);
  static Multivector from_vector(const Vector& x);
  static Multivector volume(int n);

  int n() const { return n_; }
  Eigen::VectorXd& coeffs(int p) { return coeffs_[p]; }
  const Eigen::VectorXd& coeffs(int p) const { return coeffs_[p]; }
  // Coefficient of one basis element, e.g. coeff({1,2}).
  double coeff(std::initializer_list<int> indices) const;

  Multivector grade(int p) const;
  // True when at most one degree carries coefficients above tol.
  bool is_homogeneous(double tol = 0.0) const;
  // Degree of a homogeneous element (0 for the zero element).
  int degree(double tol = 0.0) const;
  bool is_zero(double tol = 0.0) const;
  double norm() const;
  Vector to_vector() const;  // requires degree <= 1 content only

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double c);

 private:
  int n_;
  std::vector<Eigen::VectorXd> coeffs_;  // coeffs_[p] has size binomial(n, p)
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator*(double c, Multivector a);
Multivector operator-(Multivector a);

Multivector wedge(const Multivector& a, const Multivector& b);
// Interior product X ⌟ u (adjoint of wedging by X).
Multivector contract(const Vector& x, const Multivector& u);
// Inner product induced by the orthonormal basis, summed over degrees.
double inner(const Multivector& a, const Multivector& b);
// Hodge star; requires a homogeneous argument.
Multivector hodge(const Multivector& u);

// Unit-norm random p-form with coefficients drawn uniformly; deterministic in
// the generator state (mt19937_64 sequences are pinned by the standard).
Multivector random_form(int n, int p, std::mt19937_64& rng);
Vector random_unit_vector(int n, std::mt19937_64& rng);

// Rendering like "e1^e2 + 0.5 e3^e4" for transcripts.
std::string to_string(const Multivector& u, double tol = 1e-12);

}  // namespace kform
