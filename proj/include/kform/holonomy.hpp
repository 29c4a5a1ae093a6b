#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "kform/curvature.hpp"
#include "kform/form_operators.hpp"
#include "kform/subspace.hpp"

namespace kform {

// Lie algebra spanned by the image of the curvature operator inside so(n),
// closed under brackets. Generators form a Frobenius-orthonormal basis.
struct HolonomyAlgebra {
  int n;
  std::vector<SkewEndo> generators;

  int dim() const { return static_cast<int>(generators.size()); }
};

// Bracket closure of span{ A_{op2(e_i∧e_j)} : i < j }. Dimension is capped by
// dim so(n) = n(n-1)/2, which bounds the closure loop.
HolonomyAlgebra generate(const CurvatureTensor& r);

// Joint kernel of the generator actions on degree-p forms (the trivial
// isotypic summand). With no generators this is the full space.
Subspace trivial_summand(const HolonomyAlgebra& h, int p);

// Orthonormal basis (as n²-columns) of { C : [C, g] = 0 for all generators }.
Eigen::MatrixXd commutant_basis(const HolonomyAlgebra& h);

// Dimension of the commutant on vectors: 1 detects an irreducible action of
// real type (Schur).
int commutant_dim_on_vectors(const HolonomyAlgebra& h);

struct KahlerDetection {
  bool kahler = false;
  std::optional<Eigen::MatrixXd> j0;  // skew, j0² = -id, commutes with h
  // Skew commutant is nonzero but no complex structure was found numerically.
  bool inconclusive = false;
};

// Searches the skew part of the commutant for a compatible complex
// structure. Any invertible skew commutant element C yields one via the
// polar-type normalization J = C (-C²)^{-1/2}.
KahlerDetection is_kahler(const HolonomyAlgebra& h, std::uint64_t seed = 0);

}  // namespace kform
