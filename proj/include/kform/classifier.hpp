#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kform/curvature.hpp"
#include "kform/holonomy.hpp"
#include "kform/subspace.hpp"

namespace kform {

// Dimension history of the subspace-pair iteration; steps[k] = {k, dimE_k,
// dimF_k}, starting at k = 0 with (E_0, F_0). converged_at is the first k
// whose dimensions repeat the previous step's.
struct IterationTrace {
  std::vector<std::array<int, 3>> steps;
  int converged_at = 0;
};

enum class Branch {
  kParallelOnly,   // the degree-raising operator dies on E (or F = 0)
  kSpaceForm,      // E is everything and the Weyl part vanishes
  kIntermediate,   // proper nontrivial E
  kInconsistent,   // full E with nonzero Weyl in 2 <= p <= n-2: invalid input
};

std::string to_string(Branch b);

// Degree-p kernel of (X,Y) -> p·R_{X,Y}u + X⌟R⁺(Y)u - Y⌟R⁺(X)u over basis
// pairs: p-forms whose candidate derivative behaves like a Killing form's.
Subspace e0(const CurvatureTensor& r, int p);

// Degree-(p+1) kernel of (X,Y) -> p·R_{X,Y}v + R⁺(X)(Y⌟v) - R⁺(Y)(X⌟v).
// The argument p names the form degree the candidates derive from.
Subspace f0(const CurvatureTensor& r, int p);

// One step of the mutual refinement: keep u ∈ E with R⁺(e_i)u ∈ F for all i,
// and v ∈ F with e_i⌟v ∈ E for all i (membership imposed for basis
// directions; vanishing of the stacked defect matrix for linear exactness).
std::pair<Subspace, Subspace> refine(const CurvatureTensor& r, const Subspace& e,
                                     const Subspace& f);

struct FixedPointResult {
  Subspace e;
  Subspace f;
  IterationTrace trace;
};

// Iterate refine from (e0, f0) until the dimensions stabilize.
FixedPointResult fixed_point(const CurvatureTensor& r, int p);

struct ClassificationReport {
  std::string model;
  int n = 0;
  int p = 0;
  int dim_e0 = 0, dim_f0 = 0, dim_e = 0, dim_f = 0;
  Branch branch = Branch::kIntermediate;
  bool kahler = false;
  bool irreducible = false;
  bool r_plus_vanishes_on_e = false;
  double weyl_norm = 0.0;
  int holonomy_dim = 0;
  std::map<std::string, double> residuals;
  IterationTrace trace;
};

ClassificationReport classify(const CurvatureTensor& r, int p,
                              const std::string& model_name = "");

// Smallest k in 1..max(1, n-p) with R⁺(Y_1)...R⁺(Y_k) u = 0 for all basis
// tuples and u ∈ E; nullopt when even the (n-p)-fold products survive (for
// constant curvature they climb all the way to the volume form).
std::optional<int> nilpotency_degree(const CurvatureTensor& r, const Subspace& e);

// Identity of the degree-raising commutator with the curvature term,
// R⁺∧𝓘 = 𝓘∧R⁺ + R, on degree p: max relative defect over basis pairs (X,Y)
// and a seeded sample of forms. Holds for every first-Bianchi tensor.
double check_lemma_l1(const CurvatureTensor& r, int p, int samples = 32,
                      std::uint64_t seed = 0);

// For invariant E: the induced [R⁺,𝓘] into Hom(E, Λ^p/E) is symmetric in
// (X,Y). Residual = max norm of the E-orthogonal part of the antisymmetric
// combination over basis pairs and basis u ∈ E.
double check_sym_corollary(const CurvatureTensor& r, const Subspace& e);

// Twice-contracted degree-raising operator collapses modulo
// span 𝓘(E) + span 𝓘R⁺𝓘(E): residual = max orthogonal component of
// Z⌟Y⌟R⁺(X)u over basis X,Y,Z and basis u ∈ E.
double check_lemma2(const CurvatureTensor& r, const Subspace& e);

// k-fold contraction of the k-fold raised E lands back in E:
// X_1⌟..⌟X_k⌟ R⁺(Y_1)..R⁺(Y_k) u ∈ E, sampled directions, basis u ∈ E.
double check_cont(const CurvatureTensor& r, const Subspace& e, int k,
                  int samples = 32, std::uint64_t seed = 0);

struct P1Result {
  bool applicable = false;
  std::string reason;    // why the check was skipped, when not applicable
  double residual = 0.0;
};

// For an irreducible (real type, non-Kähler) action with nonzero trivial
// summand W in degree q+1: <X⌟v_a, Y⌟v_b> = ((q+1)/n) <X,Y> δ_ab over an
// orthonormal basis v of W.
P1Result check_p1(const HolonomyAlgebra& h, int q);

}  // namespace kform
