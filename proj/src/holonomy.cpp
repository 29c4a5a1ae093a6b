#include "kform/holonomy.hpp"

#include <cmath>
#include <random>

#include "kform/combinatorics.hpp"
#include "kform/linalg.hpp"

namespace kform {

namespace {

Eigen::VectorXd vectorize(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd devectorize(const Eigen::VectorXd& v, int n) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n);
}

}  // namespace

HolonomyAlgebra generate(const CurvatureTensor& r) {
  const int n = r.n();
  const int d = static_cast<int>(binomial(n, 2));
  const int so_dim = n * (n - 1) / 2;

  Eigen::MatrixXd seeds(n * n, d);
  for (int c = 0; c < d; ++c) {
    Multivector omega(n);
    omega.coeffs(2) = r.op2().col(c);
    seeds.col(c) = vectorize(SkewEndo::from_two_form(omega).mat);
  }
  Eigen::MatrixXd basis = linalg::column_span(seeds);

  // Bracket closure; each pass either grows the span or stops, so the number
  // of passes is bounded by dim so(n).
  for (int pass = 0; pass < so_dim && basis.cols() > 0; ++pass) {
    const int k = static_cast<int>(basis.cols());
    if (k >= so_dim) break;
    Eigen::MatrixXd candidates(n * n, k + k * k);
    candidates.leftCols(k) = basis;
    int c = k;
    for (int a = 0; a < k; ++a) {
      Eigen::MatrixXd ga = devectorize(basis.col(a), n);
      for (int b = 0; b < k; ++b) {
        Eigen::MatrixXd gb = devectorize(basis.col(b), n);
        candidates.col(c++) = vectorize(ga * gb - gb * ga);
      }
    }
    Eigen::MatrixXd closed = linalg::column_span(candidates);
    if (closed.cols() == basis.cols()) break;
    basis = std::move(closed);
  }

  HolonomyAlgebra h{n, {}};
  for (int c = 0; c < basis.cols(); ++c)
    h.generators.push_back(SkewEndo::from_matrix(devectorize(basis.col(c), n)));
  return h;
}

Subspace trivial_summand(const HolonomyAlgebra& h, int p) {
  const int n = h.n;
  const int d = BasisTable::get(n).dim(p);
  if (h.generators.empty()) return Subspace::full(n, p);
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(h.dim()) * d, d);
  for (int g = 0; g < h.dim(); ++g)
    stacked.middleRows(static_cast<Eigen::Index>(g) * d, d) =
        rho_matrix(h.generators[g], p).matrix;
  return Subspace(n, p, linalg::nullspace(stacked));
}

Eigen::MatrixXd commutant_basis(const HolonomyAlgebra& h) {
  const int n = h.n;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  if (h.generators.empty()) return Eigen::MatrixXd::Identity(n * n, n * n);
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(h.dim()) * n * n, n * n);
  for (int g = 0; g < h.dim(); ++g) {
    const Eigen::MatrixXd& gm = h.generators[g].mat;
    // vec(gC - Cg) = (I ⊗ g - gᵀ ⊗ I) vec(C), column-major vec.
    Eigen::MatrixXd constraint = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int col = 0; col < n; ++col)
      constraint.block(col * n, col * n, n, n) = gm;
    for (int bi = 0; bi < n; ++bi)
      for (int bj = 0; bj < n; ++bj)
        constraint.block(bi * n, bj * n, n, n).diagonal().array() -= gm(bj, bi);
    stacked.middleRows(static_cast<Eigen::Index>(g) * n * n, n * n) = constraint;
  }
  return linalg::nullspace(stacked);
}

int commutant_dim_on_vectors(const HolonomyAlgebra& h) {
  return static_cast<int>(commutant_basis(h).cols());
}

KahlerDetection is_kahler(const HolonomyAlgebra& h, std::uint64_t seed) {
  const int n = h.n;
  Eigen::MatrixXd comm = commutant_basis(h);

  // The commutant is transpose-closed, so skew parts of its elements stay
  // inside it.
  Eigen::MatrixXd skew_parts(n * n, comm.cols());
  for (int c = 0; c < comm.cols(); ++c) {
    Eigen::MatrixXd m = devectorize(comm.col(c), n);
    skew_parts.col(c) = vectorize(0.5 * (m - m.transpose()));
  }
  Eigen::MatrixXd skew = linalg::column_span(skew_parts);
  if (skew.cols() == 0) return {};

  auto try_candidate = [&](const Eigen::MatrixXd& c) -> std::optional<Eigen::MatrixXd> {
    Eigen::MatrixXd s = -c * c;  // = cᵀc, positive definite iff c invertible
    Eigen::MatrixXd inv_sqrt;
    if (!linalg::inverse_sqrt_spd(s, &inv_sqrt)) return std::nullopt;
    Eigen::MatrixXd j = c * inv_sqrt;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    if ((j * j + id).cwiseAbs().maxCoeff() > 1e-8) return std::nullopt;
    if ((j + j.transpose()).cwiseAbs().maxCoeff() > 1e-8) return std::nullopt;
    for (const auto& g : h.generators)
      if ((j * g.mat - g.mat * j).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + g.mat.norm()))
        return std::nullopt;
    return j;
  };

  for (int c = 0; c < skew.cols(); ++c)
    if (auto j = try_candidate(devectorize(skew.col(c), n)))
      return {true, *j, false};

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return 2.0 * (static_cast<double>(rng()) / 18446744073709551616.0) - 1.0;
  };
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::VectorXd coef(skew.cols());
    for (int c = 0; c < coef.size(); ++c) coef[c] = uniform();
    if (auto j = try_candidate(devectorize(skew * coef, n))) return {true, *j, false};
  }
  return {false, std::nullopt, true};
}

}  // namespace kform
