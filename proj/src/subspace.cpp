#include "kform/subspace.hpp"

#include <stdexcept>

namespace kform {

Subspace::Subspace(int n, int p, Eigen::MatrixXd orthonormal_basis)
    : n_(n), p_(p), basis_(std::move(orthonormal_basis)) {
  const auto& table = BasisTable::get(n);
  if (p < 0 || p > n) throw std::invalid_argument("Subspace: bad degree");
  if (basis_.rows() != table.dim(p))
    throw std::invalid_argument("Subspace: basis row count does not match degree");
  if (basis_.cols()) {
    Eigen::MatrixXd gram = basis_.transpose() * basis_;
    gram -= Eigen::MatrixXd::Identity(basis_.cols(), basis_.cols());
    if (gram.norm() > 1e-8)
      throw std::invalid_argument("Subspace: basis is not orthonormal");
  }
}

Subspace Subspace::full(int n, int p) {
  const auto& table = BasisTable::get(n);
  return Subspace(n, p, Eigen::MatrixXd::Identity(table.dim(p), table.dim(p)));
}

Subspace Subspace::zero_subspace(int n, int p) {
  const auto& table = BasisTable::get(n);
  return Subspace(n, p, Eigen::MatrixXd::Zero(table.dim(p), 0));
}

Subspace Subspace::from_span(int n, int p, const Eigen::MatrixXd& vectors,
                             double rel_cutoff) {
  const auto& table = BasisTable::get(n);
  if (vectors.rows() != table.dim(p))
    throw std::invalid_argument("from_span: row count does not match degree");
  return Subspace(n, p, linalg::column_span(vectors, rel_cutoff));
}

Subspace Subspace::from_forms(const std::vector<Multivector>& forms, int p,
                              double rel_cutoff) {
  if (forms.empty()) throw std::invalid_argument("from_forms: no forms given");
  const int n = forms.front().n();
  const auto& table = BasisTable::get(n);
  Eigen::MatrixXd m(table.dim(p), forms.size());
  for (std::size_t k = 0; k < forms.size(); ++k) m.col(k) = forms[k].coeffs(p);
  return from_span(n, p, m, rel_cutoff);
}

Multivector Subspace::basis_form(int k) const {
  Multivector u(n_);
  u.coeffs(p_) = basis_.col(k);
  return u;
}

Eigen::MatrixXd Subspace::projector() const { return basis_ * basis_.transpose(); }

double Subspace::residual(const Eigen::VectorXd& v) const {
  if (!basis_.cols()) return v.norm();
  return (v - basis_ * (basis_.transpose() * v)).norm();
}

double Subspace::residual(const Multivector& u) const {
  double r2 = 0.0;
  for (int q = 0; q <= n_; ++q) {
    if (!u.coeffs(q).size()) continue;
    if (q == p_) {
      double r = residual(u.coeffs(q));
      r2 += r * r;
    } else {
      r2 += u.coeffs(q).squaredNorm();  // off-degree content is all defect
    }
  }
  return std::sqrt(r2);
}

bool Subspace::contains(const Eigen::VectorXd& v, double tol) const {
  return residual(v) <= tol * (1.0 + v.norm());
}

double projector_distance(const Subspace& a, const Subspace& b) {
  if (a.n() != b.n() || a.p() != b.p())
    throw std::invalid_argument("projector_distance: mismatched spaces");
  return (a.projector() - b.projector()).norm();
}

Subspace volume_contractions(int n, int p) {
  const auto& table = BasisTable::get(n);
  if (p < 0 || p > n) throw std::invalid_argument("volume_contractions: bad degree");
  std::vector<Multivector> spans;
  Multivector vol = Multivector::volume(n);
  for (std::uint32_t mask : table.masks(n - p)) {
    Multivector u = vol;
    // Contract by the chosen indices, outermost last.
    auto idx = mask_to_indices(mask);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
      Vector x = Vector::Zero(n);
      x(*it - 1) = 1.0;
      u = contract(x, u);
    }
    spans.push_back(u);
  }
  return Subspace::from_forms(spans, p);
}

}  // namespace kform
