#include "kform/form_operators.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "kform/combinatorics.hpp"

namespace kform {

SkewEndo SkewEndo::from_matrix(Eigen::MatrixXd m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SkewEndo: matrix not square");
  double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  if (m.size() && (m + m.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw std::invalid_argument("SkewEndo: matrix not skew-symmetric");
  return SkewEndo{std::move(m)};
}

SkewEndo SkewEndo::from_two_form(const Multivector& omega) {
  const int n = omega.n();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const auto& table = BasisTable::get(n);
  const auto& c = omega.coeffs(2);
  for (int r = 0; r < c.size(); ++r) {
    auto idx = mask_to_indices(table.mask(2, r));
    m(idx[1] - 1, idx[0] - 1) = c[r];
    m(idx[0] - 1, idx[1] - 1) = -c[r];
  }
  return SkewEndo{std::move(m)};
}

Multivector SkewEndo::to_two_form() const {
  const int nn = n();
  Multivector omega(nn);
  const auto& table = BasisTable::get(nn);
  auto& c = omega.coeffs(2);
  for (int r = 0; r < c.size(); ++r) {
    auto idx = mask_to_indices(table.mask(2, r));
    c[r] = mat(idx[1] - 1, idx[0] - 1);
  }
  return omega;
}

Multivector rho_action(const SkewEndo& a, const Multivector& u) {
  const int n = u.n();
  if (a.n() != n) throw std::invalid_argument("rho_action: dimension mismatch");
  const auto& table = BasisTable::get(n);
  Multivector out(n);
  for (int p = 1; p <= n; ++p) {
    const auto& cu = u.coeffs(p);
    auto& co = out.coeffs(p);
    for (int r = 0; r < cu.size(); ++r) {
      double cval = cu[r];
      if (cval == 0.0) continue;
      std::uint32_t t_mask = table.mask(p, r);
      // Derivation: replace each factor e_t by A e_t.
      for (std::uint32_t rest = t_mask; rest;) {
        std::uint32_t bit = rest & (~rest + 1);
        rest ^= bit;
        int t = 1 + std::countr_zero(bit);
        int cs = contract_sign(t, t_mask);
        std::uint32_t without = t_mask ^ bit;
        for (int k = 1; k <= n; ++k) {
          double akt = a.mat(k - 1, t - 1);
          if (akt == 0.0) continue;
          std::uint32_t kb = 1u << (k - 1);
          if (without & kb) continue;
          int ws = wedge_sign(kb, without);
          co[table.rank(without | kb)] += cval * akt * cs * ws;
        }
      }
    }
  }
  return out;
}

Multivector curv_action(const CurvatureTensor& r, const Vector& x, const Vector& y,
                        const Multivector& u) {
  const int n = u.n();
  if (r.n() != n || x.size() != n || y.size() != n)
    throw std::invalid_argument("curv_action: dimension mismatch");
  Multivector vx(n), vy(n);
  vx.coeffs(1) = x;
  vy.coeffs(1) = y;
  Multivector sigma = r.apply_to_two_form(wedge(vx, vy));
  return -rho_action(SkewEndo::from_two_form(sigma), u);
}

Multivector r_plus(const CurvatureTensor& r, const Vector& x, const Multivector& u) {
  const int n = u.n();
  if (r.n() != n || x.size() != n)
    throw std::invalid_argument("r_plus: dimension mismatch");
  Multivector out(n);
  for (int i = 1; i <= n; ++i) {
    Vector ei = Vector::Zero(n);
    ei[i - 1] = 1.0;
    Multivector basis_i(n);
    basis_i.coeffs(1) = ei;
    out += wedge(basis_i, curv_action(r, x, ei, u));
  }
  return out;
}

namespace {

// Matrix of a degree-homogeneous map, columns indexed by the basis of
// Λ^{p_in}, rows by Λ^{p_out}.
FormOperator build_operator(int n, int p_in, int p_out,
                            const std::function<Multivector(const Multivector&)>& f) {
  const auto& table = BasisTable::get(n);
  const int din = table.dim(p_in);
  const int dout = table.dim(p_out);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dout, din);
  for (int c = 0; c < din; ++c) {
    Multivector b(n);
    b.coeffs(p_in)[c] = 1.0;
    Multivector img = f(b);
    if (dout > 0) m.col(c) = img.coeffs(p_out);
  }
  return FormOperator{n, p_in, p_out, std::move(m)};
}

}  // namespace

Multivector FormOperator::apply(const Multivector& u) const {
  if (u.n() != n) throw std::invalid_argument("FormOperator: dimension mismatch");
  Multivector out(n);
  if (p_out >= 0 && p_out <= n && p_in >= 0 && p_in <= n)
    out.coeffs(p_out) = matrix * u.coeffs(p_in);
  return out;
}

FormOperator wedge_matrix(int n, int i, int p) {
  Vector ei = Vector::Zero(n);
  ei[i - 1] = 1.0;
  Multivector basis_i(n);
  basis_i.coeffs(1) = ei;
  return build_operator(n, p, p + 1,
                        [&](const Multivector& u) { return wedge(basis_i, u); });
}

FormOperator contraction_matrix(int n, int i, int p) {
  Vector ei = Vector::Zero(n);
  ei[i - 1] = 1.0;
  return build_operator(n, p, p - 1,
                        [&](const Multivector& u) { return contract(ei, u); });
}

FormOperator rho_matrix(const SkewEndo& a, int p) {
  return build_operator(a.n(), p, p,
                        [&](const Multivector& u) { return rho_action(a, u); });
}

FormOperator r_plus_matrix(const CurvatureTensor& r, int i, int p) {
  Vector ei = Vector::Zero(r.n());
  ei[i - 1] = 1.0;
  return build_operator(r.n(), p, p + 1,
                        [&](const Multivector& u) { return r_plus(r, ei, u); });
}

FormOperator curv_action_matrix(const CurvatureTensor& r, int i, int j, int p) {
  Vector ei = Vector::Zero(r.n()), ej = Vector::Zero(r.n());
  ei[i - 1] = 1.0;
  ej[j - 1] = 1.0;
  return build_operator(r.n(), p, p,
                        [&](const Multivector& u) { return curv_action(r, ei, ej, u); });
}

Eigen::MatrixXd casimir(const CurvatureTensor& r, int p) {
  const int n = r.n();
  const auto& table = BasisTable::get(n);
  const int d = table.dim(p);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
  if (p < 0 || p > n) return q;
  for (int i = 1; i <= n; ++i)
    q -= contraction_matrix(n, i, p + 1).matrix * r_plus_matrix(r, i, p).matrix;
  return q;
}

KahlerOperators kahler_ops(const Eigen::MatrixXd& j0) {
  const int n = static_cast<int>(j0.rows());
  if (j0.cols() != n) throw std::invalid_argument("kahler_ops: matrix not square");
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  if ((j0 + j0.transpose()).cwiseAbs().maxCoeff() > 1e-10 ||
      (j0 * j0 + id).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("kahler_ops: not an orthogonal complex structure");

  SkewEndo a{j0};
  Multivector kappa = a.to_two_form();
  KahlerOperators ops;
  for (int p = 0; p <= n; ++p) {
    ops.j.push_back(rho_matrix(a, p));
    ops.l.push_back(build_operator(n, p, p + 2,
                                   [&](const Multivector& u) { return wedge(kappa, u); }));
    // lam = (1/2) Σ_i (j0 e_i) ⌟ e_i ⌟ ·, the metric adjoint of l.
    ops.lam.push_back(build_operator(n, p, p - 2, [&](const Multivector& u) {
      Multivector acc(n);
      for (int i = 0; i < n; ++i) {
        Vector ei = Vector::Zero(n);
        ei[i] = 1.0;
        acc += contract(j0.col(i), contract(ei, u));
      }
      acc *= 0.5;
      return acc;
    }));
  }
  return ops;
}

}  // namespace kform
