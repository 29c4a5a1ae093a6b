#include "kform/multivector.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kform {

namespace {

void check_same_space(const Multivector& a, const Multivector& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("multivectors live over different dimensions");
}

}  // namespace

Multivector::Multivector(int n) : n_(n) {
  if (n < 1 || n > max_dimension())
    throw std::invalid_argument("Multivector: dimension out of range");
  const auto& table = BasisTable::get(n);
  coeffs_.resize(n + 1);
  for (int p = 0; p <= n; ++p) coeffs_[p] = Eigen::VectorXd::Zero(table.dim(p));
}

Multivector Multivector::scalar(int n, double c) {
  Multivector u(n);
  u.coeffs_[0](0) = c;
  return u;
}

Multivector Multivector::basis(int n, std::initializer_list<int> indices) {
  return basis_mask(n, indices_to_mask(std::vector<int>(indices), n));
}

Multivector Multivector::basis_mask(int n, std::uint32_t mask) {
  Multivector u(n);
  const auto& table = BasisTable::get(n);
  int p = std::popcount(mask);
  if (p > n) throw std::invalid_argument("basis mask out of range");
  u.coeffs_[p](table.rank(mask)) = 1.0;
  return u;
}

Multivector Multivector::from_vector(const Vector& x) {
  Multivector u(static_cast<int>(x.size()));
  u.coeffs_[1] = x;
  return u;
}

Multivector Multivector::volume(int n) {
  Multivector u(n);
  u.coeffs_[n](0) = 1.0;
  return u;
}

double Multivector::coeff(std::initializer_list<int> indices) const {
  const auto& table = BasisTable::get(n_);
  std::uint32_t mask = indices_to_mask(std::vector<int>(indices), n_);
  return coeffs_[std::popcount(mask)](table.rank(mask));
}

Multivector Multivector::grade(int p) const {
  Multivector u(n_);
  if (p >= 0 && p <= n_) u.coeffs_[p] = coeffs_[p];
  return u;
}

bool Multivector::is_homogeneous(double tol) const {
  int found = -1;
  for (int p = 0; p <= n_; ++p) {
    if (coeffs_[p].size() && coeffs_[p].lpNorm<Eigen::Infinity>() > tol) {
      if (found >= 0) return false;
      found = p;
    }
  }
  return true;
}

int Multivector::degree(double tol) const {
  for (int p = n_; p >= 0; --p)
    if (coeffs_[p].size() && coeffs_[p].lpNorm<Eigen::Infinity>() > tol) return p;
  return 0;
}

bool Multivector::is_zero(double tol) const {
  for (int p = 0; p <= n_; ++p)
    if (coeffs_[p].size() && coeffs_[p].lpNorm<Eigen::Infinity>() > tol) return false;
  return true;
}

double Multivector::norm() const { return std::sqrt(inner(*this, *this)); }

Vector Multivector::to_vector() const {
  for (int p = 0; p <= n_; ++p)
    if (p != 1 && coeffs_[p].size() && coeffs_[p].lpNorm<Eigen::Infinity>() > 0)
      throw std::invalid_argument("to_vector: element is not a pure 1-form");
  return coeffs_[1];
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  check_same_space(*this, rhs);
  for (int p = 0; p <= n_; ++p) coeffs_[p] += rhs.coeffs_[p];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  check_same_space(*this, rhs);
  for (int p = 0; p <= n_; ++p) coeffs_[p] -= rhs.coeffs_[p];
  return *this;
}

Multivector& Multivector::operator*=(double c) {
  for (int p = 0; p <= n_; ++p) coeffs_[p] *= c;
  return *this;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator*(double c, Multivector a) { return a *= c; }
Multivector operator-(Multivector a) { return a *= -1.0; }

Multivector wedge(const Multivector& a, const Multivector& b) {
  check_same_space(a, b);
  const int n = a.n();
  const auto& table = BasisTable::get(n);
  Multivector out(n);
  for (int p = 0; p <= n; ++p) {
    const auto& ca = a.coeffs(p);
    if (!ca.size() || ca.isZero(0)) continue;
    for (int q = 0; p + q <= n; ++q) {
      const auto& cb = b.coeffs(q);
      if (!cb.size() || cb.isZero(0)) continue;
      auto& co = out.coeffs(p + q);
      for (int ra = 0; ra < ca.size(); ++ra) {
        if (ca(ra) == 0.0) continue;
        std::uint32_t ma = table.mask(p, ra);
        for (int rb = 0; rb < cb.size(); ++rb) {
          if (cb(rb) == 0.0) continue;
          std::uint32_t mb = table.mask(q, rb);
          int sign = wedge_sign(ma, mb);
          if (sign) co(table.rank(ma | mb)) += sign * ca(ra) * cb(rb);
        }
      }
    }
  }
  return out;
}

Multivector contract(const Vector& x, const Multivector& u) {
  const int n = u.n();
  if (x.size() != n) throw std::invalid_argument("contract: dimension mismatch");
  const auto& table = BasisTable::get(n);
  Multivector out(n);
  for (int p = 1; p <= n; ++p) {
    const auto& cu = u.coeffs(p);
    if (!cu.size() || cu.isZero(0)) continue;
    auto& co = out.coeffs(p - 1);
    for (int r = 0; r < cu.size(); ++r) {
      if (cu(r) == 0.0) continue;
      std::uint32_t mask = table.mask(p, r);
      for (int i = 1; i <= n; ++i) {
        if (!(mask & (1u << (i - 1))) || x(i - 1) == 0.0) continue;
        int sign = contract_sign(i, mask);
        co(table.rank(mask ^ (1u << (i - 1)))) += sign * x(i - 1) * cu(r);
      }
    }
  }
  return out;
}

double inner(const Multivector& a, const Multivector& b) {
  check_same_space(a, b);
  double s = 0.0;
  for (int p = 0; p <= a.n(); ++p)
    if (a.coeffs(p).size()) s += a.coeffs(p).dot(b.coeffs(p));
  return s;
}

Multivector hodge(const Multivector& u) {
  if (!u.is_homogeneous(0.0))
    throw std::invalid_argument("hodge: argument must be homogeneous");
  const int n = u.n();
  const int p = u.degree();
  const auto& table = BasisTable::get(n);
  const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
  Multivector out(n);
  const auto& cu = u.coeffs(p);
  auto& co = out.coeffs(n - p);
  for (int r = 0; r < cu.size(); ++r) {
    if (cu(r) == 0.0) continue;
    std::uint32_t mask = table.mask(p, r);
    std::uint32_t comp = all ^ mask;
    // e_T ∧ hodge(e_T) = volume, so the sign is that of e_T ∧ e_{T^c}.
    co(table.rank(comp)) += wedge_sign(mask, comp) * cu(r);
  }
  return out;
}

Multivector random_form(int n, int p, std::mt19937_64& rng) {
  Multivector u(n);
  auto& c = u.coeffs(p);
  // Uniform in [-1, 1]; mt19937_64 output is identical on all platforms.
  for (int i = 0; i < c.size(); ++i)
    c(i) = 2.0 * (static_cast<double>(rng()) / 18446744073709551616.0) - 1.0;
  double norm = c.norm();
  if (norm < 1e-12) {
    c.setZero();
    c(0) = 1.0;
    return u;
  }
  c /= norm;
  return u;
}

Vector random_unit_vector(int n, std::mt19937_64& rng) {
  return random_form(n, 1, rng).coeffs(1);
}

std::string to_string(const Multivector& u, double tol) {
  std::ostringstream os;
  bool first = true;
  for (int p = 0; p <= u.n(); ++p) {
    const auto& c = u.coeffs(p);
    const auto& table = BasisTable::get(u.n());
    for (int r = 0; r < c.size(); ++r) {
      double v = c(r);
      if (std::abs(v) <= tol) continue;
      if (!first) os << (v >= 0 ? " + " : " - ");
      else if (v < 0) os << "-";
      double av = std::abs(v);
      std::string basis_name;
      if (p > 0) {
        std::ostringstream bn;
        bool inner_first = true;
        for (int idx : mask_to_indices(table.mask(p, r))) {
          if (!inner_first) bn << "^";
          bn << "e" << idx;
          inner_first = false;
        }
        basis_name = bn.str();
      }
      if (p == 0 || std::abs(av - 1.0) > tol) {
        os << av;
        if (p > 0) os << " ";
      }
      os << basis_name;
      first = false;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace kform
