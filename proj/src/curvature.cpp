#include "kform/curvature.hpp"

#include "kform/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kform {

namespace {

// Lexicographic rank of the pair i < j among the 2-element subsets of 1..n.
int pair_rank(int n, int i, int j) {
  return (i - 1) * n - i * (i - 1) / 2 + (j - i - 1);
}

int two_form_dim(int n) { return static_cast<int>(binomial(n, 2)); }

// Dense 4-index view T_{ijkl} = <R(e_i∧e_j), e_k∧e_l> used by the projection
// and decomposition code. Indices 0-based internally.
struct Tensor4 {
  int n;
  std::vector<double> v;

  explicit Tensor4(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_ * n_, 0.0) {}
  double& at(int i, int j, int k, int l) {
    return v[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  }
  double at(int i, int j, int k, int l) const {
    return v[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  }
};

Tensor4 to_tensor4(int n, const Eigen::MatrixXd& op2) {
  Tensor4 t(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          double q = op2(pair_rank(n, i, j), pair_rank(n, k, l));
          t.at(i - 1, j - 1, k - 1, l - 1) = q;
          t.at(j - 1, i - 1, k - 1, l - 1) = -q;
          t.at(i - 1, j - 1, l - 1, k - 1) = -q;
          t.at(j - 1, i - 1, l - 1, k - 1) = q;
        }
  return t;
}

Eigen::MatrixXd to_op2(const Tensor4& t) {
  const int n = t.n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(two_form_dim(n), two_form_dim(n));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l)
          m(pair_rank(n, i, j), pair_rank(n, k, l)) = t.at(i - 1, j - 1, k - 1, l - 1);
  return m;
}

// Orthogonal projection of a pair-symmetric 4-tensor onto the totally
// antisymmetric summand: b(T) = (1/3) cyclic sum over the first three slots.
Tensor4 bianchi_part(const Tensor4& t) {
  const int n = t.n;
  Tensor4 b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          b.at(i, j, k, l) =
              (t.at(i, j, k, l) + t.at(j, k, i, l) + t.at(k, i, j, l)) / 3.0;
  return b;
}

// Kulkarni-Nomizu product of symmetric 2-tensors.
Tensor4 kulkarni_nomizu(const Eigen::MatrixXd& h, const Eigen::MatrixXd& k) {
  const int n = static_cast<int>(h.rows());
  Tensor4 t(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          t.at(a, b, c, d) =
              h(a, c) * k(b, d) + h(b, d) * k(a, c) - h(a, d) * k(b, c) - h(b, c) * k(a, d);
  return t;
}

Tensor4 subtract(const Tensor4& a, const Tensor4& b) {
  Tensor4 r(a.n);
  for (std::size_t i = 0; i < a.v.size(); ++i) r.v[i] = a.v[i] - b.v[i];
  return r;
}

}  // namespace

CurvatureTensor::CurvatureTensor(int n, Eigen::MatrixXd op2)
    : n_(n), op2_(std::move(op2)) {
  // Derived data. Ric(X) = Σ_i R_{X,e_i} e_i reads off op2 as
  // Ric_{kl} = Σ_i <R(e_k∧e_i), e_l∧e_i>.
  ricci_ = Eigen::MatrixXd::Zero(n_, n_);
  for (int k = 1; k <= n_; ++k)
    for (int l = 1; l <= n_; ++l)
      for (int i = 1; i <= n_; ++i) ricci_(k - 1, l - 1) += entry(k, i, l, i);
  scalar_ = ricci_.trace();

  if (n_ >= 1) {
    double r = scalar_ / n_;
    Eigen::MatrixXd dev = ricci_ - r * Eigen::MatrixXd::Identity(n_, n_);
    if (dev.norm() <= 1e-8 * (1.0 + ricci_.norm())) einstein_ = r;
  }

  // Ricci-free summand (orthogonal complement of the scalar and
  // traceless-Ricci Kulkarni-Nomizu parts).
  weyl_op2_ = Eigen::MatrixXd::Zero(op2_.rows(), op2_.cols());
  if (n_ >= 2) {
    Tensor4 t = to_tensor4(n_, op2_);
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n_, n_);
    Tensor4 s_part = kulkarni_nomizu(id, id);
    double s_coef = scalar_ / (2.0 * n_ * (n_ - 1));
    for (auto& x : s_part.v) x *= s_coef;
    Tensor4 w = subtract(t, s_part);
    if (n_ > 2) {
      Eigen::MatrixXd ric0 = ricci_ - (scalar_ / n_) * id;
      Tensor4 e_part = kulkarni_nomizu(ric0, id);
      for (auto& x : e_part.v) x /= (n_ - 2);
      w = subtract(w, e_part);
    }
    weyl_op2_ = to_op2(w);
  }
}

CurvatureTensor CurvatureTensor::from_op2(int n, Eigen::MatrixXd op2) {
  if (n < 0 || (n > 0 && n > max_dimension()))
    throw std::invalid_argument("from_op2: dimension out of range");
  const int d = two_form_dim(n);
  if (op2.rows() != d || op2.cols() != d)
    throw std::invalid_argument("from_op2: matrix size does not match dimension");
  double scale = std::max(1.0, op2.size() ? op2.cwiseAbs().maxCoeff() : 0.0);
  if (op2.size() && (op2 - op2.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("from_op2: operator is not symmetric");
  CurvatureTensor r(n, std::move(op2));
  if (r.bianchi_residual() > 1e-10)
    throw std::invalid_argument("from_op2: first Bianchi identity violated");
  return r;
}

CurvatureTensor CurvatureTensor::from_components(int n,
                                                 const std::vector<CurvatureEntry>& entries) {
  if (n < 1 || n > max_dimension())
    throw std::invalid_argument("from_components: dimension out of range");
  // Accumulate canonical representatives (i<j, k<l, (i,j) <= (k,l)).
  std::map<std::array<int, 4>, double> canon;
  for (const auto& e : entries) {
    for (int v : {e.i, e.j, e.k, e.l})
      if (v < 1 || v > n) throw std::invalid_argument("from_components: index out of range");
    if (e.i == e.j || e.k == e.l) {
      if (e.value != 0.0)
        throw std::invalid_argument("from_components: repeated index with nonzero value");
      continue;
    }
    int i = e.i, j = e.j, k = e.k, l = e.l;
    double v = e.value;
    if (i > j) { std::swap(i, j); v = -v; }
    if (k > l) { std::swap(k, l); v = -v; }
    if (std::array<int, 2>{i, j} > std::array<int, 2>{k, l}) {
      std::swap(i, k);
      std::swap(j, l);
    }
    std::array<int, 4> key{i, j, k, l};
    auto it = canon.find(key);
    if (it == canon.end()) {
      canon.emplace(key, v);
    } else if (std::abs(it->second - v) > 1e-12 * std::max(1.0, std::abs(it->second))) {
      std::ostringstream msg;
      msg << "from_components: inconsistent duplicate entry (" << e.i << "," << e.j << ","
          << e.k << "," << e.l << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  const int d = two_form_dim(n);
  Eigen::MatrixXd op2 = Eigen::MatrixXd::Zero(d, d);
  for (const auto& [key, v] : canon) {
    int r1 = pair_rank(n, key[0], key[1]);
    int r2 = pair_rank(n, key[2], key[3]);
    op2(r1, r2) = v;
    op2(r2, r1) = v;
  }
  return from_op2(n, std::move(op2));
}

CurvatureTensor CurvatureTensor::flat(int n) {
  if (n < 0 || n > max_dimension())
    throw std::invalid_argument("flat: dimension out of range");
  const int d = two_form_dim(n);
  return CurvatureTensor(n, Eigen::MatrixXd::Zero(d, d));
}

CurvatureTensor CurvatureTensor::constant_curvature(int n, double kappa) {
  if (n < 2) throw std::invalid_argument("constant_curvature: need n >= 2");
  if (n > max_dimension())
    throw std::invalid_argument("constant_curvature: dimension out of range");
  const int d = two_form_dim(n);
  return CurvatureTensor(n, kappa * Eigen::MatrixXd::Identity(d, d));
}

CurvatureTensor CurvatureTensor::fubini_study(int m) {
  if (m < 1) throw std::invalid_argument("fubini_study: need m >= 1");
  const int n = 2 * m;
  if (n > max_dimension())
    throw std::invalid_argument("fubini_study: dimension out of range");
  Eigen::MatrixXd j0 = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < m; ++k) {
    j0(2 * k + 1, 2 * k) = 1.0;
    j0(2 * k, 2 * k + 1) = -1.0;
  }
  // Constant holomorphic sectional curvature c = 4:
  // R(X,Y)Z = <Y,Z>X - <X,Z>Y + <JY,Z>JX - <JX,Z>JY - 2<JX,Y>JZ.
  auto r_cl = [&](int i, int j, int k, int l) {
    double v = 0.0;
    v += (j == k ? 1.0 : 0.0) * (i == l ? 1.0 : 0.0);
    v -= (i == k ? 1.0 : 0.0) * (j == l ? 1.0 : 0.0);
    v += j0(k, j) * j0(l, i);
    v -= j0(k, i) * j0(l, j);
    v -= 2.0 * j0(j, i) * j0(l, k);
    return v;
  };
  const int d = two_form_dim(n);
  Eigen::MatrixXd op2 = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l)
          op2(pair_rank(n, i, j), pair_rank(n, k, l)) =
              -r_cl(i - 1, j - 1, k - 1, l - 1);
  return from_op2(n, std::move(op2));
}

CurvatureTensor CurvatureTensor::product(const CurvatureTensor& a, const CurvatureTensor& b) {
  const int na = a.n(), nb = b.n();
  const int n = na + nb;
  if (n > max_dimension()) throw std::invalid_argument("product: dimension out of range");
  if (nb == 0) return a;
  if (na == 0) return b;
  const int d = two_form_dim(n);
  Eigen::MatrixXd op2 = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          double v = 0.0;
          if (j <= na && l <= na) v = a.entry(i, j, k, l);
          else if (i > na && k > na) v = b.entry(i - na, j - na, k - na, l - na);
          if (v != 0.0) op2(pair_rank(n, i, j), pair_rank(n, k, l)) = v;
        }
  return from_op2(n, std::move(op2));
}

CurvatureTensor CurvatureTensor::weyl4() {
  // Self-dual basis alpha = e12+e34, beta = e13-e24, gamma = e14+e23 in the
  // lexicographic pair coordinates (12,13,14,23,24,34).
  Eigen::VectorXd alpha(6), beta(6);
  alpha << 1, 0, 0, 0, 0, 1;
  beta << 0, 1, 0, 0, -1, 0;
  // Eigenvalue +1 on alpha, -1 on beta, 0 elsewhere; the 1/2 normalizes
  // |alpha|² = |beta|² = 2.
  Eigen::MatrixXd op2 = 0.5 * (alpha * alpha.transpose() - beta * beta.transpose());
  return from_op2(4, std::move(op2));
}

CurvatureTensor CurvatureTensor::embed_trivial(const CurvatureTensor& r, int new_n) {
  const int n0 = r.n();
  if (new_n < n0) throw std::invalid_argument("embed_trivial: target dimension too small");
  if (new_n > max_dimension())
    throw std::invalid_argument("embed_trivial: dimension out of range");
  const int d = two_form_dim(new_n);
  Eigen::MatrixXd op2 = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i <= n0; ++i)
    for (int j = i + 1; j <= n0; ++j)
      for (int k = 1; k <= n0; ++k)
        for (int l = k + 1; l <= n0; ++l)
          op2(pair_rank(new_n, i, j), pair_rank(new_n, k, l)) = r.entry(i, j, k, l);
  return from_op2(new_n, std::move(op2));
}

CurvatureTensor CurvatureTensor::random_curvature(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_curvature: need n >= 2");
  if (n > max_dimension())
    throw std::invalid_argument("random_curvature: dimension out of range");
  const int d = two_form_dim(n);
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return 2.0 * (static_cast<double>(rng()) / 18446744073709551616.0) - 1.0;
  };
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    m(i, i) = uniform();
    for (int j = i + 1; j < d; ++j) m(i, j) = m(j, i) = uniform();
  }
  Tensor4 t = to_tensor4(n, m);
  Tensor4 projected = subtract(t, bianchi_part(t));
  return from_op2(n, to_op2(projected));
}

double CurvatureTensor::entry(int i, int j, int k, int l) const {
  if (i == j || k == l) return 0.0;
  double sign = 1.0;
  if (i > j) { std::swap(i, j); sign = -sign; }
  if (k > l) { std::swap(k, l); sign = -sign; }
  return sign * op2_(pair_rank(n_, i, j), pair_rank(n_, k, l));
}

Multivector CurvatureTensor::apply_to_two_form(const Multivector& omega) const {
  if (omega.n() != n_) throw std::invalid_argument("apply_to_two_form: dimension mismatch");
  for (int p = 0; p <= n_; ++p)
    if (p != 2 && omega.coeffs(p).size() && omega.coeffs(p).lpNorm<Eigen::Infinity>() > 0)
      throw std::invalid_argument("apply_to_two_form: argument is not a 2-form");
  Multivector out(n_);
  out.coeffs(2) = op2_ * omega.coeffs(2);
  return out;
}

double CurvatureTensor::bianchi_residual() const {
  // Cyclic sums vanish automatically unless all four indices differ.
  double worst = 0.0;
  for (int i = 1; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      for (int k = j + 1; k <= n_; ++k)
        for (int l = k + 1; l <= n_; ++l) {
          // All index placements reduce to these three by antisymmetry.
          double c1 = entry(i, j, k, l) + entry(j, k, i, l) + entry(k, i, j, l);
          worst = std::max(worst, std::abs(c1));
        }
  double scale = std::max(1.0, op2_.size() ? op2_.cwiseAbs().maxCoeff() : 0.0);
  return worst / scale;
}

std::vector<CurvatureEntry> CurvatureTensor::to_entries(double tol) const {
  std::vector<CurvatureEntry> out;
  for (int i = 1; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      for (int k = i; k <= n_; ++k)
        for (int l = k + 1; l <= n_; ++l) {
          if (std::array<int, 2>{k, l} < std::array<int, 2>{i, j}) continue;
          double v = entry(i, j, k, l);
          if (std::abs(v) > tol) out.push_back({i, j, k, l, v});
        }
  return out;
}

CurvatureDecomposition decompose(const CurvatureTensor& r) {
  const int n = r.n();
  const int d = two_form_dim(n);
  Eigen::MatrixXd weyl = r.weyl_op2();
  Eigen::MatrixXd scalar_op2 = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd ric_op2 = Eigen::MatrixXd::Zero(d, d);
  if (n >= 2) {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    Tensor4 s_part = kulkarni_nomizu(id, id);
    double s_coef = r.scalar() / (2.0 * n * (n - 1));
    for (auto& x : s_part.v) x *= s_coef;
    scalar_op2 = to_op2(s_part);
    if (n > 2) {
      Eigen::MatrixXd ric0 = r.ricci() - (r.scalar() / n) * id;
      Tensor4 e_part = kulkarni_nomizu(ric0, id);
      for (auto& x : e_part.v) x /= (n - 2);
      ric_op2 = to_op2(e_part);
    }
  }
  CurvatureDecomposition dec{
      CurvatureTensor::from_op2(n, scalar_op2),
      CurvatureTensor::from_op2(n, ric_op2),
      CurvatureTensor::from_op2(n, weyl),
      scalar_op2.norm(),
      ric_op2.norm(),
      weyl.norm(),
  };
  return dec;
}

CurvatureTensor load_curvature_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open curvature file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw std::invalid_argument("curvature file needs {\"n\", \"entries\"}: " + path);
  int n = 0;
  std::vector<CurvatureEntry> entries;
  try {
    n = j.at("n").get<int>();
    for (const auto& e : j.at("entries")) {
      entries.push_back({e.at("i").get<int>(), e.at("j").get<int>(), e.at("k").get<int>(),
                         e.at("l").get<int>(), e.at("value").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed curvature entries in " + path + ": " + e.what());
  }
  return CurvatureTensor::from_components(n, entries);
}

void save_curvature_json(const CurvatureTensor& r, const std::string& path) {
  nlohmann::json j;
  j["n"] = r.n();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : r.to_entries())
    j["entries"].push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"l", e.l}, {"value", e.value}});
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write curvature file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace kform
