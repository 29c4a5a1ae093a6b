#include "kform/classifier.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "kform/combinatorics.hpp"
#include "kform/form_operators.hpp"
#include "kform/linalg.hpp"

namespace kform {

namespace {

std::vector<Eigen::MatrixXd> r_plus_matrices(const CurvatureTensor& r, int p) {
  std::vector<Eigen::MatrixXd> out;
  for (int i = 1; i <= r.n(); ++i) out.push_back(r_plus_matrix(r, i, p).matrix);
  return out;
}

std::vector<Eigen::MatrixXd> contraction_matrices(int n, int p) {
  std::vector<Eigen::MatrixXd> out;
  for (int i = 1; i <= n; ++i) out.push_back(contraction_matrix(n, i, p).matrix);
  return out;
}

double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng()) / 18446744073709551616.0) - 1.0;
}

}  // namespace

std::string to_string(Branch b) {
  switch (b) {
    case Branch::kParallelOnly: return "PARALLEL_ONLY";
    case Branch::kSpaceForm: return "SPACE_FORM";
    case Branch::kIntermediate: return "INTERMEDIATE";
    case Branch::kInconsistent: return "INCONSISTENT";
  }
  return "UNKNOWN";
}

Subspace e0(const CurvatureTensor& r, int p) {
  const int n = r.n();
  if (p < 1 || p > n) throw std::invalid_argument("e0: degree out of range");
  const auto& table = BasisTable::get(n);
  const int d = table.dim(p);
  auto rp = r_plus_matrices(r, p);
  auto ct = contraction_matrices(n, p + 1);
  const int pairs = n * (n - 1) / 2;
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(pairs) * d, d);
  int row = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      stacked.middleRows(static_cast<Eigen::Index>(row++) * d, d) =
          p * curv_action_matrix(r, i, j, p).matrix + ct[i - 1] * rp[j - 1] -
          ct[j - 1] * rp[i - 1];
    }
  return Subspace(n, p, linalg::nullspace(stacked));
}

Subspace f0(const CurvatureTensor& r, int p) {
  const int n = r.n();
  if (p < 1 || p > n - 1) throw std::invalid_argument("f0: degree out of range");
  const auto& table = BasisTable::get(n);
  const int d = table.dim(p + 1);
  auto rp = r_plus_matrices(r, p);
  auto ct = contraction_matrices(n, p + 1);
  const int pairs = n * (n - 1) / 2;
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(pairs) * d, d);
  int row = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      stacked.middleRows(static_cast<Eigen::Index>(row++) * d, d) =
          p * curv_action_matrix(r, i, j, p + 1).matrix + rp[i - 1] * ct[j - 1] -
          rp[j - 1] * ct[i - 1];
    }
  return Subspace(n, p + 1, linalg::nullspace(stacked));
}

std::pair<Subspace, Subspace> refine(const CurvatureTensor& r, const Subspace& e,
                                     const Subspace& f) {
  const int n = r.n();
  if (e.n() != n || f.n() != n || f.p() != e.p() + 1)
    throw std::invalid_argument("refine: degree mismatch");
  const int p = e.p();

  auto shrink = [n](int degree, const Subspace& src, const Subspace& target,
                    const std::vector<Eigen::MatrixXd>& maps) {
    if (src.dim() == 0) return src;
    const int ambient = static_cast<int>(maps[0].rows());
    Eigen::MatrixXd anti =
        Eigen::MatrixXd::Identity(ambient, ambient) - target.projector();
    Eigen::MatrixXd stacked(static_cast<Eigen::Index>(n) * ambient, src.dim());
    for (int i = 0; i < n; ++i)
      stacked.middleRows(static_cast<Eigen::Index>(i) * ambient, ambient) =
          anti * maps[i] * src.basis();
    Eigen::MatrixXd kept = linalg::nullspace(stacked);
    return Subspace(src.n(), degree, src.basis() * kept);
  };

  Subspace new_e = shrink(p, e, f, r_plus_matrices(r, p));
  Subspace new_f = shrink(p + 1, f, e, contraction_matrices(n, p + 1));
  return {std::move(new_e), std::move(new_f)};
}

FixedPointResult fixed_point(const CurvatureTensor& r, int p) {
  const int n = r.n();
  if (p < 1 || p > n - 1) throw std::invalid_argument("fixed_point: degree out of range");
  Subspace e = e0(r, p);
  Subspace f = f0(r, p);
  IterationTrace trace;
  trace.steps.push_back({0, e.dim(), f.dim()});
  const int cap = e.ambient_dim() + f.ambient_dim() + 2;
  for (int k = 1; k <= cap; ++k) {
    auto [ne, nf] = refine(r, e, f);
    trace.steps.push_back({k, ne.dim(), nf.dim()});
    // Equal dimensions mean equal subspaces, since each step yields subspaces
    // of the previous pair.
    if (ne.dim() == e.dim() && nf.dim() == f.dim()) {
      trace.converged_at = k;
      return {std::move(ne), std::move(nf), std::move(trace)};
    }
    e = std::move(ne);
    f = std::move(nf);
  }
  throw std::runtime_error("fixed_point: dimensions failed to stabilize (rank instability)");
}

ClassificationReport classify(const CurvatureTensor& r, int p, const std::string& model_name) {
  const int n = r.n();
  if (p < 1 || p > n - 1) throw std::invalid_argument("classify: degree out of range");
  const auto& table = BasisTable::get(n);

  FixedPointResult fp = fixed_point(r, p);
  const Subspace& e = fp.e;
  const Subspace& f = fp.f;

  ClassificationReport rep;
  rep.model = model_name;
  rep.n = n;
  rep.p = p;
  rep.dim_e0 = fp.trace.steps.front()[1];
  rep.dim_f0 = fp.trace.steps.front()[2];
  rep.dim_e = e.dim();
  rep.dim_f = f.dim();
  rep.trace = fp.trace;
  rep.weyl_norm = r.weyl_norm();

  HolonomyAlgebra h = generate(r);
  rep.holonomy_dim = h.dim();
  rep.kahler = is_kahler(h).kahler;
  rep.irreducible = commutant_dim_on_vectors(h) == 1;

  auto rp = r_plus_matrices(r, p);
  auto ct = contraction_matrices(n, p + 1);

  double r_plus_on_e = 0.0, closure_ef = 0.0, closure_fe = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < e.dim(); ++k) {
      Eigen::VectorXd w = rp[i] * e.basis().col(k);
      r_plus_on_e = std::max(r_plus_on_e, w.norm());
      closure_ef = std::max(closure_ef, f.residual(w));
    }
    for (int k = 0; k < f.dim(); ++k)
      closure_fe = std::max(closure_fe, e.residual(Eigen::VectorXd(ct[i] * f.basis().col(k))));
  }
  rep.r_plus_vanishes_on_e = r_plus_on_e < 1e-8;

  // Branch order matters: a dead degree-raising operator wins, a full E with
  // vanishing Weyl part is the space form, and a full E with Weyl in a middle
  // degree is impossible for valid input.
  const int full = table.dim(p);
  if (rep.r_plus_vanishes_on_e || rep.dim_f == 0) {
    rep.branch = Branch::kParallelOnly;
  } else if (rep.dim_e == full && rep.weyl_norm < 1e-8) {
    rep.branch = Branch::kSpaceForm;
  } else if (rep.dim_e == full && p >= 2 && p <= n - 2) {
    rep.branch = Branch::kInconsistent;
  } else {
    rep.branch = Branch::kIntermediate;
  }

  // Equation residuals on the final pair: (c1)/(c2) are the defining kernels,
  // closure and invariance are the fixed-point and parallelism properties.
  double c1 = 0.0;
  double c2 = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Eigen::MatrixXd m1 = p * curv_action_matrix(r, i, j, p).matrix +
                           ct[i - 1] * rp[j - 1] - ct[j - 1] * rp[i - 1];
      for (int k = 0; k < e.dim(); ++k)
        c1 = std::max(c1, (m1 * e.basis().col(k)).norm());
      Eigen::MatrixXd m2 = p * curv_action_matrix(r, i, j, p + 1).matrix +
                           rp[i - 1] * ct[j - 1] - rp[j - 1] * ct[i - 1];
      for (int k = 0; k < f.dim(); ++k)
        c2 = std::max(c2, (m2 * f.basis().col(k)).norm());
    }

  double inv_e = 0.0, inv_f = 0.0;
  for (const auto& g : h.generators) {
    Eigen::MatrixXd ge = rho_matrix(g, p).matrix;
    Eigen::MatrixXd gf = rho_matrix(g, p + 1).matrix;
    for (int k = 0; k < e.dim(); ++k)
      inv_e = std::max(inv_e, e.residual(Eigen::VectorXd(ge * e.basis().col(k))));
    for (int k = 0; k < f.dim(); ++k)
      inv_f = std::max(inv_f, f.residual(Eigen::VectorXd(gf * f.basis().col(k))));
  }

  rep.residuals["r_plus_on_E"] = r_plus_on_e;
  rep.residuals["closure_E_to_F"] = closure_ef;
  rep.residuals["closure_F_to_E"] = closure_fe;
  rep.residuals["c1_on_E"] = c1;
  rep.residuals["c2_on_F"] = c2;
  rep.residuals["holonomy_inv_E"] = inv_e;
  rep.residuals["holonomy_inv_F"] = inv_f;
  rep.residuals["lemma_l1"] = check_lemma_l1(r, p);
  rep.residuals["sym_corollary"] = check_sym_corollary(r, e);
  rep.residuals["lemma2"] = check_lemma2(r, e);
  rep.residuals["cont_k1"] = check_cont(r, e, 1);
  return rep;
}

std::optional<int> nilpotency_degree(const CurvatureTensor& r, const Subspace& e) {
  const int n = r.n();
  const int p = e.p();
  const int cap = std::max(1, n - p);
  // Propagate the span of all iterated images; the k-fold products vanish on
  // E exactly when the k-th span is zero.
  Eigen::MatrixXd span = e.basis();
  for (int k = 1; k <= cap; ++k) {
    const int deg = p + k - 1;
    auto rp = r_plus_matrices(r, deg);
    const int dout = BasisTable::get(n).dim(deg + 1);
    if (span.cols() == 0 || dout == 0) return k;
    Eigen::MatrixXd images(dout, static_cast<Eigen::Index>(n) * span.cols());
    for (int i = 0; i < n; ++i)
      images.middleCols(static_cast<Eigen::Index>(i) * span.cols(), span.cols()) =
          rp[i] * span;
    span = linalg::column_span(images);
    if (span.cols() == 0) return k;
  }
  return std::nullopt;
}

double check_lemma_l1(const CurvatureTensor& r, int p, int samples, std::uint64_t seed) {
  const int n = r.n();
  if (p < 0 || p > n) throw std::invalid_argument("check_lemma_l1: degree out of range");
  auto rp_lo = r_plus_matrices(r, p - 1);
  auto rp = r_plus_matrices(r, p);
  auto ct = contraction_matrices(n, p);
  auto ct_hi = contraction_matrices(n, p + 1);

  std::mt19937_64 rng(seed);
  std::vector<Eigen::VectorXd> us;
  for (int s = 0; s < samples; ++s) us.push_back(random_form(n, p, rng).coeffs(p));

  double worst = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Eigen::MatrixXd cv = curv_action_matrix(r, i, j, p).matrix;
      for (const auto& u : us) {
        Eigen::VectorXd t1 = rp_lo[i - 1] * (ct[j - 1] * u);
        Eigen::VectorXd t2 = rp_lo[j - 1] * (ct[i - 1] * u);
        Eigen::VectorXd t3 = ct_hi[i - 1] * (rp[j - 1] * u);
        Eigen::VectorXd t4 = ct_hi[j - 1] * (rp[i - 1] * u);
        Eigen::VectorXd t5 = cv * u;
        double defect = (t1 - t2 - t3 + t4 - t5).norm();
        double scale = 1.0 + t1.norm() + t2.norm() + t3.norm() + t4.norm() + t5.norm();
        worst = std::max(worst, defect / scale);
      }
    }
  return worst;
}

double check_sym_corollary(const CurvatureTensor& r, const Subspace& e) {
  const int n = r.n();
  const int p = e.p();
  if (e.dim() == 0 || e.dim() == e.ambient_dim()) return 0.0;
  auto rp_lo = r_plus_matrices(r, p - 1);
  auto rp = r_plus_matrices(r, p);
  auto ct = contraction_matrices(n, p);
  auto ct_hi = contraction_matrices(n, p + 1);

  double worst = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      // Anticommutator R⁺(X)𝓘(Y) + 𝓘(Y)R⁺(X), antisymmetrized in (X, Y).
      Eigen::MatrixXd b_ij = rp_lo[i - 1] * ct[j - 1] + ct_hi[j - 1] * rp[i - 1];
      Eigen::MatrixXd b_ji = rp_lo[j - 1] * ct[i - 1] + ct_hi[i - 1] * rp[j - 1];
      Eigen::MatrixXd anti = b_ij - b_ji;
      for (int k = 0; k < e.dim(); ++k)
        worst = std::max(worst, e.residual(Eigen::VectorXd(anti * e.basis().col(k))));
    }
  return worst;
}

double check_lemma2(const CurvatureTensor& r, const Subspace& e) {
  const int n = r.n();
  const int p = e.p();
  const auto& table = BasisTable::get(n);
  if (table.dim(p - 1) == 0 || e.dim() == 0) return 0.0;
  auto rp_lo = r_plus_matrices(r, p - 1);
  auto rp = r_plus_matrices(r, p);
  auto ct = contraction_matrices(n, p);
  auto ct_hi = contraction_matrices(n, p + 1);

  // S = span 𝓘(E) + span 𝓘R⁺𝓘(E), assembled in two stages to keep the
  // column count linear in dim S1 rather than cubic in n.
  Eigen::MatrixXd contracted(table.dim(p - 1), static_cast<Eigen::Index>(n) * e.dim());
  for (int i = 0; i < n; ++i)
    contracted.middleCols(static_cast<Eigen::Index>(i) * e.dim(), e.dim()) =
        ct[i] * e.basis();
  Eigen::MatrixXd s1 = linalg::column_span(contracted);

  Eigen::MatrixXd all(table.dim(p - 1),
                      s1.cols() + static_cast<Eigen::Index>(n) * n * s1.cols());
  all.leftCols(s1.cols()) = s1;
  Eigen::Index col = s1.cols();
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXd raised = rp_lo[j] * s1;
    for (int k = 0; k < n; ++k) {
      all.middleCols(col, s1.cols()) = ct[k] * raised;
      col += s1.cols();
    }
  }
  Subspace s(n, p - 1, linalg::column_span(all));

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd raised = rp[i] * e.basis();  // R⁺(e_i) on E
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd once = ct_hi[j] * raised;
      for (int k = 0; k < n; ++k) {
        Eigen::MatrixXd twice = ct[k] * once;
        for (int c = 0; c < twice.cols(); ++c)
          worst = std::max(worst, s.residual(Eigen::VectorXd(twice.col(c))));
      }
    }
  }
  return worst;
}

double check_cont(const CurvatureTensor& r, const Subspace& e, int k, int samples,
                  std::uint64_t seed) {
  const int n = r.n();
  const int p = e.p();
  if (k < 1) throw std::invalid_argument("check_cont: k must be positive");
  if (e.dim() == 0) return 0.0;

  std::vector<std::vector<Eigen::MatrixXd>> rp;
  std::vector<std::vector<Eigen::MatrixXd>> ct;
  for (int level = 0; level < k; ++level) {
    rp.push_back(r_plus_matrices(r, p + level));
    ct.push_back(contraction_matrices(n, p + level + 1));
  }

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    // One sampled tuple (Y_1..Y_k, X_1..X_k) applied to every basis element.
    Eigen::MatrixXd m = e.basis();
    for (int level = 0; level < k; ++level) {
      Eigen::VectorXd y = random_unit_vector(n, rng);
      Eigen::MatrixXd next = Eigen::MatrixXd::Zero(rp[level][0].rows(), m.cols());
      for (int i = 0; i < n; ++i) next += y[i] * (rp[level][i] * m);
      m = std::move(next);
    }
    for (int level = k - 1; level >= 0; --level) {
      Eigen::VectorXd x = random_unit_vector(n, rng);
      Eigen::MatrixXd next = Eigen::MatrixXd::Zero(ct[level][0].rows(), m.cols());
      for (int i = 0; i < n; ++i) next += x[i] * (ct[level][i] * m);
      m = std::move(next);
    }
    for (int c = 0; c < m.cols(); ++c)
      worst = std::max(worst, e.residual(Eigen::VectorXd(m.col(c))));
  }
  return worst;
}

P1Result check_p1(const HolonomyAlgebra& h, int q) {
  const int n = h.n;
  if (q + 1 < 0 || q + 1 > n) return {false, "degree q+1 outside [0, n]", 0.0};
  Subspace w = trivial_summand(h, q + 1);
  if (w.dim() == 0) return {false, "trivial summand is zero", 0.0};
  if (commutant_dim_on_vectors(h) != 1)
    return {false, "holonomy action on vectors is not irreducible of real type", 0.0};
  KahlerDetection kd = is_kahler(h);
  if (kd.kahler) return {false, "holonomy is Kahler", 0.0};

  auto ct = contraction_matrices(n, q + 1);
  const double expected = static_cast<double>(q + 1) / n;
  double worst = 0.0;
  for (int a = 0; a < w.dim(); ++a)
    for (int b = 0; b < w.dim(); ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double val = (ct[i] * w.basis().col(a)).dot(ct[j] * w.basis().col(b));
          double want = (a == b && i == j) ? expected : 0.0;
          worst = std::max(worst, std::abs(val - want));
        }
  return {true, "", worst};
}

}  // namespace kform
