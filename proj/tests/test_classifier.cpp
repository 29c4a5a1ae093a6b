#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "kform/classifier.hpp"
#include "kform/combinatorics.hpp"
#include "kform/models.hpp"
#include "kform/multivector.hpp"

using namespace kform;

namespace {

Subspace anti_self_dual() {
  std::vector<Multivector> basis = {
      Multivector::basis(4, {1, 2}) - Multivector::basis(4, {3, 4}),
      Multivector::basis(4, {1, 3}) + Multivector::basis(4, {2, 4}),
      Multivector::basis(4, {1, 4}) - Multivector::basis(4, {2, 3}),
  };
  return Subspace::from_forms(basis, 2);
}

}  // namespace

TEST_CASE("constant curvature admits every candidate") {
  for (int n : {4, 5, 6}) {
    auto r = CurvatureTensor::constant_curvature(n, 1.0);
    for (int p = 1; p <= n - 1; ++p) {
      CHECK(e0(r, p).dim() == static_cast<int>(binomial(n, p)));
      CHECK(f0(r, p).dim() == static_cast<int>(binomial(n, p + 1)));
    }
    CHECK(e0(r, n).dim() == 1);
  }
}

TEST_CASE("flat tensors admit every candidate") {
  auto r = CurvatureTensor::flat(4);
  for (int p = 1; p <= 3; ++p) {
    CHECK(e0(r, p).dim() == static_cast<int>(binomial(4, p)));
    CHECK(f0(r, p).dim() == static_cast<int>(binomial(4, p + 1)));
  }
}

TEST_CASE("the rank-two Weyl tensor keeps only the anti-self-dual forms") {
  auto r = CurvatureTensor::weyl4();
  auto e = e0(r, 2);
  CHECK(e.dim() == 3);
  CHECK(projector_distance(e, anti_self_dual()) < 1e-10);

  auto beta = Multivector::basis(4, {1, 3}) - Multivector::basis(4, {2, 4});
  CHECK(e.residual(beta) == doctest::Approx(std::sqrt(2.0)));
  CHECK(e.residual(beta) > 0.5);
  auto alpha = Multivector::basis(4, {1, 2}) + Multivector::basis(4, {3, 4});
  CHECK(e.residual(alpha) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("fixed point on spheres converges immediately to everything") {
  for (int n : {4, 5}) {
    auto fp = fixed_point(CurvatureTensor::constant_curvature(n, 1.0), 2);
    CHECK(fp.e.dim() == static_cast<int>(binomial(n, 2)));
    CHECK(fp.f.dim() == static_cast<int>(binomial(n, 3)));
    CHECK(fp.trace.converged_at == 1);
    REQUIRE(fp.trace.steps.size() >= 2);
    CHECK(fp.trace.steps[0][1] == fp.e.dim());
  }
}

TEST_CASE("fixed point dimensions never increase") {
  for (std::uint64_t seed : {5u, 11u, 17u}) {
    auto r = CurvatureTensor::random_curvature(4, seed);
    auto fp = fixed_point(r, 2);
    for (std::size_t k = 1; k < fp.trace.steps.size(); ++k) {
      CHECK(fp.trace.steps[k][1] <= fp.trace.steps[k - 1][1]);
      CHECK(fp.trace.steps[k][2] <= fp.trace.steps[k - 1][2]);
    }
    // The final pair is closed under raising into F and contracting into E.
    auto again = refine(r, fp.e, fp.f);
    CHECK(again.first.dim() == fp.e.dim());
    CHECK(again.second.dim() == fp.f.dim());
  }
}

TEST_CASE("classification of spheres") {
  for (int n : {4, 5, 6}) {
    auto r = CurvatureTensor::constant_curvature(n, 1.0);
    for (int p = 2; p <= n - 2; ++p) {
      auto rep = classify(r, p, "sphere");
      CHECK(rep.branch == Branch::kSpaceForm);
      CHECK(rep.dim_e == static_cast<int>(binomial(n, p)));
      CHECK(rep.trace.converged_at == 1);
      CHECK(!rep.r_plus_vanishes_on_e);
      CHECK(rep.irreducible);
      CHECK(!rep.kahler);
      CHECK(rep.weyl_norm < 1e-10);
      CHECK(rep.holonomy_dim == n * (n - 1) / 2);
    }
  }
}

TEST_CASE("classification of the flat model") {
  auto rep = classify(CurvatureTensor::flat(4), 2);
  CHECK(rep.branch == Branch::kParallelOnly);
  CHECK(rep.r_plus_vanishes_on_e);
  CHECK(rep.dim_e == 6);
  CHECK(rep.holonomy_dim == 0);
}

TEST_CASE("classification of the rank-two Weyl tensor") {
  auto rep = classify(CurvatureTensor::weyl4(), 2, "weyl4");
  CHECK(rep.branch == Branch::kParallelOnly);
  CHECK(rep.r_plus_vanishes_on_e);
  CHECK(rep.dim_e == 3);
  CHECK(rep.dim_f == 0);
  CHECK(rep.kahler);
  CHECK(!rep.irreducible);
  CHECK(rep.holonomy_dim == 3);
  CHECK(rep.weyl_norm == doctest::Approx(std::sqrt(2.0)));
  CHECK(rep.model == "weyl4");
}

TEST_CASE("classification of the complex projective plane") {
  auto rep = classify(CurvatureTensor::fubini_study(2), 2);
  CHECK(rep.branch != Branch::kSpaceForm);
  CHECK(rep.kahler);
  CHECK(rep.dim_e < 6);
  CHECK(rep.dim_e >= 1);  // the Kähler form survives
  // The Kähler form lies in the initial kernel.
  auto kappa = Multivector::basis(4, {1, 2}) + Multivector::basis(4, {3, 4});
  CHECK(e0(CurvatureTensor::fubini_study(2), 2).residual(kappa) < 1e-8);
}

TEST_CASE("identity residuals vanish across models") {
  struct Case {
    const char* spec;
    int p;
  };
  for (auto c : {Case{"sphere:5:1", 2}, Case{"sphere:5:1", 3}, Case{"cpn:2", 2},
                 Case{"flat:4", 2}, Case{"weyl4", 2},
                 Case{"product(sphere:2:1,sphere:3:1)", 2}}) {
    auto spec = ModelSpec::parse(c.spec);
    auto rep = classify(spec.build(), c.p, spec.name());
    for (const char* key :
         {"closure_E_to_F", "closure_F_to_E", "c1_on_E", "c2_on_F", "holonomy_inv_E",
          "holonomy_inv_F", "lemma_l1", "sym_corollary", "lemma2", "cont_k1"}) {
      INFO(spec.name() << " p=" << c.p << " " << key);
      REQUIRE(rep.residuals.count(key) == 1);
      CHECK(rep.residuals.at(key) < 1e-8);
    }
    CHECK(rep.branch != Branch::kInconsistent);
  }
}

TEST_CASE("degree preconditions") {
  auto r = CurvatureTensor::constant_curvature(4, 1.0);
  CHECK_THROWS_AS(e0(r, 0), std::invalid_argument);
  CHECK_THROWS_AS(e0(r, 5), std::invalid_argument);
  CHECK_THROWS_AS(f0(r, 4), std::invalid_argument);
  CHECK_THROWS_AS(fixed_point(r, 0), std::invalid_argument);
  CHECK_THROWS_AS(classify(r, 4), std::invalid_argument);
  CHECK_NOTHROW(e0(r, 4));  // top degree is a valid kernel question
}

TEST_CASE("nilpotency degree") {
  auto flat = CurvatureTensor::flat(4);
  CHECK(nilpotency_degree(flat, Subspace::full(4, 2)) == 1);

  auto sphere = CurvatureTensor::constant_curvature(4, 1.0);
  CHECK(!nilpotency_degree(sphere, Subspace::full(4, 2)).has_value());

  auto weyl = CurvatureTensor::weyl4();
  auto e = fixed_point(weyl, 2).e;
  CHECK(nilpotency_degree(weyl, e) == 1);
}

TEST_CASE("first lemma holds for arbitrary tensors") {
  for (int n : {3, 4, 5})
    for (std::uint64_t seed : {1u, 2u})
      for (int p = 0; p <= n; ++p) {
        auto r = CurvatureTensor::random_curvature(n, seed);
        INFO("n=" << n << " p=" << p << " seed=" << seed);
        CHECK(check_lemma_l1(r, p, 8, seed) < 1e-8);
      }
  CHECK(check_lemma_l1(CurvatureTensor::weyl4(), 2) < 1e-10);
}

TEST_CASE("invariant-subspace identities") {
  auto sphere = CurvatureTensor::constant_curvature(5, 1.0);
  auto full = Subspace::full(5, 2);
  CHECK(check_sym_corollary(sphere, full) < 1e-10);
  CHECK(check_lemma2(sphere, full) < 1e-10);
  CHECK(check_cont(sphere, full, 2) < 1e-10);

  auto weyl = CurvatureTensor::weyl4();
  auto e = fixed_point(weyl, 2).e;
  CHECK(check_sym_corollary(weyl, e) < 1e-10);
  CHECK(check_lemma2(weyl, e) < 1e-10);
  CHECK(check_cont(weyl, e, 1) < 1e-10);
  CHECK(check_cont(weyl, e, 2) < 1e-10);

  auto cp2 = CurvatureTensor::fubini_study(2);
  auto ecp = fixed_point(cp2, 2).e;
  CHECK(check_sym_corollary(cp2, ecp) < 1e-8);
  CHECK(check_lemma2(cp2, ecp) < 1e-8);
  CHECK(check_cont(cp2, ecp, 1) < 1e-8);
}

TEST_CASE("orthogonality of contractions of the invariant form") {
  auto h = generate(CurvatureTensor::constant_curvature(5, 1.0));
  auto top = check_p1(h, 4);
  REQUIRE(top.applicable);
  CHECK(top.residual < 1e-10);

  auto middle = check_p1(h, 2);
  CHECK(!middle.applicable);
  CHECK(middle.reason == "trivial summand is zero");

  auto kahler = check_p1(generate(CurvatureTensor::fubini_study(2)), 1);
  CHECK(!kahler.applicable);
  CHECK(kahler.reason == "holonomy action on vectors is not irreducible of real type");

  auto flat = check_p1(generate(CurvatureTensor::flat(3)), 1);
  CHECK(!flat.applicable);

  auto outside = check_p1(h, 5);
  CHECK(!outside.applicable);
  CHECK(outside.reason == "degree q+1 outside [0, n]");
}

TEST_CASE("branch names") {
  CHECK(to_string(Branch::kParallelOnly) == "PARALLEL_ONLY");
  CHECK(to_string(Branch::kSpaceForm) == "SPACE_FORM");
  CHECK(to_string(Branch::kIntermediate) == "INTERMEDIATE");
  CHECK(to_string(Branch::kInconsistent) == "INCONSISTENT");
}

TEST_CASE("model specifications") {
  auto s = ModelSpec::parse("sphere:5:1");
  CHECK(s.name() == "sphere:5:1");
  CHECK(s.build().n() == 5);
  CHECK(ModelSpec::parse("sphere:4:0.5").build().entry(1, 2, 1, 2) ==
        doctest::Approx(0.5));

  CHECK(ModelSpec::parse("cpn:2").build().n() == 4);
  CHECK(ModelSpec::parse("flat:3").build().op2().norm() == 0.0);
  CHECK(ModelSpec::parse("weyl4").build().n() == 4);
  CHECK(ModelSpec::parse("weyl4:6").build().n() == 6);
  CHECK(ModelSpec::parse("weyl4:6").name() == "weyl4:6");

  auto prod = ModelSpec::parse("product(sphere:2:1,sphere:3:1)");
  CHECK(prod.name() == "product(sphere:2:1,sphere:3:1)");
  CHECK(prod.build().n() == 5);
  auto nested = ModelSpec::parse("product(flat:1,product(sphere:2:1,flat:1))");
  CHECK(nested.build().n() == 4);

  CHECK_THROWS_AS(ModelSpec::parse("sphere"), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::parse("cpn"), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::parse("bogus:3"), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::parse("product(sphere:2:1)"), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::parse("sphere:abc"), std::invalid_argument);

  CHECK(standard_catalog().size() == 8);
  CHECK(compact_type_catalog().size() == 6);
  CHECK(catalog_entries().size() == 6);
  bool has_weyl = false;
  for (const auto& m : standard_catalog()) has_weyl |= m.name() == "weyl4";
  CHECK(has_weyl);
}
