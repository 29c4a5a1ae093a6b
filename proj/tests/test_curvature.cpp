#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "kform/combinatorics.hpp"
#include "kform/curvature.hpp"
#include "kform/multivector.hpp"

using namespace kform;

namespace {

double frob_inner(const CurvatureTensor& a, const CurvatureTensor& b) {
  return (a.op2().cwiseProduct(b.op2())).sum();
}

}  // namespace

TEST_CASE("constant curvature") {
  for (int n : {3, 4, 5, 6}) {
    auto r = CurvatureTensor::constant_curvature(n, 1.0);
    int d = static_cast<int>(binomial(n, 2));
    CHECK((r.op2() - Eigen::MatrixXd::Identity(d, d)).norm() < 1e-14);
    CHECK((r.ricci() - (n - 1) * Eigen::MatrixXd::Identity(n, n)).norm() < 1e-12);
    CHECK(r.scalar() == doctest::Approx(n * (n - 1)));
    REQUIRE(r.einstein_constant().has_value());
    CHECK(*r.einstein_constant() == doctest::Approx(n - 1));
    CHECK(r.weyl_norm() < 1e-12);
    CHECK(r.bianchi_residual() < 1e-14);
  }
  auto half = CurvatureTensor::constant_curvature(4, 0.5);
  CHECK(half.entry(1, 2, 1, 2) == doctest::Approx(0.5));
  CHECK(half.entry(1, 2, 3, 4) == doctest::Approx(0.0));
}

TEST_CASE("flat tensor") {
  auto r = CurvatureTensor::flat(5);
  CHECK(r.op2().norm() == 0.0);
  CHECK(r.ricci().norm() == 0.0);
  CHECK(r.scalar() == 0.0);
  REQUIRE(r.einstein_constant().has_value());
  CHECK(*r.einstein_constant() == doctest::Approx(0.0));
}

TEST_CASE("entry applies pair symmetries") {
  auto r = CurvatureTensor::random_curvature(5, 42);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      for (int k = 1; k <= 5; ++k)
        for (int l = 1; l <= 5; ++l) {
          CHECK(r.entry(i, j, k, l) == doctest::Approx(-r.entry(j, i, k, l)));
          CHECK(r.entry(i, j, k, l) == doctest::Approx(r.entry(k, l, i, j)));
          if (i == j || k == l) CHECK(r.entry(i, j, k, l) == 0.0);
        }
}

TEST_CASE("weyl4 spectrum and components") {
  auto r = CurvatureTensor::weyl4();
  REQUIRE(r.n() == 4);
  auto alpha = Multivector::basis(4, {1, 2}) + Multivector::basis(4, {3, 4});
  auto beta = Multivector::basis(4, {1, 3}) - Multivector::basis(4, {2, 4});
  auto gamma = Multivector::basis(4, {1, 4}) + Multivector::basis(4, {2, 3});
  auto anti = Multivector::basis(4, {1, 2}) - Multivector::basis(4, {3, 4});

  CHECK((r.apply_to_two_form(alpha) - alpha).norm() < 1e-14);
  CHECK((r.apply_to_two_form(beta) + beta).norm() < 1e-14);
  CHECK(r.apply_to_two_form(gamma).norm() < 1e-14);
  CHECK(r.apply_to_two_form(anti).norm() < 1e-14);

  CHECK(r.entry(1, 2, 1, 2) == doctest::Approx(0.5));
  CHECK(r.entry(1, 2, 3, 4) == doctest::Approx(0.5));
  CHECK(r.entry(1, 3, 2, 4) == doctest::Approx(0.5));
  CHECK(r.entry(1, 3, 1, 3) == doctest::Approx(-0.5));
  CHECK(r.entry(1, 4, 1, 4) == doctest::Approx(0.0));
  CHECK(r.entry(1, 2, 1, 3) == doctest::Approx(0.0));

  CHECK(r.ricci().norm() < 1e-14);
  CHECK(r.scalar() == doctest::Approx(0.0));
  CHECK(r.weyl_norm() == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.bianchi_residual() < 1e-14);
}

TEST_CASE("fubini-study") {
  // Complex dimension 1 is the round 2-sphere of constant curvature 4.
  auto cp1 = CurvatureTensor::fubini_study(1);
  auto s4 = CurvatureTensor::constant_curvature(2, 4.0);
  CHECK((cp1.op2() - s4.op2()).norm() < 1e-14);

  auto cp2 = CurvatureTensor::fubini_study(2);
  REQUIRE(cp2.n() == 4);
  REQUIRE(cp2.einstein_constant().has_value());
  CHECK(*cp2.einstein_constant() == doctest::Approx(6.0));  // 2(m+1)
  CHECK(cp2.scalar() == doctest::Approx(24.0));
  CHECK(cp2.weyl_norm() > 0.1);
  CHECK(cp2.bianchi_residual() < 1e-14);
  // Sectional curvature 4 on complex lines, 1 on totally real planes.
  CHECK(cp2.entry(1, 2, 1, 2) == doctest::Approx(4.0));
  CHECK(cp2.entry(1, 3, 1, 3) == doctest::Approx(1.0));

  auto cp3 = CurvatureTensor::fubini_study(3);
  REQUIRE(cp3.einstein_constant().has_value());
  CHECK(*cp3.einstein_constant() == doctest::Approx(8.0));
}

TEST_CASE("products") {
  auto s2 = CurvatureTensor::constant_curvature(2, 1.0);
  auto s3 = CurvatureTensor::constant_curvature(3, 1.0);
  auto r = CurvatureTensor::product(s2, s3);
  REQUIRE(r.n() == 5);
  CHECK(r.scalar() == doctest::Approx(8.0));
  CHECK(!r.einstein_constant().has_value());
  CHECK(r.bianchi_residual() < 1e-14);
  // Block Ricci: eigenvalues 1 on the first factor, 2 on the second.
  Eigen::VectorXd diag(5);
  diag << 1, 1, 2, 2, 2;
  CHECK((r.ricci() - Eigen::MatrixXd(diag.asDiagonal())).norm() < 1e-12);
  // Mixed planes are flat.
  CHECK(r.entry(1, 3, 1, 3) == doctest::Approx(0.0));
  CHECK(r.entry(1, 2, 1, 2) == doctest::Approx(1.0));
  CHECK(r.entry(3, 4, 3, 4) == doctest::Approx(1.0));

  // Zero-dimensional factors are identities for the product.
  auto same = CurvatureTensor::product(s3, CurvatureTensor::flat(0));
  CHECK((same.op2() - s3.op2()).norm() == 0.0);
}

TEST_CASE("embed_trivial") {
  auto r = CurvatureTensor::embed_trivial(CurvatureTensor::weyl4(), 6);
  REQUIRE(r.n() == 6);
  CHECK(r.entry(1, 2, 1, 2) == doctest::Approx(0.5));
  CHECK(r.entry(1, 2, 3, 4) == doctest::Approx(0.5));
  CHECK(r.entry(1, 5, 1, 5) == doctest::Approx(0.0));
  CHECK(r.entry(5, 6, 5, 6) == doctest::Approx(0.0));
  CHECK(r.ricci().norm() < 1e-14);
  CHECK(r.bianchi_residual() < 1e-14);
  CHECK_THROWS_AS(CurvatureTensor::embed_trivial(r, 4), std::invalid_argument);
}

TEST_CASE("component round trip") {
  for (auto r : {CurvatureTensor::fubini_study(2), CurvatureTensor::random_curvature(5, 3),
                 CurvatureTensor::weyl4()}) {
    auto rebuilt = CurvatureTensor::from_components(r.n(), r.to_entries());
    CHECK((rebuilt.op2() - r.op2()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("from_components validation") {
  // Same component listed twice with incompatible values.
  CHECK_THROWS_AS(CurvatureTensor::from_components(
                      4, {{1, 2, 1, 2, 1.0}, {2, 1, 1, 2, 1.0}}),
                  std::invalid_argument);
  // Consistent duplicate (sign convention respected) is fine.
  auto r = CurvatureTensor::from_components(4, {{1, 2, 1, 2, 1.0}, {2, 1, 1, 2, -1.0}});
  CHECK(r.entry(1, 2, 1, 2) == doctest::Approx(1.0));
  // Repeated index with nonzero value contradicts antisymmetry.
  CHECK_THROWS_AS(CurvatureTensor::from_components(4, {{1, 1, 2, 3, 0.5}}),
                  std::invalid_argument);
  CHECK_NOTHROW(CurvatureTensor::from_components(4, {{1, 1, 2, 3, 0.0}}));
}

TEST_CASE("from_op2 validation") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(6, 6);
  bad(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS_AS(CurvatureTensor::from_op2(4, bad), std::invalid_argument);

  Eigen::MatrixXd nb = Eigen::MatrixXd::Zero(6, 6);
  nb(0, 5) = nb(5, 0) = 1.0;  // <R(e12),e34> alone violates the cyclic identity
  CHECK_THROWS_AS(CurvatureTensor::from_op2(4, nb), std::invalid_argument);

  CHECK_THROWS_AS(CurvatureTensor::from_op2(4, Eigen::MatrixXd::Zero(5, 5)),
                  std::invalid_argument);
}

TEST_CASE("random curvature tensors") {
  auto a = CurvatureTensor::random_curvature(5, 1);
  auto b = CurvatureTensor::random_curvature(5, 1);
  auto c = CurvatureTensor::random_curvature(5, 2);
  CHECK((a.op2() - b.op2()).norm() == 0.0);
  CHECK((a.op2() - c.op2()).norm() > 1e-3);
  CHECK(a.bianchi_residual() < 1e-12);
  CHECK((a.op2() - a.op2().transpose()).norm() < 1e-12);
}

TEST_CASE("decomposition is orthogonal and resums") {
  for (auto r : {CurvatureTensor::random_curvature(4, 9), CurvatureTensor::random_curvature(5, 9),
                 CurvatureTensor::fubini_study(2)}) {
    auto d = decompose(r);
    Eigen::MatrixXd sum =
        d.scalar_part.op2() + d.traceless_ricci_part.op2() + d.weyl_part.op2();
    CHECK((sum - r.op2()).norm() < 1e-10);
    CHECK(std::abs(frob_inner(d.scalar_part, d.traceless_ricci_part)) < 1e-10);
    CHECK(std::abs(frob_inner(d.scalar_part, d.weyl_part)) < 1e-10);
    CHECK(std::abs(frob_inner(d.traceless_ricci_part, d.weyl_part)) < 1e-10);
    CHECK(d.scalar_part.einstein_constant().has_value());
    CHECK(d.traceless_ricci_part.scalar() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(d.weyl_part.ricci().norm() < 1e-10);
    CHECK(d.scalar_norm == doctest::Approx(d.scalar_part.op2().norm()));
    CHECK(d.weyl_norm == doctest::Approx(d.weyl_part.op2().norm()));
  }

  auto w = decompose(CurvatureTensor::weyl4());
  CHECK(w.scalar_norm < 1e-14);
  CHECK(w.traceless_ricci_norm < 1e-14);
  CHECK(w.weyl_norm == doctest::Approx(std::sqrt(2.0)));

  auto s = decompose(CurvatureTensor::constant_curvature(4, 2.0));
  CHECK(s.traceless_ricci_norm < 1e-12);
  CHECK(s.weyl_norm < 1e-12);
  CHECK((s.scalar_part.op2() - CurvatureTensor::constant_curvature(4, 2.0).op2()).norm() <
        1e-12);
}

TEST_CASE("weyl projection agrees with the decomposition") {
  auto r = CurvatureTensor::random_curvature(5, 21);
  auto d = decompose(r);
  CHECK((r.weyl_op2() - d.weyl_part.op2()).norm() < 1e-10);
  CHECK(r.weyl_norm() == doctest::Approx(d.weyl_norm));
}

TEST_CASE("json round trip") {
  std::string path = "curvature_roundtrip_test.json";
  auto r = CurvatureTensor::fubini_study(2);
  save_curvature_json(r, path);
  auto loaded = load_curvature_json(path);
  CHECK(loaded.n() == r.n());
  CHECK((loaded.op2() - r.op2()).cwiseAbs().maxCoeff() < 1e-12);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_curvature_json("no_such_file_anywhere.json"), std::invalid_argument);
}
