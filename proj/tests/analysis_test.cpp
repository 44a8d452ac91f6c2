#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kcurv/analysis.hpp"
#include "kcurv/inequalities.hpp"
#include "kcurv/models.hpp"
#include "kcurv/rng.hpp"

using namespace kcurv;

TEST_CASE("bochner routes agree and vanish on space forms") {
  for (const char* name : {"flat", "fubini_study", "complex_hyperbolic"}) {
    const ModelSpec model = make_model(
        name, {{"m", name == std::string("fubini_study") ? 3.0 : 2.0}});
    const CurvaturePackage pkg = curvature_at(model.chart, model.base_point());
    const ComplexTensor b1 = bochner_from_ricci(pkg);
    const ComplexTensor b2 = bochner_from_E(pkg);
    ComplexTensor diff = b1 - b2;
    CHECK(diff.max_abs() < 1e-12 * (1.0 + b1.max_abs()));
    CHECK(b1.max_abs() < 1e-10);
  }
}

TEST_CASE("bochner routes agree on random Ricci data") {
  // assemble packages with random curvature-like and Ricci data
  SeededRng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 3;
    CurvaturePackage pkg;
    pkg.riemann = random_bochner_like(m, 1000 + trial);  // any symmetric tensor works
    Eigen::MatrixXcd ric(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        ric(i, j) = rng.cgauss();
        ric(j, i) = std::conj(ric(i, j));
      }
    for (int i = 0; i < m; ++i) ric(i, i) = cplx(rng.gauss(), 0.0);
    pkg.g = HermitianMatrix::identity(m);
    pkg.ricci = HermitianMatrix(ric, 1e-10);
    pkg.scalar = ric.trace().real();
    pkg.E = traceless_ricci(pkg.ricci, m);
    ComplexTensor diff = bochner_from_ricci(pkg) - bochner_from_E(pkg);
    CHECK(diff.max_abs() < 1e-12 * (1.0 + ric.norm()));
  }
}

TEST_CASE("product of equal factors: nonzero B with the closed-form norm") {
  const ModelSpec prod = make_model("product_cp1", {{"a", 1.0}, {"b", 1.0}});
  const CurvaturePackage pkg = curvature_at(prod.chart, prod.base_point());
  CHECK(curvature_norm_sq(pkg.B) == doctest::Approx(32.0 / 3.0).epsilon(1e-12));
  // spot components: B_{1 1. 1 1.} = -2/3, B_{1 1. 2 2.} = 2/3
  CHECK(std::abs(pkg.B(0, 0, 0, 0) - cplx(-2.0 / 3.0, 0)) < 1e-12);
  CHECK(std::abs(pkg.B(0, 0, 1, 1) - cplx(2.0 / 3.0, 0)) < 1e-12);
}

TEST_CASE("V decomposition: zero input") {
  const VDecomposition v = build_V_and_decompose(HermitianMatrix::zero(3));
  CHECK(v.V_sq == 0.0);
  CHECK(v.V1_sq == 0.0);
  CHECK(v.V2_sq == 0.0);
  CHECK(v.V3_sq == 0.0);
}

TEST_CASE("V decomposition: m = 2 diagonal example against direct norms") {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(2, 2);
  e(0, 0) = 1.0;
  e(1, 1) = -1.0;
  const VDecomposition v = build_V_and_decompose(HermitianMatrix(e));
  CHECK(v.Z == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(hermitian_norm_sq(HermitianMatrix(e)) == doctest::Approx(4.0));
  // closed form |V3|^2 = 4 |E|^4 / (2 m (m+1)) = 4 * 16 / 12 = 16/3; the
  // direct component norm is the oracle
  CHECK(v.V3_sq == doctest::Approx(curvature_norm_sq(v.V3)).epsilon(1e-14));
  CHECK(v.V3_sq == doctest::Approx(16.0 / 3.0).epsilon(1e-12));
  // V^E = E^2 - (K/m) I = 0 here, so V2 vanishes
  CHECK(v.V2_sq < 1e-14);
  CHECK(v.V_sq == doctest::Approx(4.0 * (0.5 * 16.0 + 2.0 * 2.0)).epsilon(1e-12));
}

TEST_CASE("V decomposition identities on random trace-free inputs") {
  for (int m : {2, 3}) {
    const FuzzSummary f = fuzz_v_decomposition(m, 200, 555);
    CHECK(f.pass);
    CHECK(f.min_gap >= -1e-10);
  }
}

TEST_CASE("V decomposition rejects non-trace-free input") {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(build_V_and_decompose(HermitianMatrix(e)),
                  std::invalid_argument);
}

TEST_CASE("eeb_contraction: zero cases and the product model value") {
  const ModelSpec prod = make_model("product_cp1", {{"a", 1.0}, {"b", 2.0}});
  const CurvaturePackage pkg = curvature_at(prod.chart, prod.base_point());
  // hand-computed value at the base point of CP1(1) x CP1(2)
  CHECK(eeb_contraction(pkg.E, pkg.B) == doctest::Approx(-0.5).epsilon(1e-12));

  const HermitianMatrix zero_e = HermitianMatrix::zero(2);
  CHECK(eeb_contraction(zero_e, pkg.B) == 0.0);

  const ModelSpec fs = make_model("fubini_study", {{"m", 2}, {"scale", 1.0}});
  const CurvaturePackage fs_pkg = curvature_at(fs.chart, fs.base_point());
  CHECK(std::abs(eeb_contraction(fs_pkg.E, fs_pkg.B)) < 1e-12);
}

TEST_CASE("eeb contraction pairs with the curvature inner product of V") {
  // 8 (E.E.B) = -<B, V(E)> = -<B, V1(E)> for curvature-symmetric B
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int m = 2 + static_cast<int>(seed % 3);
    const HermitianMatrix e = random_traceless_hermitian(m, seed);
    const ComplexTensor b = random_bochner_like(m, 500 + seed);
    const VDecomposition v = build_V_and_decompose(e);
    const double lhs = 8.0 * eeb_contraction(e, b);
    const double inner_v = curvature_inner(b, v.V);
    const double inner_v1 = curvature_inner(b, v.V1);
    CHECK(lhs == doctest::Approx(-inner_v).epsilon(1e-10));
    CHECK(inner_v == doctest::Approx(inner_v1).epsilon(1e-10));
  }
}

TEST_CASE("eeb_contraction rejects symmetry-violating input") {
  const HermitianMatrix e = random_traceless_hermitian(2, 5);
  ComplexTensor bad(curvature_signature(2));
  bad(0, 0, 0, 0) = cplx(0.0, 5.0);  // breaks Hermitian reality
  CHECK_THROWS_AS(eeb_contraction(e, bad), std::runtime_error);
}

TEST_CASE("build_HK: traces and Hermitian structure") {
  SUBCASE("zero tensor") {
    const HKPair hk = build_HK(ComplexTensor(curvature_signature(2)));
    CHECK(hk.trH2 == 0.0);
    CHECK(hk.trK2 == 0.0);
  }
  SUBCASE("product model") {
    const ModelSpec prod = make_model("product_cp1", {{"a", 1.0}, {"b", 1.0}});
    const CurvaturePackage pkg = curvature_at(prod.chart, prod.base_point());
    const HKPair hk = build_HK(pkg.B);
    const double quarter_b_sq = curvature_norm_sq(pkg.B) / 4.0;
    CHECK(std::abs(hk.trH) < 1e-12);
    CHECK(std::abs(hk.trK) < 1e-12);
    CHECK(hk.trH2 == doctest::Approx(quarter_b_sq).epsilon(1e-10));
    CHECK(hk.trK2 == doctest::Approx(quarter_b_sq).epsilon(1e-10));
    // hand-computed cubic traces for unit factor scales
    CHECK(hk.trH3 == doctest::Approx(-16.0 / 9.0).epsilon(1e-12));
    CHECK(hk.trK3 == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
  }
  SUBCASE("random Bochner-type tensors") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const int m = 2 + static_cast<int>(seed % 2);
      const ComplexTensor b = random_bochner_like(m, seed);
      const HKPair hk = build_HK(b);
      CHECK(std::abs(hk.trH) < 1e-10);
      CHECK(std::abs(hk.trK) < 1e-10);
      const double quarter = curvature_norm_sq(b) / 4.0;
      CHECK(hk.trH2 == doctest::Approx(quarter).epsilon(1e-10));
      CHECK(hk.trK2 == doctest::Approx(quarter).epsilon(1e-10));
    }
  }
  SUBCASE("symmetry violations are rejected") {
    ComplexTensor bad(curvature_signature(2));
    bad(0, 0, 1, 0) = 1.0;
    CHECK_THROWS_AS(build_HK(bad), std::invalid_argument);
  }
}

TEST_CASE("Weitzenboeck residual for E on parallel-E products") {
  const ModelSpec fs = make_model("fubini_study", {{"m", 2}, {"scale", 1.0}});
  const CurvaturePackage fs_pkg = curvature_at(fs.chart, fs.base_point());
  CHECK(std::abs(weitzenbock_residual_E(fs_pkg, true, true)) < 1e-12);

  const ModelSpec prod = make_model("product_cp1", {{"a", 1.0}, {"b", 2.0}});
  for (const auto& p : sample_points(prod, 5, 77)) {
    const CurvaturePackage pkg = curvature_at(prod.chart, p);
    const double e_norm = pkg.norm_E();
    const double res = weitzenbock_residual_E(pkg, true, true);
    CHECK(std::abs(res) < 1e-8 * (1.0 + e_norm * e_norm * e_norm));
  }

  CHECK_THROWS_AS(weitzenbock_residual_E(fs_pkg, false, true),
                  std::invalid_argument);
}

TEST_CASE("Weitzenboeck residual for B on parallel-B Einstein products") {
  const ModelSpec equal = make_model("product_cp1", {{"a", 1.0}, {"b", 1.0}});
  for (const auto& p : sample_points(equal, 3, 31)) {
    const CurvaturePackage pkg = curvature_at(equal.chart, p);
    const double b_norm = pkg.norm_B();
    const double res = weitzenbock_residual_B(pkg, true);
    CHECK(std::abs(res) < 1e-8 * (1.0 + b_norm * b_norm * b_norm));
  }

  const ModelSpec big = make_model("product_cpm", {{"m1", 2}, {"m2", 2}});
  const CurvaturePackage pkg = curvature_at(big.chart, big.base_point());
  const double b_norm = pkg.norm_B();
  CHECK(std::abs(weitzenbock_residual_B(pkg, true)) <
        1e-8 * (1.0 + b_norm * b_norm * b_norm));

  // non-Einstein input is rejected
  const ModelSpec unequal = make_model("product_cp1", {{"a", 1.0}, {"b", 2.0}});
  const CurvaturePackage bad = curvature_at(unequal.chart, unequal.base_point());
  CHECK_THROWS_AS(weitzenbock_residual_B(bad, true), std::invalid_argument);
}

TEST_CASE("H-matrix eigenvalues of the product Bochner tensor sum to zero") {
  const ModelSpec prod = make_model("product_cp1", {{"a", 1.0}, {"b", 1.0}});
  const CurvaturePackage pkg = curvature_at(prod.chart, prod.base_point());
  const HKPair hk = build_HK(pkg.B);
  for (const HermitianMatrix* mat : {&hk.H, &hk.K}) {
    const std::vector<double> ev = hermitian_eigenvalues(*mat);
    double sum = 0.0;
    for (double v : ev) sum += v;
    CHECK(std::abs(sum) < 1e-10);
  }
}
