#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kcurv/models.hpp"

using namespace kcurv;

TEST_CASE("flat model flags") {
  const ModelSpec flat = make_model("flat", {{"m", 3}});
  CHECK(flat.flags.einstein);
  CHECK(flat.flags.space_form);
  CHECK(flat.flags.scalar_sign == 0);
  CHECK_FALSE(flat.flags.compact);
}

TEST_CASE("fubini_study flags and curvature signs") {
  const ModelSpec fs = make_model("fubini_study", {{"m", 2}, {"scale", 1.0}});
  CHECK(fs.flags.einstein);
  CHECK(fs.flags.space_form);
  CHECK(fs.flags.compact);
  CHECK(fs.flags.scalar_sign == +1);
  const CurvaturePackage pkg = curvature_at(fs.chart, fs.base_point());
  CHECK(pkg.norm_B() < 1e-10);
}

TEST_CASE("complex_hyperbolic is a negatively curved space form") {
  const ModelSpec ch = make_model("complex_hyperbolic", {{"m", 2}, {"scale", 1.0}});
  CHECK(ch.flags.scalar_sign == -1);
  CHECK(ch.flags.space_form);
  CHECK_FALSE(ch.flags.compact);
  const CurvaturePackage pkg = curvature_at(ch.chart, ch.base_point());
  CHECK(pkg.scalar == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(pkg.norm_B() < 1e-10);
  CHECK(pkg.norm_E() < 1e-10);
}

TEST_CASE("product_cp1 flags depend on the factor scales") {
  const ModelSpec equal = make_model("product_cp1", {{"a", 1.0}, {"b", 1.0}});
  CHECK(equal.flags.einstein);
  CHECK_FALSE(equal.flags.space_form);
  CHECK(equal.flags.parallel_B);
  const CurvaturePackage pkg = curvature_at(equal.chart, equal.base_point());
  CHECK(curvature_norm_sq(pkg.B) > 1e-4);
  // closed form: |B|^2 = 32/3 for unit factor scales
  CHECK(curvature_norm_sq(pkg.B) == doctest::Approx(32.0 / 3.0).epsilon(1e-12));

  const ModelSpec unequal = make_model("product_cp1", {{"a", 1.0}, {"b", 2.0}});
  CHECK_FALSE(unequal.flags.einstein);
  CHECK(unequal.flags.constant_scalar);
  CHECK(unequal.flags.parallel_E);
}

TEST_CASE("product_cpm equal factors is Einstein in dimension 4") {
  const ModelSpec prod = make_model("product_cpm", {{"m1", 2}, {"m2", 2}});
  CHECK(prod.m == 4);
  CHECK(prod.flags.einstein);
  CHECK(prod.flags.parallel_B);
  const CurvaturePackage pkg = curvature_at(prod.chart, prod.base_point());
  CHECK(pkg.scalar == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(pkg.norm_E() < 1e-10);
  CHECK(pkg.norm_B() > 0.1);
}

TEST_CASE("perturbed_fs: eps = 0 agrees with fubini_study componentwise") {
  const ModelSpec fs = make_model("fubini_study", {{"m", 2}, {"scale", 1.0}});
  const ModelSpec pert = make_model("perturbed_fs", {{"m", 2}, {"eps", 0.0}});
  for (const auto& p : sample_points(fs, 5, 57)) {
    const Eigen::MatrixXcd a = fs.chart.metric(p);
    const Eigen::MatrixXcd b = pert.chart.metric(p);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("perturbed_fs breaks the Einstein condition and scalar constancy") {
  const ModelSpec pert = make_model("perturbed_fs", {{"m", 2}, {"eps", 0.05}});
  CHECK_FALSE(pert.flags.einstein);
  CHECK_FALSE(pert.flags.constant_scalar);
  double max_e = 0.0;
  for (const auto& p : sample_points(pert, 4, 3))
    max_e = std::max(max_e, curvature_at(pert.chart, p).norm_E());
  CHECK(max_e > 1e-4);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_model("nonesuch", {}), std::invalid_argument);
  CHECK_THROWS_AS(make_model("fubini_study", {{"m", 2}, {"scale", -1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_model("perturbed_fs", {{"m", 2}, {"eps", 1e-6}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_model("product_cp1", {{"a", 1.0}, {"b", 1.0 + 1e-9}}),
                  std::invalid_argument);
}

TEST_CASE("sample_points is deterministic per seed and stays in the box") {
  const ModelSpec fs = make_model("fubini_study", {{"m", 2}, {"scale", 1.0}});
  const auto a = sample_points(fs, 6, 99);
  const auto b = sample_points(fs, 6, 99);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < 2; ++k) CHECK(a[i][k] == b[i][k]);
  for (const auto& p : a) CHECK(fs.sample_box.contains(p));
}
