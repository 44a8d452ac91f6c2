#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kcurv/chart.hpp"
#include "kcurv/drivers.hpp"
#include "kcurv/models.hpp"

using namespace kcurv;

TEST_CASE("flat chart: all curvature objects vanish") {
  const ModelSpec flat = make_model("flat", {{"m", 3}});
  for (const auto& p : sample_points(flat, 4, 5)) {
    const CurvaturePackage pkg = curvature_at(flat.chart, p);
    CHECK(pkg.riemann.max_abs() == 0.0);
    CHECK(pkg.ricci.mat().norm() == 0.0);
    CHECK(pkg.scalar == 0.0);
    CHECK(pkg.norm_E() == 0.0);
    CHECK(pkg.norm_B() == 0.0);
  }
}

TEST_CASE("Fubini-Study: Einstein with positive scalar curvature, B = 0") {
  for (int m : {2, 3}) {
    const ModelSpec fs =
        make_model("fubini_study", {{"m", double(m)}, {"scale", 1.0}});
    const CurvaturePackage origin = curvature_at(fs.chart, fs.base_point());
    CHECK(origin.scalar == doctest::Approx(m * (m + 1.0)).epsilon(1e-12));
    for (const auto& p : sample_points(fs, 5, 17)) {
      const CurvaturePackage pkg = curvature_at(fs.chart, p);
      CHECK(pkg.norm_E() < 1e-10);
      CHECK(pkg.norm_B() < 1e-10);
      CHECK(pkg.scalar == doctest::Approx(m * (m + 1.0)).epsilon(1e-9));
    }
  }
}

TEST_CASE("product of unequal factors: constant R, traceless E = diag(e,-e)") {
  const ModelSpec prod = make_model("product_cp1", {{"a", 1.0}, {"b", 2.0}});
  double r_ref = 0.0;
  bool first = true;
  for (const auto& p : sample_points(prod, 10, 23)) {
    const CurvaturePackage pkg = curvature_at(prod.chart, p);
    if (first) {
      r_ref = pkg.scalar;
      first = false;
    }
    CHECK(pkg.scalar == doctest::Approx(r_ref).epsilon(1e-9));
    CHECK(std::abs(pkg.E.mat().trace()) < 1e-12);
    CHECK(pkg.norm_E() > 0.1);
  }
  // closed form at the base point: factor scalars 2/a and 2/b
  const CurvaturePackage base = curvature_at(prod.chart, prod.base_point());
  CHECK(base.scalar == doctest::Approx(3.0).epsilon(1e-12));
  const auto e = base.E.mat();
  CHECK(std::abs(e(0, 0) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(e(1, 1) - cplx(-0.5, 0.0)) < 1e-12);
}

TEST_CASE("traceless_ricci: diag(2,0) gives diag(1,-1)") {
  Eigen::MatrixXcd ric = Eigen::MatrixXcd::Zero(2, 2);
  ric(0, 0) = 2.0;
  const HermitianMatrix e = traceless_ricci(HermitianMatrix(ric), 2);
  CHECK(std::abs(e.mat()(0, 0) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(e.mat()(1, 1) - cplx(-1.0, 0.0)) < 1e-14);
}

TEST_CASE("exact and finite-difference curvature agree on Fubini-Study") {
  const ModelSpec fs = make_model("fubini_study", {{"m", 2}, {"scale", 1.0}});
  // wrap the same metric function in an FD chart
  const MetricChart fd_chart = MetricChart::metric_fd(
      2, DomainBox::cube(2, 5.0),
      [&fs](const ChartPoint& p) { return fs.chart.metric(p); });
  for (const auto& p : sample_points(fs, 10, 7)) {
    const CurvaturePackage a = curvature_at(fs.chart, p);
    const CurvaturePackage b = curvature_at(fd_chart, p);
    ComplexTensor diff = a.riemann;
    diff -= b.riemann;
    const double scale = 1.0 + a.riemann.max_abs();
    CHECK(diff.max_abs() / scale < 1e-6);
    CHECK(std::abs(a.scalar - b.scalar) / (1.0 + std::abs(a.scalar)) < 1e-6);
  }
}

TEST_CASE("potential-FD chart reproduces the exact Fubini-Study curvature") {
  const MetricChart pot_chart = MetricChart::potential_fd(
      2, DomainBox::cube(2, 5.0), [](const ChartPoint& z) {
        return std::log(1.0 + std::norm(z[0]) + std::norm(z[1]));
      });
  const ModelSpec fs = make_model("fubini_study", {{"m", 2}, {"scale", 1.0}});
  for (const auto& p : sample_points(fs, 3, 71)) {
    const CurvaturePackage a = curvature_at(fs.chart, p);
    const CurvaturePackage b = curvature_at(pot_chart, p);
    CHECK(std::abs(a.scalar - b.scalar) < 1e-5 * (1.0 + std::abs(a.scalar)));
    CHECK(b.norm_E() < 1e-5);
    CHECK(b.norm_B() < 1e-5);
  }
}

TEST_CASE("trace identities hold at random points of every zoo model") {
  for (const auto& name_params : std::vector<std::pair<std::string, std::map<std::string, double>>>{
           {"flat", {{"m", 2}}},
           {"fubini_study", {{"m", 2}}},
           {"complex_hyperbolic", {{"m", 2}}},
           {"product_cp1", {{"a", 1}, {"b", 2}}},
           {"product_cpm", {{"m1", 1}, {"m2", 2}}},
       }) {
    const ModelSpec model = make_model(name_params.first, name_params.second);
    for (const auto& p : sample_points(model, 10, 13)) {
      const CurvaturePackage pkg = curvature_at(model.chart, p);
      const double scale = 1.0 + pkg.riemann.max_abs() + std::abs(pkg.scalar);
      CHECK(contract(pkg.B, 0, 1).max_abs() / scale < 1e-10);
      ComplexTensor rm_tr = contract(pkg.riemann, 0, 1);
      for (int c = 0; c < model.m; ++c)
        for (int d = 0; d < model.m; ++d)
          CHECK(std::abs(rm_tr(c, d) + pkg.ricci.mat()(c, d)) / scale < 1e-10);
    }
  }
}

TEST_CASE("covariant derivative: the metric is parallel") {
  for (const char* name : {"fubini_study", "complex_hyperbolic"}) {
    const ModelSpec model = make_model(name, {{"m", 2}, {"scale", 1.0}});
    auto metric_field = [&model](const ChartPoint& q) {
      const Eigen::MatrixXcd g = model.chart.metric(q);
      ComplexTensor t(IndexSignature(2, {Slot::Holo, Slot::AntiHolo}));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) t(a, b) = g(a, b);
      return t;
    };
    for (const auto& p : sample_points(model, 3, 37)) {
      const CovariantDerivative d =
          covariant_derivative(model.chart, p, metric_field);
      CHECK(d.holo.max_abs() < 1e-8);
      CHECK(d.anti.max_abs() < 1e-8);
    }
  }
}

TEST_CASE("covariant derivative: E is parallel and Codazzi on products") {
  const ModelSpec prod = make_model("product_cp1", {{"a", 1.0}, {"b", 2.0}});
  for (const auto& p : sample_points(prod, 3, 41)) {
    const CovariantDerivative d =
        covariant_derivative(prod.chart, p, traceless_ricci_field(prod.chart));
    CHECK(d.holo.max_abs() < 1e-7);
    CHECK(d.anti.max_abs() < 1e-7);
    for (int g = 0; g < 2; ++g)
      for (int dd = 0; dd < 2; ++dd)
        for (int l = 0; l < 2; ++l)
          CHECK(std::abs(d.holo(g, dd, l) - d.holo(l, dd, g)) < 1e-7);
  }
}

TEST_CASE("scalar field gradient norm") {
  const ModelSpec flat = make_model("flat", {{"m", 1}});
  SUBCASE("constant field has zero gradient") {
    const double v = scalar_field_gradient_norm_sq(
        flat.chart, {cplx(0.3, 0.1)}, [](const ChartPoint&) { return 2.5; });
    CHECK(std::abs(v) < 1e-12);
  }
  SUBCASE("|z|^2 at z = 1 against the closed form") {
    // |grad f|^2 = 2 g^{-1} |df/dz|^2 = 2 |zbar|^2 = 2 at z = 1
    const double v = scalar_field_gradient_norm_sq(
        flat.chart, {cplx(1.0, 0.0)},
        [](const ChartPoint& p) { return std::norm(p[0]); });
    CHECK(v == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("|E| field on Fubini-Study vanishes identically") {
    const ModelSpec fs = make_model("fubini_study", {{"m", 2}, {"scale", 1.0}});
    const double v = scalar_field_gradient_norm_sq(
        fs.chart, fs.base_point(), [&fs](const ChartPoint& q) {
          return curvature_at(fs.chart, q).norm_E();
        });
    CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("domain and positivity guards") {
  const ModelSpec ch = make_model("complex_hyperbolic", {{"m", 2}, {"scale", 1.0}});
  // outside the 0.9 ball
  CHECK_THROWS_AS(curvature_at(ch.chart, {cplx(0.9, 0.0), cplx(0.2, 0.0)}),
                  std::domain_error);

  // metric function that fails positivity away from the origin
  const MetricChart bad = MetricChart::metric_fd(
      1, DomainBox::cube(1, 4.0), [](const ChartPoint& p) {
        Eigen::MatrixXcd g(1, 1);
        g(0, 0) = 1.0 - std::norm(p[0]);
        return g;
      });
  CHECK_THROWS_WITH_AS(curvature_at(bad, {cplx(2.0, 0.0)}),
                       doctest::Contains("not positive definite"),
                       std::runtime_error);
}

TEST_CASE("scalar curvature is constant across every constant-scalar model") {
  for (const auto& [name, params] :
       std::vector<std::pair<std::string, std::map<std::string, double>>>{
           {"fubini_study", {{"m", 3}}},
           {"complex_hyperbolic", {{"m", 2}}},
           {"product_cp1", {{"a", 2}, {"b", 3}}},
       }) {
    const ModelSpec model = make_model(name, params);
    std::vector<double> values;
    for (const auto& p : sample_points(model, 10, 3))
      values.push_back(curvature_at(model.chart, p).scalar);
    double lo = values[0], hi = values[0];
    for (double v : values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK((hi - lo) / std::max(1.0, std::abs(values[0])) < 1e-8);
  }
}

TEST_CASE("curvature symmetries hold across the whole zoo, FD models included") {
  for (const ModelSpec& model : default_zoo()) {
    const double tol = model.chart.tolerance();
    for (const auto& p : sample_points(model, 10, 67)) {
      const CurvaturePackage pkg = curvature_at(model.chart, p);
      const double scale = 1.0 + pkg.riemann.max_abs();
      CHECK(check_kahler_symmetries(pkg.riemann, tol * scale).pass);
      CHECK(check_kahler_symmetries(pkg.B, tol * scale).pass);
    }
  }
}

TEST_CASE("Codazzi residual of E stays below 1e-6 in metric-FD mode") {
  const ModelSpec prod = make_model("product_cp1", {{"a", 1.0}, {"b", 2.0}});
  const MetricChart fd_chart = MetricChart::metric_fd(
      2, DomainBox::cube(2, 5.0),
      [&prod](const ChartPoint& q) { return prod.chart.metric(q); });
  for (const auto& p : sample_points(prod, 2, 83)) {
    const CovariantDerivative d =
        covariant_derivative(fd_chart, p, traceless_ricci_field(fd_chart));
    for (int g = 0; g < 2; ++g)
      for (int dd = 0; dd < 2; ++dd)
        for (int l = 0; l < 2; ++l)
          CHECK(std::abs(d.holo(g, dd, l) - d.holo(l, dd, g)) < 1e-6);
  }
}

TEST_CASE("|E|^2 is frame-invariant on the perturbed model") {
  const ModelSpec pert = make_model("perturbed_fs", {{"m", 2}, {"eps", 0.05}});
  for (const auto& p : sample_points(pert, 3, 29)) {
    const CoordinateCurvature coord = coordinate_curvature_at(pert.chart, p);
    const Eigen::MatrixXcd gi = coord.g.inverse();
    // coordinate contraction |E|^2 = 2 tr((g^{-1} E)^2)
    const double coord_value = 2.0 * (gi * coord.E * gi * coord.E).trace().real();
    const CurvaturePackage pkg = curvature_at(pert.chart, p);
    const double frame_value = hermitian_norm_sq(pkg.E);
    CHECK(frame_value ==
          doctest::Approx(coord_value).epsilon(1e-10));
  }
}
