#include "kcurv/drivers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "kcurv/analysis.hpp"
#include "kcurv/rng.hpp"

namespace kcurv {

namespace {

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ComplexTensor metric_as_tensor(const MetricChart& chart, const ChartPoint& p) {
  const Eigen::MatrixXcd g = chart.metric(p);
  const int m = chart.dim();
  ComplexTensor t(IndexSignature(m, {Slot::Holo, Slot::AntiHolo}));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t(a, b) = g(a, b);
  return t;
}

}  // namespace

ReportSection run_analyze(const MetricChart& chart, const std::string& label,
                          const std::vector<ChartPoint>& points) {
  const auto t0 = std::chrono::steady_clock::now();
  ReportSection s;
  s.name = "analyze " + label;
  for (const auto& p : points) {
    const CurvaturePackage pkg = curvature_at(chart, p);
    s.analyze_rows.push_back({p, pkg.scalar, pkg.norm_E(), pkg.norm_B()});
  }
  s.wall_seconds = elapsed_since(t0);
  return s;
}

ReportSection run_identities(const ModelSpec& model, int npoints,
                             std::uint64_t seed, double tol_fd) {
  const auto t0 = std::chrono::steady_clock::now();
  ReportSection s;
  s.name = "identities " + model.name;
  const MetricChart& chart = model.chart;
  const bool exact = chart.exact_mode();

  const std::vector<ChartPoint> pts = sample_points(model, npoints, seed);
  double worst_sym_rm = 0.0, worst_sym_b = 0.0;
  double worst_e_trace = 0.0, worst_b_trace = 0.0, worst_conv = 0.0;
  double worst_routes = 0.0, worst_grad_g = 0.0;
  double worst_codazzi = 0.0, worst_par_e = 0.0, worst_par_b = 0.0;
  double worst_weitz_e = 0.0, worst_weitz_b = 0.0;

  for (const auto& p : pts) {
    const CurvaturePackage pkg = curvature_at(chart, p);
    const int m = model.m;
    const double scale = 1.0 + pkg.riemann.max_abs() + std::abs(pkg.scalar);

    worst_sym_rm = std::max(
        worst_sym_rm, check_kahler_symmetries(pkg.riemann, 1.0).lhs / scale);
    worst_sym_b =
        std::max(worst_sym_b, check_kahler_symmetries(pkg.B, 1.0).lhs / scale);
    worst_e_trace =
        std::max(worst_e_trace, std::abs(pkg.E.mat().trace()) / scale);
    worst_b_trace =
        std::max(worst_b_trace, contract(pkg.B, 0, 1).max_abs() / scale);
    ComplexTensor rm_tr = contract(pkg.riemann, 0, 1);
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d)
        worst_conv = std::max(
            worst_conv, std::abs(rm_tr(c, d) + pkg.ricci.mat()(c, d)) / scale);

    ComplexTensor diff = bochner_from_ricci(pkg) - bochner_from_E(pkg);
    worst_routes = std::max(worst_routes, diff.max_abs() / scale);

    const CovariantDerivative dg = covariant_derivative(
        chart, p,
        [&chart](const ChartPoint& q) { return metric_as_tensor(chart, q); });
    worst_grad_g = std::max(
        worst_grad_g, std::max(dg.holo.max_abs(), dg.anti.max_abs()) / scale);

    if (model.flags.constant_scalar && exact) {
      const CovariantDerivative de =
          covariant_derivative(chart, p, traceless_ricci_field(chart));
      double codazzi = 0.0;
      for (int g = 0; g < m; ++g)
        for (int d = 0; d < m; ++d)
          for (int l = 0; l < m; ++l)
            codazzi = std::max(codazzi,
                               std::abs(de.holo(g, d, l) - de.holo(l, d, g)));
      worst_codazzi = std::max(worst_codazzi, codazzi / scale);
      if (model.flags.parallel_E)
        worst_par_e =
            std::max(worst_par_e,
                     std::max(de.holo.max_abs(), de.anti.max_abs()) / scale);
    }
    if (model.flags.parallel_B && exact) {
      const CovariantDerivative db =
          covariant_derivative(chart, p, bochner_field(chart));
      worst_par_b = std::max(
          worst_par_b, std::max(db.holo.max_abs(), db.anti.max_abs()) / scale);
    }
    if (model.flags.parallel_E && model.flags.constant_scalar) {
      const double e_norm = pkg.norm_E();
      const double res = weitzenbock_residual_E(pkg, true, true);
      worst_weitz_e = std::max(
          worst_weitz_e, std::abs(res) / (1.0 + e_norm * e_norm * e_norm));
    }
    if (model.flags.parallel_B && model.flags.einstein) {
      const double b_norm = pkg.norm_B();
      const double res = weitzenbock_residual_B(pkg, true);
      worst_weitz_b = std::max(
          worst_weitz_b, std::abs(res) / (1.0 + b_norm * b_norm * b_norm));
    }
  }

  const double tol_alg = exact ? 1e-10 : kTolFd;
  s.gaps.push_back(make_gap_report("curvature_symmetries", worst_sym_rm, 0.0,
                                   tol_alg, model.name));
  s.gaps.push_back(
      make_gap_report("bochner_symmetries", worst_sym_b, 0.0, tol_alg, model.name));
  s.gaps.push_back(
      make_gap_report("E_trace", worst_e_trace, 0.0, 1e-10, model.name));
  s.gaps.push_back(
      make_gap_report("B_metric_trace", worst_b_trace, 0.0, 1e-10, model.name));
  s.gaps.push_back(make_gap_report("curvature_trace_convention", worst_conv, 0.0,
                                   1e-10, model.name));
  s.gaps.push_back(
      make_gap_report("bochner_routes_agree", worst_routes, 0.0, 1e-12, model.name));
  s.gaps.push_back(make_gap_report("metric_parallel", worst_grad_g, 0.0,
                                   exact ? 1e-8 : 1e-4, model.name));
  if (model.flags.constant_scalar && exact) {
    s.gaps.push_back(
        make_gap_report("codazzi_E", worst_codazzi, 0.0, 1e-7, model.name));
    if (model.flags.parallel_E)
      s.gaps.push_back(
          make_gap_report("parallel_E", worst_par_e, 0.0, 1e-7, model.name));
  }
  if (model.flags.parallel_B && exact)
    s.gaps.push_back(
        make_gap_report("parallel_B", worst_par_b, 0.0, 1e-7, model.name));
  if (model.flags.parallel_E && model.flags.constant_scalar)
    s.gaps.push_back(make_gap_report("weitzenbock_E_residual", worst_weitz_e,
                                     0.0, exact ? 1e-8 : kTolFd, model.name));
  if (model.flags.parallel_B && model.flags.einstein)
    s.gaps.push_back(make_gap_report("weitzenbock_B_residual", worst_weitz_b,
                                     0.0, 1e-8, model.name));

  // field-level refined Kato checks where the hypotheses allow them
  const ChartPoint probe = pts.empty() ? model.base_point() : pts[0];
  if (model.flags.constant_scalar && !model.flags.einstein)
    s.gaps.push_back(kato_field_gap(chart, probe, tol_fd));
  if (!model.flags.constant_scalar && !chart.exact_mode())
    s.gaps.push_back(kato_field_gap(chart, probe, tol_fd));  // reports skipped
  if (model.flags.einstein)
    s.gaps.push_back(bkn_gap(chart, probe, tol_fd));

  s.wall_seconds = elapsed_since(t0);
  return s;
}

ReportSection run_fuzz(const std::string& suite, int m, int samples,
                       std::uint64_t seed, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  ReportSection s;
  s.name = "fuzz " + suite;
  auto add = [&](const FuzzSummary& f) { s.fuzz.push_back(f); };
  const bool all = suite == "all";
  bool known = false;
  if (all || suite == "okumura") {
    add(fuzz_okumura(m, samples, derive_seed(seed, 1), tol));
    known = true;
  }
  if (all || suite == "kato") {
    add(fuzz_kato_pointwise(m, samples, derive_seed(seed, 2), tol));
    known = true;
  }
  if (all || suite == "kato-column") {
    add(fuzz_kato_column(m, samples, derive_seed(seed, 3), tol));
    known = true;
  }
  if (all || suite == "eeb") {
    add(fuzz_eeb_bound(m, samples, derive_seed(seed, 4), tol));
    known = true;
  }
  if (all || suite == "trace-cube") {
    add(fuzz_trace_cube(m, samples, derive_seed(seed, 5), tol));
    known = true;
  }
  if (all || suite == "vdecomp") {
    add(fuzz_v_decomposition(m, samples, derive_seed(seed, 6),
                             std::max(tol, 1e-10)));
    known = true;
  }
  if (!known)
    throw std::invalid_argument(
        "unknown fuzz suite '" + suite +
        "' (expected okumura, kato, kato-column, eeb, trace-cube, vdecomp, all)");
  s.wall_seconds = elapsed_since(t0);
  return s;
}

ReportSection run_pinch(const std::vector<std::string>& ids,
                        const ModelSpec& model, const QuadratureGrid& grid,
                        std::optional<double> user_lambda) {
  const auto t0 = std::chrono::steady_clock::now();
  ReportSection s;
  s.name = "pinch " + model.name;
  for (const auto& id : ids)
    s.verdicts.push_back(evaluate_theorem(id, model, grid, user_lambda));
  s.wall_seconds = elapsed_since(t0);
  return s;
}

std::vector<ModelSpec> default_zoo() {
  std::vector<ModelSpec> zoo;
  zoo.push_back(make_model("flat", {{"m", 2}}));
  zoo.push_back(make_model("fubini_study", {{"m", 2}, {"scale", 1}}));
  zoo.push_back(make_model("complex_hyperbolic", {{"m", 2}, {"scale", 1}}));
  zoo.push_back(make_model("product_cp1", {{"a", 1}, {"b", 1}}));
  zoo.push_back(make_model("product_cp1", {{"a", 1}, {"b", 2}}));
  zoo.push_back(make_model("product_cpm", {{"m1", 2}, {"m2", 2}}));
  zoo.push_back(make_model("perturbed_fs", {{"m", 2}, {"eps", 0.05}}));
  return zoo;
}

namespace {

std::string model_label(const ModelSpec& m) {
  std::string label = m.name;
  for (const auto& [k, v] : m.params) {
    std::string num = std::to_string(v);
    num.erase(num.find_last_not_of('0') + 1);
    if (!num.empty() && num.back() == '.') num.pop_back();
    label += " " + k + "=" + num;
  }
  return label;
}

}  // namespace

RunReport run_full_report(std::uint64_t seed, const QuadratureGrid& grid,
                          int fuzz_samples) {
  RunReport report;
  report.seed = seed;
  report.model_ref = "zoo";

  const std::vector<ModelSpec> zoo = default_zoo();
  for (const auto& model : zoo) {
    ReportSection s = run_identities(model, 5, derive_seed(seed, 11));
    s.name = "identities " + model_label(model);
    report.sections.push_back(std::move(s));
  }
  for (int m = 2; m <= 3; ++m) {
    ReportSection s = run_fuzz("all", m, fuzz_samples, derive_seed(seed, 100 + m));
    s.name = "fuzz all m=" + std::to_string(m);
    report.sections.push_back(std::move(s));
  }
  const std::vector<std::string> ids = theorem_ids();
  for (const auto& model : zoo) {
    ReportSection s = run_pinch(ids, model, grid, std::nullopt);
    s.name = "pinch " + model_label(model);
    report.sections.push_back(std::move(s));
  }
  return report;
}

}  // namespace kcurv
