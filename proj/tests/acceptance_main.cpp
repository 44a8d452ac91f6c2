// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. The first argument is the path to the CLI binary (used by the
// determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kcurv/analysis.hpp"
#include "kcurv/drivers.hpp"
#include "kcurv/inequalities.hpp"
#include "kcurv/models.hpp"
#include "kcurv/pinching.hpp"
#include "kcurv/quadrature.hpp"

using namespace kcurv;

namespace {

int g_failures = 0;

void report(int index, const std::string& label, bool pass,
            const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << index << ": "
            << label;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- criterion 1: space-form detection -----------------------------------

void criterion_space_forms() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream detail;

  for (int m : {2, 3}) {
    const ModelSpec fs =
        make_model("fubini_study", {{"m", double(m)}, {"scale", 1.0}});
    double worst = 0.0;
    for (const auto& p : sample_points(fs, 20, 101 + m)) {
      const CurvaturePackage pkg = curvature_at(fs.chart, p);
      worst = std::max({worst, pkg.norm_E(), pkg.norm_B()});
    }
    detail << "fs(m=" << m << ") max=" << worst << " ";
    if (worst >= 1e-9) pass = false;
  }

  const ModelSpec flat = make_model("flat", {{"m", 2}});
  for (const auto& p : sample_points(flat, 5, 7)) {
    const CurvaturePackage pkg = curvature_at(flat.chart, p);
    if (pkg.norm_E() != 0.0 || pkg.norm_B() != 0.0) pass = false;
  }

  const ModelSpec ch = make_model("complex_hyperbolic", {{"m", 2}, {"scale", 1.0}});
  double ch_b = 0.0, ch_r = 0.0;
  for (const auto& p : sample_points(ch, 10, 11)) {
    const CurvaturePackage pkg = curvature_at(ch.chart, p);
    ch_b = std::max(ch_b, pkg.norm_B());
    ch_r = pkg.scalar;
  }
  if (ch_b >= 1e-9 || !(ch_r < 0.0)) pass = false;
  detail << "ch |B|=" << ch_b << " R=" << ch_r;

  const double dt = seconds_since(t0);
  if (dt >= 30.0) pass = false;
  detail << " (" << dt << "s)";
  report(1, "space-form detection", pass, detail.str());
}

// ---- criterion 2: convention consistency ----------------------------------

void criterion_conventions() {
  bool pass = true;
  std::ostringstream detail;
  double worst_trace = 0.0, worst_routes = 0.0;
  for (const ModelSpec& model : default_zoo()) {
    for (const auto& p : sample_points(model, 10, 211)) {
      const CurvaturePackage pkg = curvature_at(model.chart, p);
      const double scale = 1.0 + pkg.riemann.max_abs() + std::abs(pkg.scalar);
      worst_trace =
          std::max(worst_trace, contract(pkg.B, 0, 1).max_abs() / scale);
      ComplexTensor rm_tr = contract(pkg.riemann, 0, 1);
      for (int c = 0; c < model.m; ++c)
        for (int d = 0; d < model.m; ++d)
          worst_trace = std::max(
              worst_trace,
              std::abs(rm_tr(c, d) + pkg.ricci.mat()(c, d)) / scale);
      ComplexTensor diff = bochner_from_ricci(pkg) - bochner_from_E(pkg);
      worst_routes = std::max(worst_routes, diff.max_abs() / scale);
    }
  }
  if (worst_trace >= 1e-10 || worst_routes >= 1e-12) pass = false;
  detail << "max trace residual=" << worst_trace
         << " max route difference=" << worst_routes;
  report(2, "convention consistency", pass, detail.str());
}

// ---- criterion 3: decomposition identities ---------------------------------

void criterion_v_decomposition() {
  bool pass = true;
  std::ostringstream detail;
  for (int m : {2, 3, 4}) {
    const FuzzSummary f = fuzz_v_decomposition(m, 10000, 31337 + m);
    detail << "m=" << m << " min_gap=" << f.min_gap << " ";
    if (!f.pass || f.min_gap < -1e-10) pass = false;
  }
  report(3, "decomposition identities (10^4 seeds per dimension)", pass,
         detail.str());
}

// ---- criterion 4: inequality fuzzing ---------------------------------------

void criterion_fuzzing() {
  bool pass = true;
  std::ostringstream detail;
  const int n = 100000;

  const FuzzSummary ok = fuzz_okumura(4, n, 1001);
  const FuzzSummary kato = fuzz_kato_pointwise(3, n, 1003);
  const FuzzSummary col = fuzz_kato_column(3, n, 1005);
  const FuzzSummary eeb = fuzz_eeb_bound(2, n, 1007);
  const FuzzSummary cube = fuzz_trace_cube(2, n, 1009);
  for (const FuzzSummary* f : {&ok, &kato, &col, &eeb, &cube}) {
    detail << f->suite << "=" << f->min_gap << " ";
    if (f->min_gap < -1e-10) pass = false;
  }

  const std::vector<double> pattern{1.0, 1.0, -2.0};
  const double eq_gap = std::abs(okumura_gap(pattern).gap);
  detail << "okumura_equality=" << eq_gap;
  if (eq_gap >= 1e-12) pass = false;

  report(4, "inequality fuzzing (10^5 samples per suite)", pass, detail.str());
}

// ---- criterion 5: Weitzenboeck residuals -----------------------------------

void criterion_weitzenbock() {
  bool pass = true;
  std::ostringstream detail;

  const ModelSpec unequal = make_model("product_cp1", {{"a", 1.0}, {"b", 2.0}});
  double worst_e = 0.0;
  for (const auto& p : sample_points(unequal, 5, 501)) {
    const CurvaturePackage pkg = curvature_at(unequal.chart, p);
    const double e = pkg.norm_E();
    worst_e = std::max(worst_e, std::abs(weitzenbock_residual_E(pkg, true, true)) /
                                    (1.0 + e * e * e));
  }
  detail << "E-residual=" << worst_e << " ";
  if (worst_e >= 1e-8) pass = false;

  for (const auto& [name, params] :
       std::vector<std::pair<std::string, std::map<std::string, double>>>{
           {"product_cp1", {{"a", 1.0}, {"b", 1.0}}},
           {"product_cpm", {{"m1", 2}, {"m2", 2}}}}) {
    const ModelSpec model = make_model(name, params);
    double worst_b = 0.0;
    for (const auto& p : sample_points(model, 3, 503)) {
      const CurvaturePackage pkg = curvature_at(model.chart, p);
      const double b = pkg.norm_B();
      worst_b = std::max(worst_b, std::abs(weitzenbock_residual_B(pkg, true)) /
                                      (1.0 + b * b * b));
    }
    detail << name << " B-residual=" << worst_b << " ";
    if (worst_b >= 1e-8) pass = false;
  }
  report(5, "Weitzenboeck residuals on parallel models", pass, detail.str());
}

// ---- criterion 6: pinching-constant reproduction ---------------------------

void criterion_constants() {
  bool pass = true;
  std::ostringstream detail;
  if (P_constant(2) != 1.5) pass = false;
  if (Q_constant(2) != 2.0 * 5.0 / 3.0) pass = false;
  if (Q_constant(3) != 3.0 * 6.0 / 4.0) pass = false;
  if (Q_constant(4) != 2.0 * 7.0 / 3.0) pass = false;
  if (Q_constant(7) != 2.0 * 13.0 / 6.0) pass = false;
  detail << "P(2)=" << P_constant(2) << " Q(2)=" << Q_constant(2)
         << " Q(4)=" << Q_constant(4) << " ";
  int ordering_failures = 0;
  for (const GapReport& g : threshold_ordering_checks())
    if (!g.pass || g.gap <= 0.0) ++ordering_failures;
  detail << "ordering failures=" << ordering_failures;
  if (ordering_failures > 0) pass = false;
  report(6, "pinching-constant reproduction and ordering", pass, detail.str());
}

// ---- criterion 7: theorem-consistency matrix --------------------------------

void criterion_matrix() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream detail;
  const QuadratureGrid grid;
  const std::vector<ModelSpec> zoo = default_zoo();
  const std::vector<std::string> ids = theorem_ids();

  int contradictions = 0;
  bool t44_violated = false, t34_violated = false, fs_all_ok = true;
  for (const ModelSpec& model : zoo) {
    for (const std::string& id : ids) {
      const PinchVerdict v = evaluate_theorem(id, model, grid);
      if (v.consistency == "paper-contradiction") ++contradictions;
      if (model.name == "product_cp1" &&
          std::abs(model.params.at("a") - model.params.at("b")) < 1e-12 &&
          id == "T4.4" && v.consistency == "violated-as-expected" &&
          v.margin <= 0.0)
        t44_violated = true;
      if (model.name == "product_cp1" &&
          std::abs(model.params.at("a") - model.params.at("b")) > 0.5 &&
          id == "T3.4" && v.consistency == "violated-as-expected" &&
          v.margin <= 0.0)
        t34_violated = true;
      if (model.name == "fubini_study" && v.applicable &&
          !(v.satisfied && v.lhs < 1e-9))
        fs_all_ok = false;
    }
  }
  const double dt = seconds_since(t0);
  detail << "contradictions=" << contradictions
         << " T4.4-violated=" << (t44_violated ? "yes" : "no")
         << " T3.4-violated=" << (t34_violated ? "yes" : "no")
         << " fs-vacuous=" << (fs_all_ok ? "yes" : "no") << " (" << dt << "s)";
  if (contradictions > 0 || !t44_violated || !t34_violated || !fs_all_ok ||
      dt >= 300.0)
    pass = false;
  report(7, "theorem-consistency matrix", pass, detail.str());
}

// ---- criterion 8: quadrature sanity ----------------------------------------

void criterion_quadrature() {
  bool pass = true;
  std::ostringstream detail;
  const ModelSpec fs1 = make_model("fubini_study", {{"m", 1}, {"scale", 1.0}});
  const QuadratureGrid grid;
  const double vol = chart_volume(fs1.chart, grid).value;
  const double rel = std::abs(vol - 2.0 * M_PI) / (2.0 * M_PI);
  detail << "volume=" << vol << " rel_err=" << rel << " ";
  if (rel >= 1e-6) pass = false;

  // doubling the grid moves L^m norms by < 1e-5 relative
  auto density = [&fs1](const ChartPoint& z) {
    return 1.0 / (1.0 + std::norm(z[0]));
  };
  const double n1 = lp_norm(fs1.chart, grid, density, 1.0);
  const double n2 = lp_norm(fs1.chart, grid.refined(), density, 1.0);
  const double change1 = std::abs(n1 - n2) / n2;
  const double v1 = chart_volume(fs1.chart, grid).value;
  const double v2 = chart_volume(fs1.chart, grid.refined()).value;
  const double change2 = std::abs(v1 - v2) / v2;
  const ModelSpec prod = make_model("product_cp1", {{"a", 1.0}, {"b", 1.0}});
  const double pv1 = model_volume(prod, grid);
  const double pv2 = model_volume(prod, grid.refined());
  const double change3 = std::abs(pv1 - pv2) / pv2;
  detail << "changes on doubling: " << change1 << " " << change2 << " "
         << change3;
  if (change1 >= 1e-5 || change2 >= 1e-5 || change3 >= 1e-5) pass = false;
  report(8, "quadrature sanity", pass, detail.str());
}

// ---- criterion 9: determinism ----------------------------------------------

void criterion_determinism(const std::string& cli) {
  bool pass = true;
  std::ostringstream detail;
  if (cli.empty()) {
    report(9, "determinism", false, "CLI path not supplied");
    return;
  }
  const std::string out1 = "acceptance_det_1.json";
  const std::string out2 = "acceptance_det_2.json";
  const std::string base = "\"" + cli +
                           "\" fuzz all --m 3 --samples 5000 --seed 7 --json ";
  const std::string pinch =
      "\"" + cli + "\" pinch all --model product_cp1 --a 1 --b 2 --seed 3 --json ";
  for (const auto& [cmd, o1, o2] :
       std::vector<std::tuple<std::string, std::string, std::string>>{
           {base, out1, out2},
           {pinch, "acceptance_det_3.json", "acceptance_det_4.json"}}) {
    const int rc1 = std::system((cmd + o1 + " > /dev/null 2>&1").c_str());
    const int rc2 = std::system((cmd + o2 + " > /dev/null 2>&1").c_str());
    const std::string a = read_file(o1), b = read_file(o2);
    if (rc1 != rc2 || a.empty() || a != b) {
      pass = false;
      detail << "mismatch for: " << cmd << " (rc " << rc1 << "/" << rc2
             << ", bytes " << a.size() << "/" << b.size() << ") ";
    }
    std::remove(o1.c_str());
    std::remove(o2.c_str());
  }
  if (pass) detail << "byte-identical JSON across reruns";
  report(9, "determinism", pass, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  std::cout.setf(std::ios::fmtflags(0), std::ios::floatfield);
  std::cout.precision(3);

  try {
    criterion_space_forms();
    criterion_conventions();
    criterion_v_decomposition();
    criterion_fuzzing();
    criterion_weitzenbock();
    criterion_constants();
    criterion_matrix();
    criterion_quadrature();
    criterion_determinism(cli);
  } catch (const std::exception& e) {
    std::cout << "FAIL (exception): " << e.what() << std::endl;
    return 99;
  }

  if (g_failures == 0) {
    std::cout << "ACCEPTANCE: all criteria passed" << std::endl;
    return 0;
  }
  std::cout << "ACCEPTANCE: " << g_failures << " criterion(s) failed"
            << std::endl;
  return 1;
}
