// Command-line front end: batch curvature diagnostics for Kahler metrics on
// coordinate charts. Subcommands: analyze, identities, fuzz, pinch, report.
// Exit codes: 0 all checks passed, 1 a mathematical check failed,
// 2 usage or input errors.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kcurv/drivers.hpp"
#include "kcurv/rng.hpp"

namespace {

using namespace kcurv;

struct ModelOptions {
  std::string model;
  std::string metric_file;
  int m = 2;
  double scale = 1.0;
  double a = 1.0;
  double b = 1.0;
  int m1 = 2;
  int m2 = 2;
  double eps = 0.05;
};

void add_model_options(CLI::App* cmd, ModelOptions& opt) {
  cmd->add_option("--model", opt.model,
                  "model name (flat, fubini_study, complex_hyperbolic, "
                  "product_cp1, product_cpm, perturbed_fs)");
  cmd->add_option("--metric", opt.metric_file, "JSON metric specification file");
  cmd->add_option("--m", opt.m, "complex dimension");
  cmd->add_option("--scale", opt.scale, "metric scale parameter");
  cmd->add_option("--a", opt.a, "first factor scale (product_cp1)");
  cmd->add_option("--b", opt.b, "second factor scale (product_cp1)");
  cmd->add_option("--m1", opt.m1, "first factor dimension (product_cpm)");
  cmd->add_option("--m2", opt.m2, "second factor dimension (product_cpm)");
  cmd->add_option("--eps", opt.eps, "perturbation size (perturbed_fs)");
}

ModelSpec build_model(const ModelOptions& opt) {
  std::map<std::string, double> params;
  params["m"] = opt.m;
  params["scale"] = opt.scale;
  params["a"] = opt.a;
  params["b"] = opt.b;
  params["m1"] = opt.m1;
  params["m2"] = opt.m2;
  params["eps"] = opt.eps;
  return make_model(opt.model, params);
}

struct OutputOptions {
  std::string json_path;
  std::string csv_path;
  bool timings = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--json", out.json_path, "write the JSON report to this path");
  cmd->add_option("--csv", out.csv_path, "write flat CSV rows to this path");
  cmd->add_flag("--timings", out.timings,
                "include wall-clock timings in the JSON report (breaks "
                "byte-for-byte reproducibility)");
}

int finish(RunReport& report, const OutputOptions& out) {
  report.include_timings = out.timings;
  report.print_human(std::cout);
  if (!out.json_path.empty()) write_text_file(out.json_path, report.to_json_text());
  if (!out.csv_path.empty()) write_text_file(out.csv_path, report.to_csv_text());
  return report.all_pass() ? 0 : 1;
}

std::vector<ChartPoint> resolve_points(const std::string& spec, int m,
                                       const DomainBox& box, std::uint64_t seed) {
  std::vector<ChartPoint> pts;
  if (spec == "origin" || spec.empty()) {
    pts.emplace_back(m, cplx(0.0, 0.0));
    return pts;
  }
  if (spec.rfind("random:", 0) == 0) {
    const int n = std::stoi(spec.substr(7));
    SeededRng rng(seed);
    for (int i = 0; i < n; ++i) {
      ChartPoint p(m);
      for (int k = 0; k < m; ++k) {
        const auto& c = box.coords[k];
        p[k] = cplx(rng.uniform(c.re_lo, c.re_hi), rng.uniform(c.im_lo, c.im_hi));
      }
      pts.push_back(std::move(p));
    }
    return pts;
  }
  throw CLI::ValidationError("--points", "expected 'origin' or 'random:N'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kcurv - curvature diagnostics for Kahler metrics on charts"};
  app.require_subcommand(1);
  app.fallthrough(true);  // global options may follow the subcommand

  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  double tol_algebraic = kTolAlgebraic;
  double tol_fd = kTolFd;
  app.add_option("--tol-algebraic", tol_algebraic,
                 "pass tolerance for algebraic fuzz checks")
      ->capture_default_str();
  app.add_option("--tol-fd", tol_fd,
                 "pass tolerance for finite-difference field checks")
      ->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "curvature summary at points");
  ModelOptions an_model;
  OutputOptions an_out;
  std::string an_points = "origin";
  add_model_options(analyze, an_model);
  add_output_options(analyze, an_out);
  analyze->add_option("--points", an_points, "origin or random:N");

  // identities
  auto* identities =
      app.add_subcommand("identities", "symmetry/trace/Weitzenboeck checks");
  ModelOptions id_model;
  OutputOptions id_out;
  int id_npoints = 5;
  add_model_options(identities, id_model);
  add_output_options(identities, id_out);
  identities->add_option("--npoints", id_npoints, "number of sample points");

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "randomized inequality checks");
  std::string fuzz_suite;
  int fuzz_m = 3;
  int fuzz_samples = 100000;
  OutputOptions fuzz_out;
  fuzz->add_option("suite", fuzz_suite,
                   "okumura | kato | kato-column | eeb | trace-cube | vdecomp | all")
      ->required();
  fuzz->add_option("--m", fuzz_m, "complex dimension");
  fuzz->add_option("--samples", fuzz_samples, "sample count");
  add_output_options(fuzz, fuzz_out);

  // pinch
  auto* pinch = app.add_subcommand("pinch", "evaluate pinching hypotheses");
  std::string pinch_id;
  ModelOptions pinch_model;
  OutputOptions pinch_out;
  int grid_n = 32;
  double trunc_radius = 0.0;
  double user_lambda = 0.0;
  pinch->add_option("theorem", pinch_id, "theorem id (T3.1..T4.8) or 'all'")
      ->required();
  add_model_options(pinch, pinch_model);
  add_output_options(pinch, pinch_out);
  pinch->add_option("--grid-n", grid_n, "quadrature nodes per coordinate");
  pinch->add_option("--trunc-radius", trunc_radius,
                    "truncation radius for noncompact diagnostics");
  pinch->add_option("--lambda", user_lambda, "user-supplied Yamabe constant");

  // report
  auto* report_cmd =
      app.add_subcommand("report", "full batch: identities + fuzz + verdicts");
  OutputOptions rep_out;
  int rep_samples = 20000;
  int rep_grid_n = 32;
  add_output_options(report_cmd, rep_out);
  report_cmd->add_option("--samples", rep_samples, "fuzz samples per suite");
  report_cmd->add_option("--grid-n", rep_grid_n, "quadrature nodes per coordinate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) {
      RunReport report;
      report.seed = seed;
      if (!an_model.metric_file.empty()) {
        MetricChart chart = load_metric_chart(an_model.metric_file);
        report.model_ref = an_model.metric_file;
        DomainBox inner = chart.domain();
        for (auto& c : inner.coords) {
          // keep random probes away from the user's domain boundary
          const double re_w = 0.25 * (c.re_hi - c.re_lo);
          const double im_w = 0.25 * (c.im_hi - c.im_lo);
          c.re_lo += re_w;
          c.re_hi -= re_w;
          c.im_lo += im_w;
          c.im_hi -= im_w;
        }
        report.sections.push_back(run_analyze(
            chart, an_model.metric_file,
            resolve_points(an_points, chart.dim(), inner, seed)));
      } else if (!an_model.model.empty()) {
        const ModelSpec model = build_model(an_model);
        report.model_ref = model.name;
        ReportSection s =
            run_analyze(model.chart, model.name,
                        resolve_points(an_points, model.m, model.sample_box, seed));
        s.model_flags = flags_string(model.flags);
        report.sections.push_back(std::move(s));
      } else {
        std::cerr << "analyze: provide --model or --metric\n";
        return 2;
      }
      return finish(report, an_out);
    }

    if (*identities) {
      if (id_model.model.empty()) {
        std::cerr << "identities: provide --model\n";
        return 2;
      }
      const ModelSpec model = build_model(id_model);
      RunReport report;
      report.seed = seed;
      report.model_ref = model.name;
      report.sections.push_back(
          run_identities(model, id_npoints, seed, tol_fd));
      return finish(report, id_out);
    }

    if (*fuzz) {
      RunReport report;
      report.seed = seed;
      report.model_ref = "";
      report.tol_algebraic = tol_algebraic;
      report.tol_fd = tol_fd;
      report.sections.push_back(
          run_fuzz(fuzz_suite, fuzz_m, fuzz_samples, seed, tol_algebraic));
      return finish(report, fuzz_out);
    }

    if (*pinch) {
      if (pinch_model.model.empty()) {
        std::cerr << "pinch: provide --model\n";
        return 2;
      }
      const ModelSpec model = build_model(pinch_model);
      QuadratureGrid grid;
      grid.radial_nodes = grid_n;
      grid.angular_nodes = grid_n;
      if (trunc_radius > 0.0) grid.trunc_radius = trunc_radius;
      std::optional<double> lambda;
      if (user_lambda > 0.0) lambda = user_lambda;
      std::vector<std::string> ids;
      if (pinch_id == "all")
        ids = theorem_ids();
      else
        ids.push_back(pinch_id);
      // reject unknown/misdimensioned theorems up front with a clear message
      for (const auto& id : ids) {
        const TheoremInfo& info = theorem_info(id);
        if (model.m < info.m_min && pinch_id != "all") {
          std::cerr << "pinch: theorem " << id << " requires m >= "
                    << info.m_min << " but model has m = " << model.m << "\n";
          return 2;
        }
      }
      RunReport report;
      report.seed = seed;
      report.model_ref = model.name;
      report.sections.push_back(run_pinch(ids, model, grid, lambda));
      return finish(report, pinch_out);
    }

    if (*report_cmd) {
      QuadratureGrid grid;
      grid.radial_nodes = rep_grid_n;
      grid.angular_nodes = rep_grid_n;
      RunReport report = run_full_report(seed, grid, rep_samples);
      return finish(report, rep_out);
    }
  } catch (const MetricFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
