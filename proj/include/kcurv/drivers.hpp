#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kcurv/inequalities.hpp"
#include "kcurv/metric_io.hpp"
#include "kcurv/models.hpp"
#include "kcurv/report.hpp"

namespace kcurv {

// Curvature summaries (R, |E|, |B|) at the given chart points.
ReportSection run_analyze(const MetricChart& chart, const std::string& label,
                          const std::vector<ChartPoint>& points);

// Symmetry, trace, Bochner-route, metric-compatibility, Codazzi and
// Weitzenboeck-residual checks on a model at sampled points.
ReportSection run_identities(const ModelSpec& model, int npoints,
                             std::uint64_t seed, double tol_fd = kTolFd);

// Named fuzz suites: okumura, kato, kato-column, eeb, trace-cube, vdecomp,
// or "all".
ReportSection run_fuzz(const std::string& suite, int m, int samples,
                       std::uint64_t seed, double tol = kTolAlgebraic);

// Pinching verdicts for the listed theorems (or all) on one model.
ReportSection run_pinch(const std::vector<std::string>& ids,
                        const ModelSpec& model, const QuadratureGrid& grid,
                        std::optional<double> user_lambda);

// The default model set used by batch reports.
std::vector<ModelSpec> default_zoo();

// Full batch: identities across the zoo, all fuzz suites, and the complete
// theorem x model verdict matrix.
RunReport run_full_report(std::uint64_t seed, const QuadratureGrid& grid,
                          int fuzz_samples);

}  // namespace kcurv
