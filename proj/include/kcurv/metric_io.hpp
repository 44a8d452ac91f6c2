#pragma once

#include <string>

#include "kcurv/chart.hpp"

namespace kcurv {

// User metric specification (JSON):
// {
//   "m": 2,
//   "kind": "potential" | "components",
//   "expression": "log(1 + z1*conj(z1) + z2*conj(z2))",       // potential
//   "expression": [["...", "..."], ["...", "..."]],           // components
//   "domain": [{"re": [-2, 2], "im": [-2, 2]}, ...],          // optional
//   "max_radius": 0.9,                                        // optional
//   "derivative_mode": "fd" | "exact"                         // default "fd"
// }
// In "exact" mode the metric derivatives are obtained by symbolic Wirtinger
// differentiation of the expressions; in "fd" mode by finite differences.
// Parse and validation failures throw MetricFileError with a located message.
struct MetricFileError : std::runtime_error {
  explicit MetricFileError(const std::string& msg) : std::runtime_error(msg) {}
};

MetricChart load_metric_chart(const std::string& path);
MetricChart metric_chart_from_json_text(const std::string& text,
                                        const std::string& origin);

}  // namespace kcurv
