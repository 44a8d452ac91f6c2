#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kcurv/chart.hpp"

namespace kcurv {

// Ground-truth properties of a model geometry. Flags are validated by
// sampling at construction time; construction fails if a flag cannot be
// confirmed.
struct ModelFlags {
  bool einstein = false;
  bool constant_scalar = false;
  bool space_form = false;
  bool parallel_E = false;
  bool parallel_B = false;
  bool compact = false;
  bool homogeneous = false;  // |E| and |B| constant over the chart
  int scalar_sign = 0;       // -1, 0, +1
};

struct ModelSpec {
  std::string name;
  int m = 1;
  std::map<std::string, double> params;
  MetricChart chart;
  ModelFlags flags;
  DomainBox sample_box;  // interior region used for random probe points
  // For product models, the factor charts; volumes multiply across factors.
  std::vector<MetricChart> factor_charts;
  ChartPoint base_point() const { return ChartPoint(m, cplx(0.0, 0.0)); }
};

// Available model names:
//   flat(m), fubini_study(m, scale), complex_hyperbolic(m, scale),
//   product_cp1(a, b), product_cpm(m1, m2), perturbed_fs(m, eps)
std::vector<std::string> model_names();

// Builds a model and validates its flags by probing; throws on parameter
// errors, positivity failures (naming the offending point) or flag
// validation failures.
ModelSpec make_model(const std::string& name,
                     const std::map<std::string, double>& params);

// Deterministic sample points inside the model's sampling box.
std::vector<ChartPoint> sample_points(const ModelSpec& model, int n,
                                      std::uint64_t seed);

// Human-readable flag summary, e.g. "einstein constant-scalar compact R>0".
std::string flags_string(const ModelFlags& flags);

}  // namespace kcurv
