#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kcurv/gap_report.hpp"
#include "kcurv/models.hpp"
#include "kcurv/quadrature.hpp"

namespace kcurv {

// Stable theorem identifiers:
//   T3.1  noncompact, R = 0:            L^m bound on sqrt(2)|E| + |B|  -> Kahler-Einstein
//   T3.2  noncompact, R < 0 (m >= 3):   L^m bound on sqrt(2)|E| + |B|  -> Kahler-Einstein
//   T3.3  compact,    R > 0:            L^m bound on sqrt(2)|E| + |B|  -> Kahler-Einstein
//   T3.4  compact,    R > 0: pointwise bound on sqrt(2)|E| + |B|       -> Kahler-Einstein
//   T4.1  noncompact Einstein, R = 0:   L^m bound on |B|   -> flat space form
//   T4.2  noncompact Einstein, R < 0 (m >= 4): L^m bound on |B| -> space form
//   T4.3  compact Einstein,  R > 0:     L^m bound on |B|   -> CP^m
//   T4.4  compact Einstein,  R > 0: pointwise bound on |B| -> CP^m
//   T4.5..T4.8  the combined statements on constant-scalar-curvature inputs,
//   reusing the T4.1..T4.4 constants with sqrt(2)|E| + |B| on the left.
std::vector<std::string> theorem_ids();

struct TheoremInfo {
  std::string id;
  int m_min = 2;
  bool pointwise = false;       // sup bound instead of an L^m bound
  bool compact = false;         // compact vs complete-noncompact setting
  int scalar_sign = 0;          // required sign of R
  bool einstein_hypothesis = false;
  bool lhs_includes_E = false;  // lhs = sqrt(2)|E| + |B| rather than |B|
  bool needs_lambda = false;    // threshold scales with the Yamabe constant
  std::string conclusion;
};
const TheoremInfo& theorem_info(const std::string& id);

// Pinching constants of the two L^m families on compact manifolds.
double P_constant(int m);  // 3/2 at m = 2, else 2(2m-1)/(m^2-1)
double Q_constant(int m);  // m(m+3)/(m+1) at m = 2,3, else 2(2m-1)/(m-1)

// Yamabe constant of a compact Einstein manifold with R > 0:
//   Lambda = (m-1) R Vol^{1/m} / (2m-1).
double yamabe_einstein_positive(double scalar, double volume, int m);

// Threshold (right-hand side) of a theorem's pinching hypothesis. Throws if
// m violates the theorem's stated range or a required input is missing.
double pinch_threshold(const std::string& theorem_id, int m,
                       std::optional<double> lambda, std::optional<double> scalar);

struct PinchVerdict {
  std::string theorem_id;
  std::string model;
  int m = 0;
  double lhs = 0.0;
  double threshold = 0.0;
  double margin = 0.0;
  bool satisfied = false;
  bool boundary_case = false;
  bool applicable = false;  // standing hypotheses met
  std::string expected_conclusion;
  // confirmed | violated-as-expected | inconclusive | paper-contradiction
  std::string consistency;
  std::string notes;
};

// Evaluates a theorem's hypothesis on a model geometry. Standing hypotheses
// (compactness, scalar sign and constancy, Einstein condition, Yamabe
// availability) are checked first; when unmet the verdict is inconclusive.
// A model that is known to violate the conclusion must also violate the
// pinching bound, otherwise the verdict is flagged paper-contradiction.
PinchVerdict evaluate_theorem(const std::string& theorem_id,
                              const ModelSpec& model, const QuadratureGrid& grid,
                              std::optional<double> user_lambda = std::nullopt);

// Volume of a model (factor volumes multiply for products). Infinite for
// noncompact models.
double model_volume(const ModelSpec& model, const QuadratureGrid& grid);

// Ordering relations among the pinching constants used by the combined
// statements; checked numerically for m in [2, 12].
std::vector<GapReport> threshold_ordering_checks();

}  // namespace kcurv
