#include "kcurv/pinching.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace kcurv {

namespace {

double radical(int m) {
  return std::sqrt(2.0 * (m + 1.0) * (m + 2.0) / (2.0 * m * m + 4.0 * m + 3.0));
}

const std::vector<TheoremInfo>& catalog() {
  static const std::vector<TheoremInfo> k = {
      {"T3.1", 2, false, false, 0, false, true, true, "Kahler-Einstein (Ricci-flat)"},
      {"T3.2", 3, false, false, -1, false, true, true, "Kahler-Einstein"},
      {"T3.3", 2, false, true, +1, false, true, true, "Kahler-Einstein"},
      {"T3.4", 2, true, true, +1, false, true, false, "Kahler-Einstein"},
      {"T4.1", 2, false, false, 0, true, false, true,
       "constant holomorphic sectional curvature 0 (universal cover C^m)"},
      {"T4.2", 4, false, false, -1, true, false, true,
       "constant holomorphic sectional curvature 2R/(m(m+1))"},
      {"T4.3", 2, false, true, +1, true, false, true,
       "biholomorphically homothetic to CP^m"},
      {"T4.4", 2, true, true, +1, true, false, false,
       "biholomorphically homothetic to CP^m"},
      {"T4.5", 2, false, false, 0, false, true, true,
       "constant holomorphic sectional curvature 0 (universal cover C^m)"},
      {"T4.6", 4, false, false, -1, false, true, true,
       "constant holomorphic sectional curvature 2R/(m(m+1))"},
      {"T4.7", 2, false, true, +1, false, true, true,
       "biholomorphically homothetic to CP^m"},
      {"T4.8", 2, true, true, +1, false, true, false,
       "biholomorphically homothetic to CP^m"},
  };
  return k;
}

}  // namespace

std::vector<std::string> theorem_ids() {
  std::vector<std::string> ids;
  for (const auto& t : catalog()) ids.push_back(t.id);
  return ids;
}

const TheoremInfo& theorem_info(const std::string& id) {
  for (const auto& t : catalog())
    if (t.id == id) return t;
  throw std::invalid_argument("unknown theorem id: " + id);
}

double P_constant(int m) {
  if (m < 2) throw std::invalid_argument("P_constant: m >= 2");
  if (m == 2) return 3.0 / 2.0;
  return 2.0 * (2.0 * m - 1.0) / (m * m - 1.0);
}

double Q_constant(int m) {
  if (m < 2) throw std::invalid_argument("Q_constant: m >= 2");
  if (m <= 3) return m * (m + 3.0) / (m + 1.0);
  return 2.0 * (2.0 * m - 1.0) / (m - 1.0);
}

double yamabe_einstein_positive(double scalar, double volume, int m) {
  if (!(scalar > 0.0))
    throw std::invalid_argument("yamabe_einstein_positive: scalar must be > 0");
  if (!(volume > 0.0))
    throw std::invalid_argument("yamabe_einstein_positive: volume must be > 0");
  if (m < 2) throw std::invalid_argument("yamabe_einstein_positive: m >= 2");
  return (m - 1.0) * scalar * std::pow(volume, 1.0 / m) / (2.0 * m - 1.0);
}

double pinch_threshold(const std::string& theorem_id, int m,
                       std::optional<double> lambda,
                       std::optional<double> scalar) {
  const TheoremInfo& info = theorem_info(theorem_id);
  if (m < info.m_min)
    throw std::invalid_argument("theorem " + theorem_id + " requires m >= " +
                                std::to_string(info.m_min));
  auto need_lambda = [&]() {
    if (!lambda || !(*lambda > 0.0))
      throw std::invalid_argument("theorem " + theorem_id +
                                  " needs a positive Yamabe constant");
    return *lambda;
  };
  auto need_scalar = [&]() {
    if (!scalar)
      throw std::invalid_argument("theorem " + theorem_id +
                                  " needs the scalar curvature");
    return *scalar;
  };

  const double mm = m;
  if (theorem_id == "T3.1")
    return 4.0 * need_lambda() * (mm * mm - mm + 1.0) / (mm * mm * mm) * radical(m);
  if (theorem_id == "T3.2")
    return need_lambda() * (mm + 1.0) / mm * radical(m);
  if (theorem_id == "T3.3")
    return need_lambda() * P_constant(m) * radical(m);
  if (theorem_id == "T3.4")
    return 2.0 / (mm + 1.0) * radical(m) * need_scalar();
  if (theorem_id == "T4.1" || theorem_id == "T4.5")
    return 4.0 * need_lambda() * (mm * mm + 1.0) * std::sqrt(mm * mm - 1.0) /
           (3.0 * mm * (mm + 1.0) * (mm * mm - 2.0));
  if (theorem_id == "T4.2" || theorem_id == "T4.6")
    return need_lambda() * (mm + 3.0) * std::sqrt(mm * mm * (mm * mm - 1.0)) /
           (3.0 * (mm + 1.0) * (mm * mm - 2.0));
  if (theorem_id == "T4.3" || theorem_id == "T4.7")
    return need_lambda() * Q_constant(m) * std::sqrt(mm * mm - 1.0) /
           (3.0 * (mm * mm - 2.0));
  // T4.4 / T4.8
  return 2.0 * std::sqrt(mm * mm - 1.0) * need_scalar() / (3.0 * (mm * mm - 2.0));
}

double model_volume(const ModelSpec& model, const QuadratureGrid& grid) {
  if (!model.flags.compact) return std::numeric_limits<double>::infinity();
  if (!model.factor_charts.empty()) {
    double vol = 1.0;
    for (const auto& f : model.factor_charts)
      vol *= chart_volume(f, grid).value;
    return vol;
  }
  return chart_volume(model.chart, grid).value;
}

namespace {

struct ModelAssessment {
  double r_mean = 0.0;
  double r_variation = 0.0;  // relative
  double max_E = 0.0;
  double max_B = 0.0;
  double base_E = 0.0;
  double base_B = 0.0;
  double hom_variation = 0.0;  // relative variation of |E|, |B| over samples
};

ModelAssessment assess(const ModelSpec& model) {
  ModelAssessment a;
  std::vector<ChartPoint> pts = sample_points(model, 10, 811ULL);
  pts.push_back(model.base_point());
  double r_lo = 0.0, r_hi = 0.0;
  double e_lo = 0.0, e_hi = 0.0, b_lo = 0.0, b_hi = 0.0;
  bool first = true;
  for (const auto& p : pts) {
    const CurvaturePackage pkg = curvature_at(model.chart, p);
    const double e = pkg.norm_E(), b = pkg.norm_B();
    if (first) {
      r_lo = r_hi = pkg.scalar;
      e_lo = e_hi = e;
      b_lo = b_hi = b;
      first = false;
    } else {
      r_lo = std::min(r_lo, pkg.scalar);
      r_hi = std::max(r_hi, pkg.scalar);
      e_lo = std::min(e_lo, e);
      e_hi = std::max(e_hi, e);
      b_lo = std::min(b_lo, b);
      b_hi = std::max(b_hi, b);
    }
    a.max_E = std::max(a.max_E, e);
    a.max_B = std::max(a.max_B, b);
  }
  a.r_mean = 0.5 * (r_lo + r_hi);
  a.r_variation = (r_hi - r_lo) / std::max(1.0, std::abs(a.r_mean));
  a.hom_variation = std::max((e_hi - e_lo) / std::max(1.0, e_hi),
                             (b_hi - b_lo) / std::max(1.0, b_hi));
  const CurvaturePackage base = curvature_at(model.chart, model.base_point());
  a.base_E = base.norm_E();
  a.base_B = base.norm_B();
  return a;
}

// Whether the model's flags say the theorem's conclusion holds.
bool conclusion_holds(const TheoremInfo& info, const ModelSpec& model) {
  const bool is_t4_style =
      info.conclusion.find("Kahler-Einstein") == std::string::npos;
  if (!is_t4_style) {
    if (info.scalar_sign == 0)
      return model.flags.einstein && model.flags.scalar_sign == 0;
    return model.flags.einstein;
  }
  // space-form conclusions
  return model.flags.space_form && model.flags.scalar_sign == info.scalar_sign;
}

PinchVerdict inconclusive(const TheoremInfo& info, const ModelSpec& model,
                          const std::string& reason) {
  PinchVerdict v;
  v.theorem_id = info.id;
  v.model = model.name;
  v.m = model.m;
  v.applicable = false;
  v.expected_conclusion = info.conclusion;
  v.consistency = "inconclusive";
  v.notes = reason;
  return v;
}

// sup over quadrature-style grid nodes, with refinement until stable.
double pointwise_sup(const ModelSpec& model, const QuadratureGrid& grid,
                     const std::function<double(const ChartPoint&)>& f) {
  if (model.flags.homogeneous) return f(model.base_point());
  QuadratureGrid g = grid;
  double prev = -1.0;
  for (;;) {
    double sup = 0.0;
    for (const auto& p :
         sample_points(model, g.radial_nodes * g.angular_nodes, 4242ULL))
      sup = std::max(sup, f(p));
    if (prev >= 0.0 && std::abs(sup - prev) <= 1e-6 * std::max(1.0, sup))
      return sup;
    prev = sup;
    if (g.radial_nodes >= 64) return sup;
    g = g.refined();
  }
}

}  // namespace

PinchVerdict evaluate_theorem(const std::string& theorem_id,
                              const ModelSpec& model, const QuadratureGrid& grid,
                              std::optional<double> user_lambda) {
  const TheoremInfo& info = theorem_info(theorem_id);
  if (model.m < info.m_min)
    return inconclusive(info, model,
                        "theorem requires m >= " + std::to_string(info.m_min) +
                            " but model has m = " + std::to_string(model.m));

  const ModelAssessment a = assess(model);
  const double fd_slack = model.chart.exact_mode() ? 1.0 : 1e3;

  // standing hypotheses
  if (info.compact && !model.flags.compact)
    return inconclusive(info, model, "theorem addresses compact manifolds");
  if (!info.compact && model.flags.compact)
    return inconclusive(info, model,
                        "theorem addresses complete noncompact manifolds");
  if (a.r_variation > 1e-6 * fd_slack)
    return inconclusive(info, model, "scalar curvature is not constant (varies by " +
                                         std::to_string(a.r_variation) + ")");
  const int measured_sign =
      std::abs(a.r_mean) < 1e-8 ? 0 : (a.r_mean > 0.0 ? 1 : -1);
  if (measured_sign != info.scalar_sign)
    return inconclusive(info, model,
                        "scalar curvature sign does not match the hypothesis");
  if (info.einstein_hypothesis && a.max_E > 1e-8 * fd_slack)
    return inconclusive(info, model, "model is not Einstein (|E| = " +
                                         std::to_string(a.max_E) + ")");

  // Yamabe constant
  std::optional<double> lambda = user_lambda;
  std::string lambda_note;
  if (info.needs_lambda && !lambda) {
    if (model.flags.compact && model.flags.einstein && a.r_mean > 0.0) {
      const double vol = model_volume(model, grid);
      lambda = yamabe_einstein_positive(a.r_mean, vol, model.m);
      lambda_note = "Yamabe constant from the Einstein identity: " +
                    std::to_string(*lambda);
    } else {
      return inconclusive(info, model,
                          "Yamabe constant unavailable (supply one explicitly)");
    }
  }

  const double threshold =
      pinch_threshold(theorem_id, model.m, lambda, a.r_mean);

  // left-hand side
  double lhs = 0.0;
  std::string lhs_note;
  auto field = [&](const ChartPoint& p) {
    const CurvaturePackage pkg = curvature_at(model.chart, p);
    return info.lhs_includes_E ? std::sqrt(2.0) * pkg.norm_E() + pkg.norm_B()
                               : pkg.norm_B();
  };
  if (info.pointwise) {
    lhs = pointwise_sup(model, grid, field);
  } else {
    // L^m norm
    const double base_value = info.lhs_includes_E
                                  ? std::sqrt(2.0) * a.base_E + a.base_B
                                  : a.base_B;
    if (model.flags.homogeneous) {
      if (a.hom_variation > 1e-6 * fd_slack)
        return inconclusive(info, model,
                            "homogeneity flag contradicted by sampled |E|, |B|");
      if (base_value <= 1e-12) {
        lhs = 0.0;
      } else if (!model.flags.compact) {
        // the L^m norm of a nonzero constant field diverges; report a
        // definite violation while keeping every serialized field finite
        lhs = threshold + std::max(1.0, threshold);
        lhs_note = "L^m norm diverges (constant nonzero field, infinite volume)";
      } else {
        lhs = base_value * std::pow(model_volume(model, grid), 1.0 / model.m);
      }
    } else if (model.flags.compact) {
      lhs = lp_norm(model.chart, grid, field, model.m);
    } else {
      const QuadratureResult r =
          integrate(model.chart, grid, [&](const ChartPoint& p) {
            return std::pow(field(p), static_cast<double>(model.m));
          });
      lhs = std::pow(std::max(r.value, 0.0), 1.0 / model.m);
      lhs_note = "truncated at radius " + std::to_string(r.effective_radius) +
                 " - diagnostic only";
    }
  }

  PinchVerdict v;
  v.theorem_id = theorem_id;
  v.model = model.name;
  v.m = model.m;
  v.applicable = true;
  v.expected_conclusion = info.conclusion;
  v.lhs = lhs;
  v.threshold = threshold;
  v.margin = threshold - lhs;
  const double tie_tol = 1e-12 * std::max(1.0, threshold);
  v.boundary_case = std::abs(v.margin) <= tie_tol;
  v.satisfied = v.margin > tie_tol;

  const bool holds = conclusion_holds(info, model);
  if (v.boundary_case) {
    v.consistency = "inconclusive";
    v.notes = "boundary case: margin is zero to tolerance";
  } else if (v.satisfied) {
    v.consistency = holds ? "confirmed" : "paper-contradiction";
  } else {
    v.consistency = holds ? "inconclusive" : "violated-as-expected";
    if (holds)
      v.notes = "pinching hypothesis not met; conclusion holds regardless";
  }
  if (!lambda_note.empty())
    v.notes = v.notes.empty() ? lambda_note : v.notes + "; " + lambda_note;
  if (!lhs_note.empty())
    v.notes = v.notes.empty() ? lhs_note : v.notes + "; " + lhs_note;
  return v;
}

std::vector<GapReport> threshold_ordering_checks() {
  std::vector<GapReport> out;
  for (int m = 2; m <= 12; ++m) {
    const double mm = m;
    // T4.1 zero-scalar constant sits below the T3.1 one (unit Yamabe)
    const double t41 = 4.0 * (mm * mm + 1.0) * std::sqrt(mm * mm - 1.0) /
                       (3.0 * mm * (mm + 1.0) * (mm * mm - 2.0));
    const double t31 = 4.0 * (mm * mm - mm + 1.0) / (mm * mm * mm) * radical(m);
    out.push_back(make_gap_report("ordering_T4.1_below_T3.1(m=" + std::to_string(m) + ")",
                                  t41, t31, 0.0, ""));
    // negative-scalar combined comparison
    const double lhs2 = (mm + 3.0) * std::sqrt(mm * mm * (mm * mm - 1.0)) /
                        (3.0 * (mm + 1.0) * (mm * mm - 2.0));
    const double rhs2 = (mm + 1.0) / mm * radical(m);
    out.push_back(make_gap_report("ordering_T4.2_below_T3.2(m=" + std::to_string(m) + ")",
                                  lhs2, rhs2, 0.0, ""));
    // radical dominance over the cubic-term coefficient
    const double lhs3 = (mm - 2.0) / (mm + 2.0) * std::sqrt(mm / (mm - 1.0));
    const double rhs3 = 1.0 / radical(m);
    out.push_back(make_gap_report("ordering_radical_dominance(m=" + std::to_string(m) + ")",
                                  lhs3, rhs3, 0.0, ""));
    // compact combined statement: the T4.3 constant sits below the T3.3 one
    const double t43 = Q_constant(m) * std::sqrt(mm * mm - 1.0) / (3.0 * (mm * mm - 2.0));
    const double t33 = P_constant(m) * radical(m);
    out.push_back(make_gap_report("ordering_T4.3_below_T3.3(m=" + std::to_string(m) + ")",
                                  t43, t33, 0.0, ""));
  }
  return out;
}

}  // namespace kcurv
