#pragma once

#include <functional>
#include <limits>

#include "kcurv/chart.hpp"

namespace kcurv {

// Tensor-product quadrature over a chart: each complex coordinate is written
// in polar form, the radius is compactified by r = tan(u) and integrated with
// Gauss-Legendre nodes in u, the angle with an equispaced (trapezoidal) rule.
// With trunc_radius = infinity the rule covers the whole chart.
struct QuadratureGrid {
  int radial_nodes = 32;  // total budget across graded panels
  int angular_nodes = 16;
  double trunc_radius = std::numeric_limits<double>::infinity();

  QuadratureGrid refined() const {
    return {2 * radial_nodes, 2 * angular_nodes, trunc_radius};
  }
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double effective_radius = 0.0;  // radius actually covered
  bool truncated = false;         // domain or user radius cut the integral
  double tail_estimate = 0.0;     // contribution of the outermost radial shell
};

// Gauss-Legendre nodes/weights on [0, 1] (interior nodes only).
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// integral of f dV with dV = 2^m det(g) prod(dx dy). The integrand is
// evaluated at every grid node; the reduction uses pairwise summation so the
// result is independent of evaluation batching. Charts with m > 2 are
// rejected (use factor charts for product models).
QuadratureResult integrate(const MetricChart& chart, const QuadratureGrid& grid,
                           const std::function<double(const ChartPoint&)>& f);

QuadratureResult chart_volume(const MetricChart& chart,
                              const QuadratureGrid& grid);

// (integral of field^p dV)^(1/p); requires p >= 1 and field >= 0 on nodes.
double lp_norm(const MetricChart& chart, const QuadratureGrid& grid,
               const std::function<double(const ChartPoint&)>& field, double p);

}  // namespace kcurv
