#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "kcurv/tensor.hpp"

namespace kcurv {

// A point in a coordinate chart of C^m.
using ChartPoint = std::vector<cplx>;

// Step sizes (per real coordinate) used for central differences, indexed by
// total derivative order. One level of Richardson extrapolation is applied on
// top of the O(h^2) stencils, giving O(h^4) truncation.
struct FdConfig {
  double step1 = 1e-4;
  double step2 = 1e-3;
  double step3 = 4e-3;
  double step4 = 8e-3;
  bool richardson = true;

  double step_for_order(int order) const;
  // Largest coordinate offset any stencil of the given order can reach.
  double stencil_reach(int max_order) const;
};

// Mixed Wirtinger derivative
//   prod_{g in holo} d/dz_g  prod_{d in anti} d/dzbar_d  f
// of a complex-valued function on the chart, evaluated by expanding each
// complex derivative into real partials (d/dz = (d/dx - i d/dy)/2) and
// applying nested central differences.
cplx wirtinger_derivative(const std::function<cplx(const ChartPoint&)>& f,
                          const ChartPoint& p, const std::vector<int>& holo,
                          const std::vector<int>& anti, const FdConfig& cfg);

// Same, applied entrywise to a matrix-valued function.
Eigen::MatrixXcd wirtinger_derivative(
    const std::function<Eigen::MatrixXcd(const ChartPoint&)>& f,
    const ChartPoint& p, const std::vector<int>& holo,
    const std::vector<int>& anti, const FdConfig& cfg);

// All first-order complex derivatives of a real scalar field:
// out[k] = df/dz_k. (df/dzbar_k is the conjugate for real f.)
std::vector<cplx> holomorphic_gradient(
    const std::function<double(const ChartPoint&)>& f, const ChartPoint& p,
    const FdConfig& cfg);

// First complex derivatives of a tensor-valued field, evaluated once per
// stencil point: out_holo[k] = dT/dz_k, out_anti[k] = dT/dzbar_k.
void tensor_first_derivatives(
    const std::function<ComplexTensor(const ChartPoint&)>& field,
    const ChartPoint& p, const FdConfig& cfg,
    std::vector<ComplexTensor>& out_holo, std::vector<ComplexTensor>& out_anti);

}  // namespace kcurv
