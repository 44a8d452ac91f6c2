#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kcurv/fd.hpp"
#include "kcurv/tensor.hpp"

namespace kcurv {

// Rectangular chart domain: per-coordinate intervals for the real and
// imaginary parts, plus an optional bound on |z| for charts that live on a
// ball (e.g. the unit-ball model of complex hyperbolic space).
struct DomainBox {
  struct CoordBox {
    double re_lo = -1.0, re_hi = 1.0;
    double im_lo = -1.0, im_hi = 1.0;
  };
  std::vector<CoordBox> coords;
  std::optional<double> max_radius;

  static DomainBox cube(int m, double half_width);
  bool contains(const ChartPoint& p, double margin = 0.0) const;
};

// Pointwise metric derivative data in chart coordinates:
//   g(a,b)      = g_{a b.}
//   dg[c](a,b)  = d g_{a b.} / dz_c
//   ddg[c][d](a,b) = d^2 g_{a b.} / dz_c dzbar_d
struct MetricJet {
  Eigen::MatrixXcd g;
  std::vector<Eigen::MatrixXcd> dg;
  std::vector<std::vector<Eigen::MatrixXcd>> ddg;
};

using MetricFn = std::function<Eigen::MatrixXcd(const ChartPoint&)>;
using PotentialFn = std::function<double(const ChartPoint&)>;
using ExactJetFn = std::function<MetricJet(const ChartPoint&)>;

// A Kahler metric on a coordinate chart with a derivative supplier.
// Derivatives come either from exact callbacks or from finite differences of
// the metric components (or of a potential, in which case the metric itself
// is g_{a b.} = d^2 phi / dz_a dzbar_b).
class MetricChart {
 public:
  MetricChart() = default;  // empty placeholder; factories build usable charts

  static MetricChart exact(int m, DomainBox domain, MetricFn metric,
                           ExactJetFn jet);
  static MetricChart metric_fd(int m, DomainBox domain, MetricFn metric,
                               FdConfig cfg = {});
  static MetricChart potential_fd(int m, DomainBox domain, PotentialFn phi,
                                  FdConfig cfg = {});

  int dim() const { return m_; }
  const DomainBox& domain() const { return domain_; }
  bool exact_mode() const { return mode_ == Mode::Exact; }
  const FdConfig& fd_config() const { return fd_; }

  // Suggested tolerance for identity checks on this chart.
  double tolerance() const { return exact_mode() ? 1e-10 : 1e-5; }

  // Margin a point must keep from the domain boundary so that the widest
  // stencil used by curvature evaluation stays inside.
  double stencil_margin() const;

  Eigen::MatrixXcd metric(const ChartPoint& p) const;
  MetricJet jet(const ChartPoint& p) const;

  // Validates that p is interior (with stencil margin) and that the metric is
  // positive definite there; throws with a located message otherwise.
  void require_valid_point(const ChartPoint& p) const;

 private:
  enum class Mode { Exact, MetricFd, PotentialFd };

  int m_ = 1;
  Mode mode_ = Mode::MetricFd;
  DomainBox domain_;
  MetricFn metric_;
  ExactJetFn jet_;
  PotentialFn potential_;
  FdConfig fd_;
};

// All pointwise curvature data at one chart point. The curvature tensor,
// Ricci, E and B are stored in the unitary frame at the point; the metric,
// its inverse and the Christoffel symbols are kept in chart coordinates for
// use by covariant derivatives.
struct CurvaturePackage {
  ChartPoint point;
  HermitianMatrix g;
  HermitianMatrix g_inv;
  std::vector<Eigen::MatrixXcd> christoffel;  // [l](a,b) = Gamma^l_{ab}
  ComplexTensor riemann;                      // frame components
  HermitianMatrix ricci;                      // frame components
  double scalar = 0.0;
  HermitianMatrix E;   // traceless Ricci, frame components
  ComplexTensor B;     // Bochner tensor, frame components
  double tol = 1e-10;  // tolerance rung of the producing chart

  double norm_E() const;  // |E| with |E|^2 = 2 sum |E_{ab.}|^2
  double norm_B() const;  // |B| with |B|^2 = 4 sum |B_{ab.cd.}|^2
};

// Evaluates metric, Christoffel symbols, curvature tensor, Ricci, scalar
// curvature and the derived E and B tensors at p. Throws if p is too close
// to the domain boundary or the metric fails to be positive definite on the
// stencil.
CurvaturePackage curvature_at(const MetricChart& chart, const ChartPoint& p);

// Same curvature data kept in chart coordinates (no frame normalization).
// This is what covariant-derivative checks differentiate.
struct CoordinateCurvature {
  Eigen::MatrixXcd g;
  std::vector<Eigen::MatrixXcd> christoffel;  // [l](a,b) = Gamma^l_{ab}
  ComplexTensor riemann;
  Eigen::MatrixXcd ricci;
  double scalar = 0.0;
  Eigen::MatrixXcd E;
  ComplexTensor B;
};
CoordinateCurvature coordinate_curvature_at(const MetricChart& chart,
                                            const ChartPoint& p);

// Coordinate-component tensor fields of E and B, ready to be fed to
// covariant_derivative.
std::function<ComplexTensor(const ChartPoint&)> traceless_ricci_field(
    const MetricChart& chart);
std::function<ComplexTensor(const ChartPoint&)> bochner_field(
    const MetricChart& chart);

// E_{a b.} = Ric_{a b.} - (R/m) g_{a b.} in the unitary frame.
HermitianMatrix traceless_ricci(const CurvaturePackage& pkg);
HermitianMatrix traceless_ricci(const HermitianMatrix& ricci_frame, int m);

// Covariant first derivatives of a tensor field given in chart coordinates.
// `holo` has one extra holomorphic slot appended (components T_{...,l}),
// `anti` one extra antiholomorphic slot (components T_{...,lbar}).
struct CovariantDerivative {
  ComplexTensor holo;
  ComplexTensor anti;
};
CovariantDerivative covariant_derivative(
    const MetricChart& chart, const ChartPoint& p,
    const std::function<ComplexTensor(const ChartPoint&)>& field);

// |grad f|^2 = 2 g^{a b.} (d_a f)(dbar_b f) for a real scalar field.
double scalar_field_gradient_norm_sq(
    const MetricChart& chart, const ChartPoint& p,
    const std::function<double(const ChartPoint&)>& f);

}  // namespace kcurv
