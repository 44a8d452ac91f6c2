#include "kcurv/fd.hpp"

#include <stdexcept>

namespace kcurv {

double FdConfig::step_for_order(int order) const {
  switch (order) {
    case 1: return step1;
    case 2: return step2;
    case 3: return step3;
    default: return step4;
  }
}

double FdConfig::stencil_reach(int max_order) const {
  // Nested central differences shift by at most `order * h` per coordinate.
  double reach = 0.0;
  for (int k = 1; k <= max_order; ++k)
    reach = std::max(reach, k * step_for_order(k));
  return reach;
}

namespace {

// Real coordinate direction: coordinate k, real part (re = true) or imaginary.
struct RealDir {
  int k;
  bool re;
};

template <typename T>
using Fn = std::function<T(const ChartPoint&)>;

template <typename T>
T nested_central(const Fn<T>& f, ChartPoint p, const std::vector<RealDir>& dirs,
                 std::size_t depth, double h) {
  if (depth == dirs.size()) return f(p);
  const RealDir d = dirs[depth];
  ChartPoint plus = p, minus = p;
  if (d.re) {
    plus[d.k] += h;
    minus[d.k] -= h;
  } else {
    plus[d.k] += cplx(0.0, h);
    minus[d.k] -= cplx(0.0, h);
  }
  T a = nested_central<T>(f, plus, dirs, depth + 1, h);
  T b = nested_central<T>(f, minus, dirs, depth + 1, h);
  return (a - b) * (0.5 / h);
}

template <typename T>
T real_mixed_partial(const Fn<T>& f, const ChartPoint& p,
                     const std::vector<RealDir>& dirs, const FdConfig& cfg) {
  const double h = cfg.step_for_order(static_cast<int>(dirs.size()));
  T coarse = nested_central<T>(f, p, dirs, 0, h);
  if (!cfg.richardson) return coarse;
  T fine = nested_central<T>(f, p, dirs, 0, h / 2.0);
  return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

// Expands prod (d/dz) prod (d/dzbar) into 2^order real partials with complex
// coefficients and accumulates them.
template <typename T>
T wirtinger_impl(const Fn<T>& f, const ChartPoint& p,
                 const std::vector<int>& holo, const std::vector<int>& anti,
                 const FdConfig& cfg, const T& zero) {
  const int order = static_cast<int>(holo.size() + anti.size());
  if (order == 0) return f(p);
  if (order > 4)
    throw std::invalid_argument("wirtinger_derivative: order > 4 unsupported");

  T acc = zero;
  const int combos = 1 << order;
  std::vector<RealDir> dirs(order);
  for (int mask = 0; mask < combos; ++mask) {
    cplx coeff(1.0, 0.0);
    for (int j = 0; j < order; ++j) {
      const bool use_im = (mask >> j) & 1;
      const bool is_holo = j < static_cast<int>(holo.size());
      const int coord = is_holo ? holo[j] : anti[j - holo.size()];
      dirs[j] = RealDir{coord, !use_im};
      if (use_im)
        coeff *= is_holo ? cplx(0.0, -0.5) : cplx(0.0, 0.5);
      else
        coeff *= 0.5;
    }
    acc = acc + real_mixed_partial<T>(f, p, dirs, cfg) * coeff;
  }
  return acc;
}

}  // namespace

cplx wirtinger_derivative(const std::function<cplx(const ChartPoint&)>& f,
                          const ChartPoint& p, const std::vector<int>& holo,
                          const std::vector<int>& anti, const FdConfig& cfg) {
  return wirtinger_impl<cplx>(f, p, holo, anti, cfg, cplx(0.0, 0.0));
}

Eigen::MatrixXcd wirtinger_derivative(
    const std::function<Eigen::MatrixXcd(const ChartPoint&)>& f,
    const ChartPoint& p, const std::vector<int>& holo,
    const std::vector<int>& anti, const FdConfig& cfg) {
  const Eigen::MatrixXcd probe = f(p);
  if (holo.empty() && anti.empty()) return probe;
  const Eigen::MatrixXcd zero =
      Eigen::MatrixXcd::Zero(probe.rows(), probe.cols());
  return wirtinger_impl<Eigen::MatrixXcd>(f, p, holo, anti, cfg, zero);
}

std::vector<cplx> holomorphic_gradient(
    const std::function<double(const ChartPoint&)>& f, const ChartPoint& p,
    const FdConfig& cfg) {
  const int m = static_cast<int>(p.size());
  std::function<cplx(const ChartPoint&)> fc = [&f](const ChartPoint& q) {
    return cplx(f(q), 0.0);
  };
  std::vector<cplx> out(m);
  for (int k = 0; k < m; ++k)
    out[k] = wirtinger_derivative(fc, p, {k}, {}, cfg);
  return out;
}

void tensor_first_derivatives(
    const std::function<ComplexTensor(const ChartPoint&)>& field,
    const ChartPoint& p, const FdConfig& cfg,
    std::vector<ComplexTensor>& out_holo, std::vector<ComplexTensor>& out_anti) {
  const int m = static_cast<int>(p.size());
  out_holo.clear();
  out_anti.clear();

  auto central = [&](int k, bool re, double h) {
    ChartPoint plus = p, minus = p;
    const cplx shift = re ? cplx(h, 0.0) : cplx(0.0, h);
    plus[k] += shift;
    minus[k] -= shift;
    ComplexTensor a = field(plus);
    a -= field(minus);
    a *= cplx(0.5 / h, 0.0);
    return a;
  };

  const double h = cfg.step1;
  for (int k = 0; k < m; ++k) {
    ComplexTensor dx = central(k, true, h);
    ComplexTensor dy = central(k, false, h);
    if (cfg.richardson) {
      ComplexTensor dx2 = central(k, true, h / 2.0);
      ComplexTensor dy2 = central(k, false, h / 2.0);
      dx = cplx(4.0 / 3.0, 0.0) * dx2 - cplx(1.0 / 3.0, 0.0) * dx;
      dy = cplx(4.0 / 3.0, 0.0) * dy2 - cplx(1.0 / 3.0, 0.0) * dy;
    }
    // d/dz = (dx - i dy)/2, d/dzbar = (dx + i dy)/2
    ComplexTensor dz = cplx(0.5, 0.0) * dx - cplx(0.0, 0.5) * dy;
    ComplexTensor dzb = cplx(0.5, 0.0) * dx + cplx(0.0, 0.5) * dy;
    out_holo.push_back(std::move(dz));
    out_anti.push_back(std::move(dzb));
  }
}

}  // namespace kcurv
