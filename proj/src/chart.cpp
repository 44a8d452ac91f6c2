#include "kcurv/chart.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kcurv {

namespace {

std::string format_point(const ChartPoint& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) os << ", ";
    os << p[k].real() << (p[k].imag() < 0 ? "-" : "+") << std::abs(p[k].imag())
       << "i";
  }
  os << ")";
  return os.str();
}

}  // namespace

DomainBox DomainBox::cube(int m, double half_width) {
  DomainBox d;
  d.coords.assign(m, CoordBox{-half_width, half_width, -half_width, half_width});
  return d;
}

bool DomainBox::contains(const ChartPoint& p, double margin) const {
  if (p.size() != coords.size()) return false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto& c = coords[k];
    if (p[k].real() < c.re_lo + margin || p[k].real() > c.re_hi - margin ||
        p[k].imag() < c.im_lo + margin || p[k].imag() > c.im_hi - margin)
      return false;
  }
  if (max_radius) {
    double r2 = 0.0;
    for (const auto& z : p) r2 += std::norm(z);
    // the stencil shifts one real coordinate at a time
    if (std::sqrt(r2) + margin > *max_radius) return false;
  }
  return true;
}

MetricChart MetricChart::exact(int m, DomainBox domain, MetricFn metric,
                               ExactJetFn jet) {
  MetricChart c;
  c.m_ = m;
  c.mode_ = Mode::Exact;
  c.domain_ = std::move(domain);
  c.metric_ = std::move(metric);
  c.jet_ = std::move(jet);
  return c;
}

MetricChart MetricChart::metric_fd(int m, DomainBox domain, MetricFn metric,
                                   FdConfig cfg) {
  MetricChart c;
  c.m_ = m;
  c.mode_ = Mode::MetricFd;
  c.domain_ = std::move(domain);
  c.metric_ = std::move(metric);
  c.fd_ = cfg;
  return c;
}

MetricChart MetricChart::potential_fd(int m, DomainBox domain, PotentialFn phi,
                                      FdConfig cfg) {
  MetricChart c;
  c.m_ = m;
  c.mode_ = Mode::PotentialFd;
  c.domain_ = std::move(domain);
  c.potential_ = std::move(phi);
  c.fd_ = cfg;
  return c;
}

double MetricChart::stencil_margin() const {
  switch (mode_) {
    case Mode::Exact: return fd_.stencil_reach(1);
    case Mode::MetricFd: return fd_.stencil_reach(2);
    case Mode::PotentialFd: return fd_.stencil_reach(4);
  }
  return 0.0;
}

Eigen::MatrixXcd MetricChart::metric(const ChartPoint& p) const {
  if (mode_ != Mode::PotentialFd) return metric_(p);
  std::function<cplx(const ChartPoint&)> phi_c =
      [this](const ChartPoint& q) { return cplx(potential_(q), 0.0); };
  Eigen::MatrixXcd g(m_, m_);
  for (int a = 0; a < m_; ++a)
    for (int b = a; b < m_; ++b) {
      g(a, b) = wirtinger_derivative(phi_c, p, {a}, {b}, fd_);
      if (b != a) g(b, a) = std::conj(g(a, b));
    }
  // the diagonal of a potential Hessian is real
  for (int a = 0; a < m_; ++a) g(a, a) = cplx(g(a, a).real(), 0.0);
  return g;
}

MetricJet MetricChart::jet(const ChartPoint& p) const {
  MetricJet out;
  const int m = m_;
  out.dg.assign(m, Eigen::MatrixXcd::Zero(m, m));
  out.ddg.assign(m, std::vector<Eigen::MatrixXcd>(m, Eigen::MatrixXcd::Zero(m, m)));

  if (mode_ == Mode::Exact) {
    out = jet_(p);
    return out;
  }

  if (mode_ == Mode::MetricFd) {
    out.g = metric_(p);
    for (int c = 0; c < m; ++c)
      out.dg[c] = wirtinger_derivative(metric_, p, {c}, {}, fd_);
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d)
        out.ddg[c][d] = wirtinger_derivative(metric_, p, {c}, {d}, fd_);
    return out;
  }

  // Potential mode: g and its derivatives are higher Wirtinger derivatives of
  // phi. Kahler symmetry (derivatives commute) is used to fill mirrored
  // entries: dg[c](a,b) is symmetric in (c,a) and ddg[c][d](a,b) is symmetric
  // in (c,a) and in (d,b).
  std::function<cplx(const ChartPoint&)> phi_c =
      [this](const ChartPoint& q) { return cplx(potential_(q), 0.0); };
  out.g = metric(p);
  for (int c = 0; c < m; ++c)
    for (int a = c; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const cplx v = wirtinger_derivative(phi_c, p, {c, a}, {b}, fd_);
        out.dg[c](a, b) = v;
        out.dg[a](c, b) = v;
      }
  for (int c = 0; c < m; ++c)
    for (int a = c; a < m; ++a)
      for (int d = 0; d < m; ++d)
        for (int b = d; b < m; ++b) {
          const cplx v = wirtinger_derivative(phi_c, p, {c, a}, {d, b}, fd_);
          out.ddg[c][d](a, b) = v;
          out.ddg[a][d](c, b) = v;
          out.ddg[c][b](a, d) = v;
          out.ddg[a][b](c, d) = v;
        }
  return out;
}

void MetricChart::require_valid_point(const ChartPoint& p) const {
  if (static_cast<int>(p.size()) != m_)
    throw std::invalid_argument("point dimension does not match chart");
  if (!domain_.contains(p, stencil_margin()))
    throw std::domain_error("point " + format_point(p) +
                            " too close to chart domain boundary (stencil margin " +
                            std::to_string(stencil_margin()) + ")");
  Eigen::LLT<Eigen::MatrixXcd> llt(metric(p));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("metric not positive definite at point " +
                             format_point(p));
}

double CurvaturePackage::norm_E() const {
  return std::sqrt(hermitian_norm_sq(E));
}

double CurvaturePackage::norm_B() const {
  return std::sqrt(curvature_norm_sq(B));
}

namespace {

std::vector<Eigen::MatrixXcd> christoffel_from_jet(const MetricJet& jet,
                                                   const Eigen::MatrixXcd& gi) {
  const int m = static_cast<int>(jet.g.rows());
  // Gamma^l_{ab} = g^{l mu.} dg_{b mu.}/dz_a = (dg[a] * gi)(b, l)
  std::vector<Eigen::MatrixXcd> gamma(m, Eigen::MatrixXcd::Zero(m, m));
  for (int a = 0; a < m; ++a) {
    const Eigen::MatrixXcd prod = jet.dg[a] * gi;
    for (int b = 0; b < m; ++b)
      for (int l = 0; l < m; ++l) gamma[l](a, b) = prod(b, l);
  }
  return gamma;
}

}  // namespace

namespace {

// Bochner tensor via the E-form of the defining decomposition; valid in any
// frame (g is the metric in that frame).
ComplexTensor bochner_from_components(const ComplexTensor& riemann,
                                      const Eigen::MatrixXcd& e,
                                      const Eigen::MatrixXcd& g, double scalar) {
  const int m = static_cast<int>(g.rows());
  ComplexTensor b(curvature_signature(m));
  const double r_coeff = scalar / (m * (m + 1.0));
  for (int a = 0; a < m; ++a)
    for (int bb = 0; bb < m; ++bb)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          cplx v = riemann(a, bb, c, d);
          v += (e(a, bb) * g(c, d) + e(c, bb) * g(a, d) + g(a, bb) * e(c, d) +
                g(c, bb) * e(a, d)) /
               (m + 2.0);
          v += r_coeff * (g(a, bb) * g(c, d) + g(c, bb) * g(a, d));
          b(a, bb, c, d) = v;
        }
  return b;
}

}  // namespace

CoordinateCurvature coordinate_curvature_at(const MetricChart& chart,
                                            const ChartPoint& p) {
  chart.require_valid_point(p);
  const int m = chart.dim();
  const MetricJet jet = chart.jet(p);
  const Eigen::MatrixXcd gi = jet.g.inverse();

  CoordinateCurvature out;
  out.g = jet.g;
  out.christoffel = christoffel_from_jet(jet, gi);

  // Curvature tensor in chart coordinates:
  //   Rm_{a b. c d.} = ddg[c][d](a,b) - (dg[c] * g^{-1} * dg[d]^H)(a,b)
  out.riemann = ComplexTensor(curvature_signature(m));
  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d) {
      const Eigen::MatrixXcd second = jet.dg[c] * gi * jet.dg[d].adjoint();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          out.riemann(a, b, c, d) = jet.ddg[c][d](a, b) - second(a, b);
    }

  // Ricci from the same derivative data (second mixed derivative of
  // log det g, expanded so no extra differentiation is needed):
  //   Ric_{c d.} = -( tr(g^{-1} ddg[c][d]) - tr(g^{-1} dg[d]^H g^{-1} dg[c]) )
  out.ricci = Eigen::MatrixXcd(m, m);
  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d) {
      const cplx t1 = (gi * jet.ddg[c][d]).trace();
      const cplx t2 = (gi * jet.dg[d].adjoint() * gi * jet.dg[c]).trace();
      out.ricci(c, d) = -(t1 - t2);
    }

  // scalar curvature R = g^{c d.} Ric_{c d.} = tr(g^{-1} Ric)
  out.scalar = (gi * out.ricci).trace().real();
  out.E = out.ricci - (out.scalar / m) * jet.g;
  out.B = bochner_from_components(out.riemann, out.E, jet.g, out.scalar);
  return out;
}

CurvaturePackage curvature_at(const MetricChart& chart, const ChartPoint& p) {
  const int m = chart.dim();
  const CoordinateCurvature coord = coordinate_curvature_at(chart, p);
  const Eigen::MatrixXcd gi = coord.g.inverse();

  // Validate Hermitian structure at the chart's tolerance rung, then
  // project exactly so downstream consumers can use strict tolerances.
  const double herm_tol = chart.exact_mode() ? 1e-10 : 1e-4;
  auto hermitianize = [&](const Eigen::MatrixXcd& a, const char* what) {
    const double v = hermitian_violation(a);
    if (v > herm_tol * (1.0 + a.norm()))
      throw std::runtime_error(std::string("curvature_at: ") + what +
                               " is not Hermitian at point " + format_point(p));
    return Eigen::MatrixXcd(0.5 * (a + a.adjoint()));
  };

  CurvaturePackage pkg;
  pkg.point = p;
  pkg.tol = chart.tolerance();
  pkg.g = HermitianMatrix(hermitianize(coord.g, "metric"));
  pkg.g_inv = HermitianMatrix(hermitianize(gi, "inverse metric"));
  pkg.christoffel = coord.christoffel;
  pkg.scalar = coord.scalar;

  // unitary frame at the point
  pkg.riemann = frame_normalize(pkg.g, coord.riemann);
  const Eigen::MatrixXcd ric_frame = frame_normalize(coord.g, coord.ricci);
  pkg.ricci = HermitianMatrix(hermitianize(ric_frame, "Ricci tensor"));
  pkg.E = traceless_ricci(pkg.ricci, m);
  pkg.B = bochner_from_components(pkg.riemann, pkg.E.mat(),
                                  Eigen::MatrixXcd::Identity(m, m), pkg.scalar);

  // Internal consistency: these are algebraic identities of the formulas
  // above, so failure indicates an implementation defect, not input noise.
  const double scale =
      1.0 + pkg.riemann.max_abs() + std::abs(pkg.scalar) + pkg.E.mat().norm();
  const double check_tol = 1e-8 * scale;
  if (std::abs(pkg.E.mat().trace()) > check_tol)
    throw std::runtime_error("curvature_at: traceless Ricci has residual trace");
  ComplexTensor b_trace = contract(pkg.B, 0, 1);
  if (b_trace.max_abs() > check_tol)
    throw std::runtime_error("curvature_at: Bochner tensor has residual trace");
  ComplexTensor rm_trace = contract(pkg.riemann, 0, 1);
  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d)
      if (std::abs(rm_trace(c, d) + pkg.ricci.mat()(c, d)) > check_tol)
        throw std::runtime_error(
            "curvature_at: curvature trace does not match Ricci");

  return pkg;
}

std::function<ComplexTensor(const ChartPoint&)> traceless_ricci_field(
    const MetricChart& chart) {
  return [chart](const ChartPoint& q) {
    const CoordinateCurvature c = coordinate_curvature_at(chart, q);
    const int m = static_cast<int>(c.g.rows());
    ComplexTensor t(IndexSignature(m, {Slot::Holo, Slot::AntiHolo}));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) t(a, b) = c.E(a, b);
    return t;
  };
}

std::function<ComplexTensor(const ChartPoint&)> bochner_field(
    const MetricChart& chart) {
  return [chart](const ChartPoint& q) {
    return coordinate_curvature_at(chart, q).B;
  };
}

HermitianMatrix traceless_ricci(const HermitianMatrix& ricci_frame, int m) {
  const double r = ricci_frame.mat().trace().real();
  Eigen::MatrixXcd e =
      ricci_frame.mat() - (r / m) * Eigen::MatrixXcd::Identity(m, m);
  return HermitianMatrix(e, 1e-10 * (1.0 + e.norm()));
}

HermitianMatrix traceless_ricci(const CurvaturePackage& pkg) {
  return traceless_ricci(pkg.ricci, pkg.g.dim());
}

namespace {

// Step for differentiating a field whose values are themselves produced by
// finite differences: such fields sit on a round-off noise floor, so the
// outer stencil uses a wider step than exact-valued fields do.
FdConfig field_fd_config(const MetricChart& chart) {
  FdConfig cfg = chart.fd_config();
  if (!chart.exact_mode()) cfg.step1 *= 10.0;
  return cfg;
}

}  // namespace

CovariantDerivative covariant_derivative(
    const MetricChart& chart, const ChartPoint& p,
    const std::function<ComplexTensor(const ChartPoint&)>& field) {
  chart.require_valid_point(p);
  const int m = chart.dim();
  const MetricJet jet = chart.jet(p);
  const Eigen::MatrixXcd gi = jet.g.inverse();
  const std::vector<Eigen::MatrixXcd> gamma = christoffel_from_jet(jet, gi);

  const ComplexTensor t0 = field(p);
  const auto& sig = t0.signature();
  if (sig.dim != m)
    throw std::invalid_argument("covariant_derivative: field dimension mismatch");

  std::vector<ComplexTensor> dz, dzb;
  tensor_first_derivatives(field, p, field_fd_config(chart), dz, dzb);

  std::vector<Slot> holo_slots = sig.slots;
  holo_slots.push_back(Slot::Holo);
  std::vector<Slot> anti_slots = sig.slots;
  anti_slots.push_back(Slot::AntiHolo);
  CovariantDerivative out{ComplexTensor(IndexSignature(m, holo_slots)),
                          ComplexTensor(IndexSignature(m, anti_slots))};

  const int r = sig.rank();
  std::vector<int> idx(r, 0);
  std::vector<int> idx_sub(r, 0);
  const std::size_t n = t0.size();
  for (std::size_t f = 0; f < n; ++f) {
    std::size_t rem = f;
    for (int k = r - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % m);
      rem /= m;
    }
    std::vector<int> out_idx(idx);
    out_idx.push_back(0);
    for (int l = 0; l < m; ++l) {
      out_idx[r] = l;
      // holomorphic derivative corrects holomorphic slots
      cplx vh = dz[l].at(idx);
      for (int s = 0; s < r; ++s) {
        if (sig.slots[s] != Slot::Holo) continue;
        idx_sub = idx;
        for (int nu = 0; nu < m; ++nu) {
          idx_sub[s] = nu;
          vh -= gamma[nu](l, idx[s]) * t0.at(idx_sub);
        }
      }
      out.holo.at(out_idx) = vh;
      // antiholomorphic derivative corrects antiholomorphic slots
      cplx va = dzb[l].at(idx);
      for (int s = 0; s < r; ++s) {
        if (sig.slots[s] != Slot::AntiHolo) continue;
        idx_sub = idx;
        for (int nu = 0; nu < m; ++nu) {
          idx_sub[s] = nu;
          va -= std::conj(gamma[nu](l, idx[s])) * t0.at(idx_sub);
        }
      }
      out.anti.at(out_idx) = va;
    }
  }
  return out;
}

double scalar_field_gradient_norm_sq(
    const MetricChart& chart, const ChartPoint& p,
    const std::function<double(const ChartPoint&)>& f) {
  chart.require_valid_point(p);
  const std::vector<cplx> v = holomorphic_gradient(f, p, field_fd_config(chart));
  const Eigen::MatrixXcd gi = chart.metric(p).inverse();
  Eigen::VectorXcd vv(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) vv(static_cast<Eigen::Index>(k)) = v[k];
  const cplx q = (vv.adjoint() * gi * vv)(0, 0);
  return 2.0 * q.real();
}

}  // namespace kcurv
