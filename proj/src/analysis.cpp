#include "kcurv/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace kcurv {

ComplexTensor bochner_from_ricci(const CurvaturePackage& pkg) {
  const int m = pkg.g.dim();
  const Eigen::MatrixXcd& ric = pkg.ricci.mat();
  const double r = pkg.scalar;
  ComplexTensor b(curvature_signature(m));
  const double r_coeff = r / ((m + 1.0) * (m + 2.0));
  for (int a = 0; a < m; ++a)
    for (int bb = 0; bb < m; ++bb)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          cplx v = pkg.riemann(a, bb, c, d);
          cplx ric_terms(0.0, 0.0);
          if (c == d) ric_terms += ric(a, bb);
          if (a == d) ric_terms += ric(c, bb);
          if (a == bb) ric_terms += ric(c, d);
          if (c == bb) ric_terms += ric(a, d);
          v += ric_terms / (m + 2.0);
          if (a == bb && c == d) v -= r_coeff;
          if (c == bb && a == d) v -= r_coeff;
          b(a, bb, c, d) = v;
        }
  return b;
}

ComplexTensor bochner_from_E(const CurvaturePackage& pkg) {
  const int m = pkg.g.dim();
  const Eigen::MatrixXcd& e = pkg.E.mat();
  const double r = pkg.scalar;
  ComplexTensor b(curvature_signature(m));
  const double r_coeff = r / (m * (m + 1.0));
  for (int a = 0; a < m; ++a)
    for (int bb = 0; bb < m; ++bb)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          cplx v = pkg.riemann(a, bb, c, d);
          cplx e_terms(0.0, 0.0);
          if (c == d) e_terms += e(a, bb);
          if (a == d) e_terms += e(c, bb);
          if (a == bb) e_terms += e(c, d);
          if (c == bb) e_terms += e(a, d);
          v += e_terms / (m + 2.0);
          if (a == bb && c == d) v += r_coeff;
          if (c == bb && a == d) v += r_coeff;
          b(a, bb, c, d) = v;
        }
  return b;
}

VDecomposition build_V_and_decompose(const HermitianMatrix& E,
                                     double trace_tol) {
  const int m = E.dim();
  const Eigen::MatrixXcd& e = E.mat();
  const double scale = 1.0 + e.norm();
  if (std::abs(e.trace()) > trace_tol * scale)
    throw std::invalid_argument("build_V_and_decompose: input not trace-free");

  VDecomposition out;
  out.Kscalar = e.squaredNorm();  // = |E|^2 / 2
  out.Z = (e * e * e * e).trace().real();

  const Eigen::MatrixXcd e2 = e * e;
  Eigen::MatrixXcd ve =
      e2 - (out.Kscalar / m) * Eigen::MatrixXcd::Identity(m, m);
  out.VE = HermitianMatrix(ve, 1e-10 * (1.0 + ve.norm()));

  out.V = ComplexTensor(curvature_signature(m));
  out.V2 = ComplexTensor(curvature_signature(m));
  out.V3 = ComplexTensor(curvature_signature(m));
  const double v3_coeff = out.Kscalar / (m * (m + 1.0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          out.V(a, b, c, d) = -(e(a, b) * e(c, d) + e(a, d) * e(c, b));
          cplx v2(0.0, 0.0);
          if (c == d) v2 += ve(a, b);
          if (a == d) v2 += ve(c, b);
          if (a == b) v2 += ve(c, d);
          if (c == b) v2 += ve(a, d);
          out.V2(a, b, c, d) = -v2 / (m + 2.0);
          cplx v3(0.0, 0.0);
          if (a == b && c == d) v3 += 1.0;
          if (c == b && a == d) v3 += 1.0;
          out.V3(a, b, c, d) = -v3_coeff * v3;
        }
  out.V1 = out.V - out.V2 - out.V3;

  out.V_sq = curvature_norm_sq(out.V);
  out.V1_sq = curvature_norm_sq(out.V1);
  out.V2_sq = curvature_norm_sq(out.V2);
  out.V3_sq = curvature_norm_sq(out.V3);
  return out;
}

double eeb_contraction(const HermitianMatrix& E, const ComplexTensor& B,
                       double imag_tol) {
  const int m = E.dim();
  if (B.dim() != m || !(B.signature() == curvature_signature(m)))
    throw std::invalid_argument("eeb_contraction: signature mismatch");
  const Eigen::MatrixXcd& e = E.mat();
  cplx sum(0.0, 0.0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int l = 0; l < m; ++l)
        for (int g = 0; g < m; ++g)
          sum += e(a, b) * e(l, g) * B(g, a, b, l);
  const double scale = (1.0 + e.squaredNorm()) * (1.0 + B.max_abs());
  if (std::abs(sum.imag()) > imag_tol * scale)
    throw std::runtime_error(
        "contraction not real; input symmetries violated (imag = " +
        std::to_string(sum.imag()) + ")");
  return sum.real();
}

HKPair build_HK(const ComplexTensor& B, double sym_tol) {
  const int m = B.dim();
  const double scale = 1.0 + B.max_abs();
  const GapReport sym = check_kahler_symmetries(B, sym_tol * scale);
  if (!sym.pass)
    throw std::invalid_argument("build_HK: input violates curvature symmetries (" +
                                sym.witness + ")");
  ComplexTensor tr = contract(B, 0, 1);
  if (tr.max_abs() > sym_tol * scale)
    throw std::invalid_argument("build_HK: input has nonzero metric trace");

  const int n = m * m;
  Eigen::MatrixXcd h(n, n), k(n, n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          h(a * m + b, c * m + d) = -B(a, c, b, d);
          k(a * m + b, c * m + d) = -B(a, b, d, c);
        }

  HKPair out;
  const double htol = 10.0 * sym_tol * scale;
  out.H = HermitianMatrix(h, htol);
  out.K = HermitianMatrix(k, htol);
  out.trH = h.trace().real();
  out.trK = k.trace().real();
  out.trH2 = (h * h).trace().real();
  out.trK2 = (k * k).trace().real();
  out.trH3 = (h * h * h).trace().real();
  out.trK3 = (k * k * k).trace().real();
  return out;
}

double weitzenbock_residual_E(const CurvaturePackage& pkg, bool parallel_E,
                              bool constant_scalar) {
  if (!parallel_E)
    throw std::invalid_argument(
        "weitzenbock_residual_E: model not flagged parallel-E");
  if (!constant_scalar)
    throw std::invalid_argument(
        "weitzenbock_residual_E: model must have constant scalar curvature");
  const int m = pkg.g.dim();
  const Eigen::MatrixXcd& e = pkg.E.mat();
  const double tr_e3 = (e * e * e).trace().real();
  const double eeb = eeb_contraction(pkg.E, pkg.B, 1e-8);
  const double e_sq = hermitian_norm_sq(pkg.E);
  return (4.0 * m / (m + 2.0)) * tr_e3 + 4.0 * eeb +
         (2.0 * pkg.scalar / (m + 1.0)) * e_sq;
}

double weitzenbock_residual_B(const CurvaturePackage& pkg, bool parallel_B) {
  if (!parallel_B)
    throw std::invalid_argument(
        "weitzenbock_residual_B: model not flagged parallel-B");
  const int m = pkg.g.dim();
  const double e_norm = pkg.norm_E();
  if (e_norm > 100.0 * pkg.tol)
    throw std::invalid_argument(
        "weitzenbock_residual_B: package is not Einstein (|E| = " +
        std::to_string(e_norm) + ")");
  const HKPair hk = build_HK(pkg.B, pkg.tol);
  const double b_sq = curvature_norm_sq(pkg.B);
  return 8.0 * hk.trH3 - 16.0 * hk.trK3 + (2.0 * pkg.scalar / m) * b_sq;
}

}  // namespace kcurv
