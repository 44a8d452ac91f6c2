#pragma once

#include "kcurv/chart.hpp"
#include "kcurv/tensor.hpp"

namespace kcurv {

// Two algebraically equivalent constructions of the Bochner tensor in the
// unitary frame: from the Ricci tensor directly, and from the traceless
// Ricci tensor. They must agree to round-off; keeping both routes is the
// regression test for the trace conventions.
ComplexTensor bochner_from_ricci(const CurvaturePackage& pkg);
ComplexTensor bochner_from_E(const CurvaturePackage& pkg);

// Orthogonal decomposition of the curvature-like square V of a trace-free
// Hermitian tensor E into its Bochner-type (V1), traceless-Ricci-type (V2)
// and scalar-type (V3) parts, with the closed-form norms
//   |V|^2/4  = |E|^4/2 + 2 Z
//   |V2|^2/4 = 4Z/(m+2) - |E|^4 / (m(m+2))
//   |V3|^2/4 = |E|^4 / (2m(m+1))
// where Z = tr((E_{a b.})^4).
struct VDecomposition {
  ComplexTensor V, V1, V2, V3;
  double V_sq = 0.0, V1_sq = 0.0, V2_sq = 0.0, V3_sq = 0.0;
  HermitianMatrix VE;      // V^E = E^2 - (K/m) g
  double Kscalar = 0.0;    // K = |E|^2 / 2
  double Z = 0.0;
};
VDecomposition build_V_and_decompose(const HermitianMatrix& E,
                                     double trace_tol = 1e-10);

// The contraction E_{a b.} E_{l g.} B_{g a. b l.}; real for inputs with the
// curvature symmetries. Throws if the imaginary part exceeds tolerance.
double eeb_contraction(const HermitianMatrix& E, const ComplexTensor& B,
                       double imag_tol = 1e-10);

// The two m^2 x m^2 Hermitian contraction matrices of a Bochner-type tensor,
// with pair flattening (a,b) -> a*m + b. Entries are read off the stored
// (holo, anti, holo, anti) components with the sign that accounts for
// reordering inside a form pair:
//   H[(a,b)][(c,d)] = -B_{a c. b d.},  K[(a,b)][(c,d)] = -B_{a b. d c.}.
// tr H = tr K = 0 and tr H^2 = tr K^2 = |B|^2/4.
struct HKPair {
  HermitianMatrix H, K;
  double trH = 0.0, trK = 0.0;
  double trH2 = 0.0, trK2 = 0.0;
  double trH3 = 0.0, trK3 = 0.0;
};
HKPair build_HK(const ComplexTensor& B, double sym_tol = 1e-8);

// Weitzenboeck identity residuals, restricted to models whose differential
// terms vanish identically (parallel E resp. parallel B), so only the
// algebraic curvature terms remain:
//   E:  (4m/(m+2)) tr(E^3) + 4 (E.E.B) + (2R/(m+1)) |E|^2
//   B:  8 tr(H^3) - 16 tr(K^3) + (2R/m) |B|^2
double weitzenbock_residual_E(const CurvaturePackage& pkg, bool parallel_E,
                              bool constant_scalar);
double weitzenbock_residual_B(const CurvaturePackage& pkg, bool parallel_B);

}  // namespace kcurv
