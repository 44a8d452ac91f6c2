#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "kcurv/analysis.hpp"
#include "kcurv/chart.hpp"
#include "kcurv/gap_report.hpp"
#include "kcurv/tensor.hpp"

namespace kcurv {

// Tolerance rungs: algebraic identities vs finite-difference pipelines.
constexpr double kTolAlgebraic = 1e-12;
constexpr double kTolFd = 1e-5;

// |sum l^3| <= ((m-2)/sqrt(m(m-1))) (sum l^2)^{3/2} for zero-sum real lists.
GapReport okumura_gap(std::span<const double> lambda);

// Reduced pointwise Kato inequality for a trace-free Hermitian tensor with
// eigenvalues `lambda` and derivative data mu(alpha, gamma), each column
// gamma summing to zero:
//   sum_g (sum_a |l_a| |mu_{ag}|)^2
//     <= (m/(2(m+1))) |C|^2 sum_g (|mu_{gg}|^2 + 2 sum_{a!=g} |mu_{ag}|^2)
// with |C|^2 = 2 sum l^2.
GapReport kato_pointwise_gap(std::span<const double> lambda,
                             const Eigen::MatrixXcd& mu);

// Column chain inequality feeding the reduced Kato bound: for a zero-sum
// complex vector mu and a distinguished index g,
//   |mu_g|^2 + 2 sum_{a != g} |mu_a|^2 >= ((m+1)/m) sum_a |mu_a|^2.
GapReport kato_column_gap(std::span<const cplx> mu, int gamma);

// Field-level Kato inequality |grad|E||^2 <= (m/(m+1)) |grad E|^2 at a chart
// point. Requires constant scalar curvature (probed at runtime; reports
// "skipped" when the hypothesis fails) and |E| > 1e-8 (throws otherwise).
GapReport kato_field_gap(const MetricChart& chart, const ChartPoint& p,
                         double tol = kTolFd);

// |E.E.B contraction| <= (1/4) sqrt((2m^2+4m+3)/(2(m+1)(m+2))) |B| |E|^2.
GapReport eeb_bound_gap(const HermitianMatrix& E, const ComplexTensor& B);
double eeb_bound_constant(int m);

// |tr(M^3)| <= ((m^2-2)/(8 sqrt(m^2(m^2-1)))) |B|^3 for M = H or K,
// evaluated from the eigenvalues of the m^2 x m^2 matrix.
GapReport trace_cube_gap(const HKPair& hk, char which, int m);

// |grad B|^2 >= ((m+3)/(m+1)) |grad |B||^2 on an Einstein chart. Throws on
// non-Einstein input; reports "vacuous" where |B| = 0.
GapReport bkn_gap(const MetricChart& chart, const ChartPoint& p,
                  double tol = kTolFd);

// Seeded generators. Outputs are normalized (|E| = 1 resp. |B| = 1) and
// satisfy tracelessness / curvature symmetries to 1e-12.
HermitianMatrix random_traceless_hermitian(int m, std::uint64_t seed);
ComplexTensor random_bochner_like(int m, std::uint64_t seed);

// Fuzz drivers: deterministic per (m, samples, seed).
struct FuzzSummary {
  std::string suite;
  int m = 0;
  int samples = 0;
  double min_gap = 0.0;
  double tol = kTolAlgebraic;
  std::uint64_t worst_seed = 0;
  int worst_index = -1;
  bool pass = false;
};

FuzzSummary fuzz_okumura(int m, int samples, std::uint64_t seed,
                         double tol = kTolAlgebraic);
FuzzSummary fuzz_kato_pointwise(int m, int samples, std::uint64_t seed,
                                double tol = kTolAlgebraic);
FuzzSummary fuzz_kato_column(int m, int samples, std::uint64_t seed,
                             double tol = kTolAlgebraic);
FuzzSummary fuzz_eeb_bound(int m, int samples, std::uint64_t seed,
                           double tol = kTolAlgebraic);
FuzzSummary fuzz_trace_cube(int m, int samples, std::uint64_t seed,
                            double tol = kTolAlgebraic);
FuzzSummary fuzz_v_decomposition(int m, int samples, std::uint64_t seed,
                                 double tol = 1e-10);

}  // namespace kcurv
