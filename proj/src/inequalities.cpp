#include "kcurv/inequalities.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kcurv/parallel.hpp"
#include "kcurv/rng.hpp"

namespace kcurv {

namespace {

std::string list_to_string(std::span<const double> v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << "]";
  return os.str();
}

}  // namespace

GapReport okumura_gap(std::span<const double> lambda) {
  const int m = static_cast<int>(lambda.size());
  if (m < 1) throw std::invalid_argument("okumura_gap: empty input");
  double sum = 0.0, sum2 = 0.0, sum3 = 0.0, scale = 0.0;
  for (double l : lambda) {
    sum += l;
    sum2 += l * l;
    sum3 += l * l * l;
    scale = std::max(scale, std::abs(l));
  }
  if (std::abs(sum) > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("input not trace-free");
  const double bound =
      m >= 2 ? (m - 2.0) / std::sqrt(m * (m - 1.0)) * std::pow(sum2, 1.5) : 0.0;
  return make_gap_report("okumura", std::abs(sum3), bound, kTolAlgebraic,
                         list_to_string(lambda));
}

GapReport kato_pointwise_gap(std::span<const double> lambda,
                             const Eigen::MatrixXcd& mu) {
  const int m = static_cast<int>(lambda.size());
  if (mu.rows() != m || mu.cols() != m)
    throw std::invalid_argument("kato_pointwise_gap: mu must be m x m");
  double sum = 0.0, sum2 = 0.0, scale = 0.0;
  for (double l : lambda) {
    sum += l;
    sum2 += l * l;
    scale = std::max(scale, std::abs(l));
  }
  if (std::abs(sum) > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("kato_pointwise_gap: lambda not trace-free");
  for (int g = 0; g < m; ++g) {
    cplx col_sum(0.0, 0.0);
    double col_scale = 0.0;
    for (int a = 0; a < m; ++a) {
      col_sum += mu(a, g);
      col_scale = std::max(col_scale, std::abs(mu(a, g)));
    }
    if (std::abs(col_sum) > 1e-12 * std::max(1.0, col_scale))
      throw std::invalid_argument(
          "kato_pointwise_gap: mu column sums must vanish");
  }

  const double c_sq = 2.0 * sum2;
  double rhs_sum = 0.0, lhs_sum = 0.0;
  for (int g = 0; g < m; ++g) {
    double inner = std::norm(mu(g, g));
    double cross = 0.0;
    for (int a = 0; a < m; ++a)
      if (a != g) inner += 2.0 * std::norm(mu(a, g));
    for (int a = 0; a < m; ++a) cross += std::abs(lambda[a]) * std::abs(mu(a, g));
    rhs_sum += inner;
    lhs_sum += cross * cross;
  }
  const double rhs = m / (2.0 * (m + 1.0)) * c_sq * rhs_sum;
  return make_gap_report("kato_pointwise", lhs_sum, rhs, kTolAlgebraic,
                         "lambda=" + list_to_string(lambda));
}

GapReport kato_column_gap(std::span<const cplx> mu, int gamma) {
  const int m = static_cast<int>(mu.size());
  if (gamma < 0 || gamma >= m)
    throw std::invalid_argument("kato_column_gap: gamma out of range");
  cplx sum(0.0, 0.0);
  double total = 0.0, scale = 0.0;
  for (const cplx& v : mu) {
    sum += v;
    total += std::norm(v);
    scale = std::max(scale, std::abs(v));
  }
  if (std::abs(sum) > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("kato_column_gap: input not zero-sum");
  double lhs = (m + 1.0) / m * total;
  double rhs = std::norm(mu[gamma]);
  for (int a = 0; a < m; ++a)
    if (a != gamma) rhs += 2.0 * std::norm(mu[a]);
  return make_gap_report("kato_column", lhs, rhs, kTolAlgebraic,
                         "gamma=" + std::to_string(gamma));
}

namespace {

std::string point_witness(const ChartPoint& p) {
  std::ostringstream os;
  os << "point=(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) os << ",";
    os << p[k].real() << (p[k].imag() < 0 ? "" : "+") << p[k].imag() << "i";
  }
  os << ")";
  return os.str();
}

// Probes whether the scalar curvature is constant near p (relative variation
// across a small star of points).
double scalar_variation_near(const MetricChart& chart, const ChartPoint& p) {
  const double delta = 0.02;
  std::vector<double> values;
  values.push_back(curvature_at(chart, p).scalar);
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (int dir = 0; dir < 2; ++dir) {
      ChartPoint q = p;
      q[k] += dir == 0 ? cplx(delta, 0.0) : cplx(0.0, delta);
      values.push_back(curvature_at(chart, q).scalar);
    }
  }
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return (hi - lo) / std::max(1.0, std::abs(values[0]));
}

double frame_norm_sq_of_derivative(const CurvaturePackage& pkg,
                                   const ComplexTensor& coord_deriv,
                                   double weight) {
  const ComplexTensor framed = frame_normalize(pkg.g, coord_deriv);
  double s = 0.0;
  for (std::size_t i = 0; i < framed.size(); ++i) s += std::norm(framed.data()[i]);
  return weight * s;
}

}  // namespace

GapReport kato_field_gap(const MetricChart& chart, const ChartPoint& p,
                         double tol) {
  const int m = chart.dim();
  const CurvaturePackage pkg = curvature_at(chart, p);
  if (pkg.norm_E() <= 1e-8)
    throw std::runtime_error("Kato undefined where |C| = 0");

  const double variation = scalar_variation_near(chart, p);
  if (variation > 1e-6)
    return make_skipped_report(
        "kato_field", "hypothesis not met - skipped: scalar curvature varies by " +
                          std::to_string(variation));

  const CovariantDerivative de =
      covariant_derivative(chart, p, traceless_ricci_field(chart));
  // |grad E|^2 = 4 sum |E_{a b., l}|^2 in the unitary frame
  const double grad_E_sq = frame_norm_sq_of_derivative(pkg, de.holo, 4.0);

  auto norm_E_field = [&chart](const ChartPoint& q) {
    return curvature_at(chart, q).norm_E();
  };
  const double grad_abs_sq = scalar_field_gradient_norm_sq(chart, p, norm_E_field);

  const double rhs = m / (m + 1.0) * grad_E_sq;
  return make_gap_report("kato_field", grad_abs_sq, rhs, tol, point_witness(p));
}

double eeb_bound_constant(int m) {
  return 0.25 * std::sqrt((2.0 * m * m + 4.0 * m + 3.0) /
                          (2.0 * (m + 1.0) * (m + 2.0)));
}

GapReport eeb_bound_gap(const HermitianMatrix& E, const ComplexTensor& B) {
  const int m = E.dim();
  const double value = std::abs(eeb_contraction(E, B));
  const double bound = eeb_bound_constant(m) * std::sqrt(curvature_norm_sq(B)) *
                       hermitian_norm_sq(E);
  return make_gap_report("eeb_bound", value, bound, kTolAlgebraic,
                         "m=" + std::to_string(m));
}

GapReport trace_cube_gap(const HKPair& hk, char which, int m) {
  if (which != 'H' && which != 'K')
    throw std::invalid_argument("trace_cube_gap: which must be 'H' or 'K'");
  const HermitianMatrix& mat = which == 'H' ? hk.H : hk.K;
  const std::vector<double> ev = hermitian_eigenvalues(mat);
  double sum3 = 0.0, sum2 = 0.0;
  for (double v : ev) {
    sum3 += v * v * v;
    sum2 += v * v;
  }
  // |B|^2 = 4 tr(M^2); the bound is the zero-sum cubic bound at list length
  // n = m^2, i.e. ((m^2-2)/(8 sqrt(m^2 (m^2-1)))) |B|^3.
  const double b_cube = std::pow(4.0 * sum2, 1.5);
  const double n = static_cast<double>(m) * m;
  const double bound = (n - 2.0) / (8.0 * std::sqrt(n * (n - 1.0))) * b_cube;
  return make_gap_report(std::string("trace_cube_") + which, std::abs(sum3),
                         bound, kTolAlgebraic, "m=" + std::to_string(m));
}

GapReport bkn_gap(const MetricChart& chart, const ChartPoint& p, double tol) {
  const int m = chart.dim();
  const CurvaturePackage pkg = curvature_at(chart, p);
  if (pkg.norm_E() > 100.0 * pkg.tol)
    throw std::runtime_error("bkn_gap: chart is not Einstein at point (|E| = " +
                             std::to_string(pkg.norm_E()) + ")");
  if (pkg.norm_B() <= 1e-8)
    return make_skipped_report("bkn", "vacuous: |B| = 0 at " + point_witness(p));

  const CovariantDerivative db =
      covariant_derivative(chart, p, bochner_field(chart));
  // |grad B|^2 = 8 sum |B_{a b. c d., l}|^2 in the unitary frame
  const double grad_B_sq = frame_norm_sq_of_derivative(pkg, db.holo, 8.0);

  auto norm_B_field = [&chart](const ChartPoint& q) {
    return curvature_at(chart, q).norm_B();
  };
  const double grad_abs_sq = scalar_field_gradient_norm_sq(chart, p, norm_B_field);

  const double lhs = (m + 3.0) / (m + 1.0) * grad_abs_sq;
  return make_gap_report("bkn", lhs, grad_B_sq, tol, point_witness(p));
}

HermitianMatrix random_traceless_hermitian(int m, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("random_traceless_hermitian: m >= 2");
  SeededRng rng(seed);
  for (int attempt = 0; attempt < 16; ++attempt) {
    Eigen::MatrixXcd g(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(i, j) = rng.cgauss();
    Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
    h -= (h.trace() / static_cast<double>(m)) * Eigen::MatrixXcd::Identity(m, m);
    const double norm = std::sqrt(2.0 * h.squaredNorm());
    if (norm > 1e-8) {
      h /= norm;
      return HermitianMatrix(h, 1e-12);
    }
  }
  throw std::runtime_error("random_traceless_hermitian: degenerate draw");
}

ComplexTensor random_bochner_like(int m, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("random_bochner_like: m >= 2");
  SeededRng rng(seed);
  ComplexTensor t(curvature_signature(m));
  for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] = rng.cgauss();

  // project onto the curvature symmetry class
  ComplexTensor sym(curvature_signature(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          sym(a, b, c, d) = 0.25 * (t(a, b, c, d) + t(c, b, a, d) +
                                    t(a, d, c, b) + t(c, d, a, b));
  ComplexTensor real_sym(curvature_signature(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          real_sym(a, b, c, d) =
              0.5 * (sym(a, b, c, d) + std::conj(sym(b, a, d, c)));

  // remove the Ricci-type and scalar-type trace parts
  Eigen::MatrixXcd r(m, m);
  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d) {
      cplx s(0.0, 0.0);
      for (int a = 0; a < m; ++a) s += real_sym(a, a, c, d);
      r(c, d) = s;
    }
  const double t_scalar = r.trace().real();
  const Eigen::MatrixXcd e_part =
      r - (t_scalar / m) * Eigen::MatrixXcd::Identity(m, m);
  const double c_scalar = t_scalar / (m * (m + 1.0));
  ComplexTensor out(curvature_signature(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          cplx v = real_sym(a, b, c, d);
          cplx e_terms(0.0, 0.0);
          if (c == d) e_terms += e_part(a, b);
          if (a == d) e_terms += e_part(c, b);
          if (a == b) e_terms += e_part(c, d);
          if (c == b) e_terms += e_part(a, d);
          v -= e_terms / (m + 2.0);
          if (a == b && c == d) v -= c_scalar;
          if (c == b && a == d) v -= c_scalar;
          out(a, b, c, d) = v;
        }

  const double norm = std::sqrt(curvature_norm_sq(out));
  if (norm < 1e-8) return random_bochner_like(m, derive_seed(seed, 0x5eedULL));
  out *= cplx(1.0 / norm, 0.0);
  return out;
}

namespace {

std::vector<double> random_zero_sum(int m, SeededRng& rng) {
  std::vector<double> l(m);
  double mean = 0.0;
  for (double& v : l) {
    v = rng.gauss();
    mean += v;
  }
  mean /= m;
  double sum_after = 0.0;
  for (double& v : l) v -= mean;
  // exact re-centering against rounding
  for (double v : l) sum_after += v;
  l[0] -= sum_after;
  return l;
}

FuzzSummary run_fuzz(const std::string& suite, int m, int samples,
                     std::uint64_t seed, double tol,
                     const std::function<double(std::uint64_t, int)>& one_gap) {
  FuzzSummary out;
  out.suite = suite;
  out.m = m;
  out.samples = samples;
  out.tol = tol;
  out.min_gap = std::numeric_limits<double>::infinity();
  struct Chunk {
    double min_gap = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    int index = -1;
  };
  const int workers = worker_count();
  std::vector<Chunk> chunks(static_cast<std::size_t>(workers) + 1);
  parallel_chunks(samples, [&](long begin, long end) {
    Chunk local;
    for (long i = begin; i < end; ++i) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
      const double gap = one_gap(s, static_cast<int>(i));
      if (gap < local.min_gap ||
          (gap == local.min_gap && static_cast<int>(i) < local.index)) {
        local.min_gap = gap;
        local.seed = s;
        local.index = static_cast<int>(i);
      }
    }
    const long chunk_width = (samples + workers - 1) / workers;
    const std::size_t slot = workers <= 1 || samples < 2L * workers
                                 ? 0
                                 : static_cast<std::size_t>(begin / chunk_width);
    chunks[slot] = local;
  });
  for (const Chunk& c : chunks) {
    if (c.index < 0) continue;
    if (c.min_gap < out.min_gap ||
        (c.min_gap == out.min_gap && c.index < out.worst_index)) {
      out.min_gap = c.min_gap;
      out.worst_seed = c.seed;
      out.worst_index = c.index;
    }
  }
  out.pass = out.min_gap >= -tol;
  return out;
}

}  // namespace

FuzzSummary fuzz_okumura(int m, int samples, std::uint64_t seed, double tol) {
  return run_fuzz("okumura", m, samples, seed, tol,
                  [m](std::uint64_t s, int i) {
                    SeededRng rng(s);
                    std::vector<double> l = random_zero_sum(m, rng);
                    if (i % 10 == 9) {
                      // steer a fraction of samples toward the equality
                      // pattern (a, ..., a, -(m-1)a) to probe sharpness
                      for (int k = 0; k < m; ++k)
                        l[k] = 1.0 + 1e-3 * rng.gauss();
                      l[m - 1] = 0.0;
                      double sum = 0.0;
                      for (int k = 0; k + 1 < m; ++k) sum += l[k];
                      l[m - 1] = -sum;
                    }
                    return okumura_gap(l).gap;
                  });
}

FuzzSummary fuzz_kato_pointwise(int m, int samples, std::uint64_t seed,
                                double tol) {
  return run_fuzz("kato_pointwise", m, samples, seed, tol,
                  [m](std::uint64_t s, int) {
                    SeededRng rng(s);
                    std::vector<double> l = random_zero_sum(m, rng);
                    Eigen::MatrixXcd mu(m, m);
                    for (int g = 0; g < m; ++g) {
                      cplx mean(0.0, 0.0);
                      for (int a = 0; a < m; ++a) {
                        mu(a, g) = rng.cgauss();
                        mean += mu(a, g);
                      }
                      mean /= static_cast<double>(m);
                      cplx after(0.0, 0.0);
                      for (int a = 0; a < m; ++a) mu(a, g) -= mean;
                      for (int a = 0; a < m; ++a) after += mu(a, g);
                      mu(0, g) -= after;
                    }
                    return kato_pointwise_gap(l, mu).gap;
                  });
}

FuzzSummary fuzz_kato_column(int m, int samples, std::uint64_t seed,
                             double tol) {
  return run_fuzz("kato_column", m, samples, seed, tol,
                  [m](std::uint64_t s, int i) {
                    SeededRng rng(s);
                    std::vector<cplx> mu(m);
                    cplx mean(0.0, 0.0);
                    for (auto& v : mu) {
                      v = rng.cgauss();
                      mean += v;
                    }
                    mean /= static_cast<double>(m);
                    cplx after(0.0, 0.0);
                    for (auto& v : mu) v -= mean;
                    for (auto& v : mu) after += v;
                    mu[0] -= after;
                    return kato_column_gap(mu, i % m).gap;
                  });
}

FuzzSummary fuzz_eeb_bound(int m, int samples, std::uint64_t seed, double tol) {
  return run_fuzz("eeb_bound", m, samples, seed, tol,
                  [m](std::uint64_t s, int) {
                    const HermitianMatrix e =
                        random_traceless_hermitian(m, derive_seed(s, 1));
                    const ComplexTensor b = random_bochner_like(m, derive_seed(s, 2));
                    return eeb_bound_gap(e, b).gap;
                  });
}

FuzzSummary fuzz_trace_cube(int m, int samples, std::uint64_t seed,
                            double tol) {
  return run_fuzz("trace_cube", m, samples, seed, tol,
                  [m](std::uint64_t s, int i) {
                    const ComplexTensor b = random_bochner_like(m, s);
                    const HKPair hk = build_HK(b);
                    const GapReport g =
                        trace_cube_gap(hk, i % 2 == 0 ? 'H' : 'K', m);
                    return g.gap;
                  });
}

FuzzSummary fuzz_v_decomposition(int m, int samples, std::uint64_t seed,
                                 double tol) {
  // gap = smallest slack across the decomposition identities; a negative
  // value flags a violated identity.
  return run_fuzz(
      "v_decomposition", m, samples, seed, tol, [m](std::uint64_t s, int) {
        const HermitianMatrix e = random_traceless_hermitian(m, s);
        const VDecomposition v = build_V_and_decompose(e);
        const double e_sq = hermitian_norm_sq(e);
        const double e4 = e_sq * e_sq;

        double worst = std::numeric_limits<double>::infinity();
        auto check = [&worst](double residual) {
          worst = std::min(worst, -std::abs(residual));
        };
        // componentwise V = V1 + V2 + V3
        ComplexTensor sum = v.V1 + v.V2 + v.V3;
        sum -= v.V;
        check(sum.max_abs());
        // pairwise orthogonality
        check(curvature_inner(v.V1, v.V2));
        check(curvature_inner(v.V1, v.V3));
        check(curvature_inner(v.V2, v.V3));
        // Pythagoras and the closed-form norms
        check(v.V_sq - v.V1_sq - v.V2_sq - v.V3_sq);
        check(v.V_sq / 4.0 - (0.5 * e4 + 2.0 * v.Z));
        check(v.V2_sq / 4.0 - (4.0 * v.Z / (m + 2.0) - e4 / (m * (m + 2.0))));
        check(v.V3_sq / 4.0 - e4 / (2.0 * m * (m + 1.0)));
        // final norm bound on the Bochner-type part
        const double v1_bound =
            (4.0 * m * m + 8.0 * m + 6.0) / ((m + 1.0) * (m + 2.0)) * e4;
        return std::min(worst, v1_bound - v.V1_sq);
      });
}

}  // namespace kcurv
