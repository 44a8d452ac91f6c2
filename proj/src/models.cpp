#include "kcurv/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kcurv/rng.hpp"

namespace kcurv {

namespace {

double get_param(const std::map<std::string, double>& params,
                 const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double require_positive(double v, const std::string& what) {
  if (!(v > 0.0))
    throw std::invalid_argument("model parameter " + what + " must be positive");
  return v;
}

// Fubini-Study factor with potential scale * log(1 + |z|^2):
//   g_{ab.}  = s (d_{ab} u - zbar_a z_b) / u^2,            u = 1 + |z|^2
//   dg[c]    = s (-d_{ab} zbar_c - d_{bc} zbar_a + 2 zbar_a z_b zbar_c / u) / u^2
//   ddg[c][d]= s (-(d_{ab} d_{cd} + d_{ad} d_{bc})
//                 + 2 (d_{ab} zbar_c z_d + d_{bc} zbar_a z_d
//                    + d_{ad} z_b zbar_c + d_{cd} zbar_a z_b) / u
//                 - 6 zbar_a z_b zbar_c z_d / u^2) / u^2
MetricJet fs_jet(double s, const ChartPoint& z) {
  const int m = static_cast<int>(z.size());
  double zz = 0.0;
  for (const auto& v : z) zz += std::norm(v);
  const double u = 1.0 + zz;
  const double u2 = u * u;

  MetricJet jet;
  jet.g = Eigen::MatrixXcd::Zero(m, m);
  jet.dg.assign(m, Eigen::MatrixXcd::Zero(m, m));
  jet.ddg.assign(m, std::vector<Eigen::MatrixXcd>(m, Eigen::MatrixXcd::Zero(m, m)));

  auto zb = [&](int k) { return std::conj(z[k]); };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      jet.g(a, b) = s * ((a == b ? u : 0.0) - zb(a) * z[b]) / u2;

  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        cplx v = 2.0 * zb(a) * z[b] * zb(c) / u;
        if (a == b) v -= zb(c);
        if (b == c) v -= zb(a);
        jet.dg[c](a, b) = s * v / u2;
      }

  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          cplx v = -6.0 * zb(a) * z[b] * zb(c) * z[d] / (u * u);
          cplx pair(0.0, 0.0);
          if (a == b) pair += zb(c) * z[d];
          if (b == c) pair += zb(a) * z[d];
          if (a == d) pair += z[b] * zb(c);
          if (c == d) pair += zb(a) * z[b];
          v += 2.0 * pair / u;
          if (a == b && c == d) v -= 1.0;
          if (a == d && b == c) v -= 1.0;
          jet.ddg[c][d](a, b) = s * v / u2;
        }
  return jet;
}

// Complex hyperbolic factor with potential -scale * log(1 - |z|^2) on the
// unit ball: same shape as the FS jet with u = 1 - |z|^2 and flipped signs.
MetricJet ch_jet(double s, const ChartPoint& z) {
  const int m = static_cast<int>(z.size());
  double zz = 0.0;
  for (const auto& v : z) zz += std::norm(v);
  const double u = 1.0 - zz;
  if (u <= 0.0) throw std::runtime_error("hyperbolic chart evaluated outside the unit ball");
  const double u2 = u * u;

  MetricJet jet;
  jet.g = Eigen::MatrixXcd::Zero(m, m);
  jet.dg.assign(m, Eigen::MatrixXcd::Zero(m, m));
  jet.ddg.assign(m, std::vector<Eigen::MatrixXcd>(m, Eigen::MatrixXcd::Zero(m, m)));

  auto zb = [&](int k) { return std::conj(z[k]); };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      jet.g(a, b) = s * ((a == b ? u : 0.0) + zb(a) * z[b]) / u2;

  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        cplx v = 2.0 * zb(a) * z[b] * zb(c) / u;
        if (a == b) v += zb(c);
        if (b == c) v += zb(a);
        jet.dg[c](a, b) = s * v / u2;
      }

  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          cplx v = 6.0 * zb(a) * z[b] * zb(c) * z[d] / (u * u);
          cplx pair(0.0, 0.0);
          if (a == b) pair += zb(c) * z[d];
          if (b == c) pair += zb(a) * z[d];
          if (a == d) pair += z[b] * zb(c);
          if (c == d) pair += zb(a) * z[b];
          v += 2.0 * pair / u;
          if (a == b && c == d) v += 1.0;
          if (a == d && b == c) v += 1.0;
          jet.ddg[c][d](a, b) = s * v / u2;
        }
  return jet;
}

MetricJet flat_jet(int m) {
  MetricJet jet;
  jet.g = Eigen::MatrixXcd::Identity(m, m);
  jet.dg.assign(m, Eigen::MatrixXcd::Zero(m, m));
  jet.ddg.assign(m, std::vector<Eigen::MatrixXcd>(m, Eigen::MatrixXcd::Zero(m, m)));
  return jet;
}

using FactorJetFn = std::function<MetricJet(const ChartPoint&)>;

// Block-diagonal product of two factor charts; all cross-factor derivative
// blocks vanish.
MetricJet product_jet(const FactorJetFn& f1, int m1, const FactorJetFn& f2,
                      int m2, const ChartPoint& z) {
  const int m = m1 + m2;
  ChartPoint z1(z.begin(), z.begin() + m1);
  ChartPoint z2(z.begin() + m1, z.end());
  const MetricJet j1 = f1(z1);
  const MetricJet j2 = f2(z2);

  MetricJet jet;
  jet.g = Eigen::MatrixXcd::Zero(m, m);
  jet.g.topLeftCorner(m1, m1) = j1.g;
  jet.g.bottomRightCorner(m2, m2) = j2.g;
  jet.dg.assign(m, Eigen::MatrixXcd::Zero(m, m));
  jet.ddg.assign(m, std::vector<Eigen::MatrixXcd>(m, Eigen::MatrixXcd::Zero(m, m)));
  for (int c = 0; c < m1; ++c)
    jet.dg[c].topLeftCorner(m1, m1) = j1.dg[c];
  for (int c = 0; c < m2; ++c)
    jet.dg[m1 + c].bottomRightCorner(m2, m2) = j2.dg[c];
  for (int c = 0; c < m1; ++c)
    for (int d = 0; d < m1; ++d)
      jet.ddg[c][d].topLeftCorner(m1, m1) = j1.ddg[c][d];
  for (int c = 0; c < m2; ++c)
    for (int d = 0; d < m2; ++d)
      jet.ddg[m1 + c][m1 + d].bottomRightCorner(m2, m2) = j2.ddg[c][d];
  return jet;
}

MetricChart exact_chart(int m, DomainBox domain, ExactJetFn jet) {
  MetricFn metric = [jet](const ChartPoint& p) { return jet(p).g; };
  return MetricChart::exact(m, std::move(domain), std::move(metric), jet);
}

std::string format_point(const ChartPoint& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) os << ", ";
    os << p[k];
  }
  os << ")";
  return os.str();
}

// --- flag validation probes ---------------------------------------------

void validate_flags(ModelSpec& model) {
  const int n_probe = 10;
  const double tol_e = 1e-8;
  std::vector<ChartPoint> pts = sample_points(model, n_probe, 20240901ULL);

  double max_E = 0.0, max_B = 0.0;
  double r_min = 0.0, r_max = 0.0;
  bool first = true;
  for (const auto& p : pts) {
    Eigen::LLT<Eigen::MatrixXcd> llt(model.chart.metric(p));
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("model " + model.name +
                               ": metric not positive definite at point " +
                               format_point(p));
    const CurvaturePackage pkg = curvature_at(model.chart, p);
    max_E = std::max(max_E, pkg.norm_E());
    max_B = std::max(max_B, pkg.norm_B());
    if (first) {
      r_min = r_max = pkg.scalar;
      first = false;
    } else {
      r_min = std::min(r_min, pkg.scalar);
      r_max = std::max(r_max, pkg.scalar);
    }
  }

  const double fd_slack = model.chart.exact_mode() ? 1.0 : 1e3;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("model " + model.name + ": flag validation failed: " + what);
  };

  if (model.flags.einstein && max_E > tol_e * fd_slack)
    fail("einstein flag but |E| = " + std::to_string(max_E));
  if (!model.flags.einstein && max_E < tol_e)
    fail("non-einstein flag but no witness point with |E| above threshold");
  if (model.flags.space_form && max_B > tol_e * fd_slack)
    fail("space_form flag but |B| = " + std::to_string(max_B));

  const double r_scale = std::max({std::abs(r_min), std::abs(r_max), 1.0});
  const double cv = (r_max - r_min) / r_scale;
  const double cv_tol = model.chart.exact_mode() ? 1e-8 : 1e-4;
  if (model.flags.constant_scalar && cv > cv_tol)
    fail("constant_scalar flag but scalar curvature varies by " + std::to_string(cv));
  if (!model.flags.constant_scalar && cv < cv_tol)
    fail("non-constant-scalar flag but scalar curvature looks constant");

  const double r_mid = 0.5 * (r_min + r_max);
  const int sign = r_scale > 0.0 && std::abs(r_mid) > 1e-8 ? (r_mid > 0 ? 1 : -1) : 0;
  if (sign != model.flags.scalar_sign)
    fail("scalar_sign flag " + std::to_string(model.flags.scalar_sign) +
         " but measured sign " + std::to_string(sign));

  // Parallel-tensor flags: probe the covariant derivative at two points.
  // Finite-difference charts are too noisy to differentiate a field that is
  // itself finite-differenced, so the probe runs on exact charts only.
  if (model.chart.exact_mode() &&
      (model.flags.parallel_E || model.flags.parallel_B)) {
    const double par_tol = 1e-6;
    for (int k = 0; k < 2; ++k) {
      const ChartPoint& p = pts[k];
      if (model.flags.parallel_E) {
        const CovariantDerivative d =
            covariant_derivative(model.chart, p, traceless_ricci_field(model.chart));
        const double r = std::max(d.holo.max_abs(), d.anti.max_abs());
        if (r > par_tol * (1.0 + max_E))
          fail("parallel_E flag but |grad E| = " + std::to_string(r));
      }
      if (model.flags.parallel_B) {
        const CovariantDerivative d =
            covariant_derivative(model.chart, p, bochner_field(model.chart));
        const double r = std::max(d.holo.max_abs(), d.anti.max_abs());
        if (r > par_tol * (1.0 + max_B))
          fail("parallel_B flag but |grad B| = " + std::to_string(r));
      }
    }
  }
}

}  // namespace

std::string flags_string(const ModelFlags& f) {
  std::string s;
  auto add = [&s](const char* tag) {
    if (!s.empty()) s += " ";
    s += tag;
  };
  if (f.einstein) add("einstein");
  if (f.constant_scalar) add("constant-scalar");
  if (f.space_form) add("space-form");
  if (f.parallel_E) add("parallel-E");
  if (f.parallel_B) add("parallel-B");
  add(f.compact ? "compact" : "noncompact");
  if (f.homogeneous) add("homogeneous");
  add(f.scalar_sign > 0 ? "R>0" : (f.scalar_sign < 0 ? "R<0" : "R=0"));
  return s;
}

std::vector<std::string> model_names() {
  return {"flat",        "fubini_study", "complex_hyperbolic",
          "product_cp1", "product_cpm",  "perturbed_fs"};
}

std::vector<ChartPoint> sample_points(const ModelSpec& model, int n,
                                      std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<ChartPoint> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    ChartPoint p(model.m);
    for (int k = 0; k < model.m; ++k) {
      const auto& c = model.sample_box.coords[k];
      p[k] = cplx(rng.uniform(c.re_lo, c.re_hi), rng.uniform(c.im_lo, c.im_hi));
    }
    out.push_back(std::move(p));
  }
  return out;
}

ModelSpec make_model(const std::string& name,
                     const std::map<std::string, double>& params) {
  ModelSpec model;
  model.name = name;
  model.params = params;

  if (name == "flat") {
    const int m = static_cast<int>(get_param(params, "m", 2));
    if (m < 1) throw std::invalid_argument("flat: m must be >= 1");
    model.m = m;
    model.chart = exact_chart(m, DomainBox::cube(m, 50.0),
                              [m](const ChartPoint&) { return flat_jet(m); });
    model.flags = {true, true, true, true, true, false, true, 0};
    model.sample_box = DomainBox::cube(m, 1.0);
  } else if (name == "fubini_study") {
    const int m = static_cast<int>(get_param(params, "m", 2));
    const double s = require_positive(get_param(params, "scale", 1.0), "scale");
    if (m < 1) throw std::invalid_argument("fubini_study: m must be >= 1");
    model.m = m;
    model.params["scale"] = s;
    model.chart = exact_chart(m, DomainBox::cube(m, 1e6),
                              [s](const ChartPoint& z) { return fs_jet(s, z); });
    model.flags = {true, true, true, true, true, true, true, +1};
    model.sample_box = DomainBox::cube(m, 0.8);
  } else if (name == "complex_hyperbolic") {
    const int m = static_cast<int>(get_param(params, "m", 2));
    const double s = require_positive(get_param(params, "scale", 1.0), "scale");
    if (m < 1) throw std::invalid_argument("complex_hyperbolic: m must be >= 1");
    model.m = m;
    model.params["scale"] = s;
    DomainBox dom = DomainBox::cube(m, 0.9);
    dom.max_radius = 0.9;
    model.chart = exact_chart(m, std::move(dom),
                              [s](const ChartPoint& z) { return ch_jet(s, z); });
    model.flags = {true, true, true, true, true, false, true, -1};
    const double half = 0.25 / std::sqrt(static_cast<double>(m));
    model.sample_box = DomainBox::cube(m, half);
  } else if (name == "product_cp1") {
    const double a = require_positive(get_param(params, "a", 1.0), "a");
    const double b = require_positive(get_param(params, "b", 1.0), "b");
    model.m = 2;
    model.params["a"] = a;
    model.params["b"] = b;
    const double rel_gap = std::abs(a - b) / std::max(a, b);
    if (rel_gap != 0.0 && rel_gap < 1e-6)
      throw std::invalid_argument(
          "product_cp1: scales too close to distinguish Einstein flags; "
          "use equal scales or separate them by more than 1e-6 relative");
    FactorJetFn f1 = [a](const ChartPoint& z) { return fs_jet(a, z); };
    FactorJetFn f2 = [b](const ChartPoint& z) { return fs_jet(b, z); };
    model.chart = exact_chart(2, DomainBox::cube(2, 1e6),
                              [f1, f2](const ChartPoint& z) {
                                return product_jet(f1, 1, f2, 1, z);
                              });
    model.factor_charts.push_back(exact_chart(1, DomainBox::cube(1, 1e6), f1));
    model.factor_charts.push_back(exact_chart(1, DomainBox::cube(1, 1e6), f2));
    const bool einstein = rel_gap == 0.0;
    model.flags = {einstein, true, false, true, einstein, true, true, +1};
    model.sample_box = DomainBox::cube(2, 0.8);
  } else if (name == "product_cpm") {
    const int m1 = static_cast<int>(get_param(params, "m1", 2));
    const int m2 = static_cast<int>(get_param(params, "m2", 2));
    if (m1 < 1 || m2 < 1)
      throw std::invalid_argument("product_cpm: factor dimensions must be >= 1");
    model.m = m1 + m2;
    model.params["m1"] = m1;
    model.params["m2"] = m2;
    FactorJetFn f1 = [](const ChartPoint& z) { return fs_jet(1.0, z); };
    FactorJetFn f2 = [](const ChartPoint& z) { return fs_jet(1.0, z); };
    model.chart = exact_chart(model.m, DomainBox::cube(model.m, 1e6),
                              [f1, f2, m1, m2](const ChartPoint& z) {
                                return product_jet(f1, m1, f2, m2, z);
                              });
    model.factor_charts.push_back(exact_chart(m1, DomainBox::cube(m1, 1e6), f1));
    model.factor_charts.push_back(exact_chart(m2, DomainBox::cube(m2, 1e6), f2));
    const bool einstein = (m1 == m2);
    model.flags = {einstein, true, false, true, einstein, true, true, +1};
    model.sample_box = DomainBox::cube(model.m, 0.6);
  } else if (name == "perturbed_fs") {
    const int m = static_cast<int>(get_param(params, "m", 2));
    const double eps = get_param(params, "eps", 0.05);
    if (m < 1) throw std::invalid_argument("perturbed_fs: m must be >= 1");
    if (eps < 0.0) throw std::invalid_argument("perturbed_fs: eps must be >= 0");
    if (eps != 0.0 && eps < 0.01)
      throw std::invalid_argument(
          "perturbed_fs: eps must be 0 or at least 0.01 so that the "
          "perturbation is resolvable above finite-difference noise");
    model.m = m;
    model.params["eps"] = eps;
    PotentialFn phi = [eps](const ChartPoint& z) {
      double zz = 0.0;
      for (const auto& v : z) zz += std::norm(v);
      return std::log(1.0 + zz) + eps * std::norm(z[0]) * std::exp(-zz);
    };
    model.chart = MetricChart::potential_fd(m, DomainBox::cube(m, 6.0), phi);
    const bool trivial = eps == 0.0;
    model.flags = {trivial, trivial, trivial, trivial, trivial, false, trivial, +1};
    model.sample_box = DomainBox::cube(m, 0.7);
  } else {
    throw std::invalid_argument("unknown model name: " + name);
  }

  validate_flags(model);
  return model;
}

}  // namespace kcurv
