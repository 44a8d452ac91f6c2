#include "kcurv/metric_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "kcurv/expression.hpp"
#include "kcurv/models.hpp"

namespace kcurv {

namespace {

using nlohmann::json;

// line/column of a byte offset, for locating JSON parse errors
std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

DomainBox parse_domain(const json& j, int m, const std::string& origin) {
  DomainBox dom = DomainBox::cube(m, 5.0);
  if (j.contains("domain")) {
    const json& d = j.at("domain");
    if (!d.is_array() || static_cast<int>(d.size()) != m)
      throw MetricFileError(origin + ": 'domain' must list one box per coordinate");
    dom.coords.clear();
    for (const auto& c : d) {
      DomainBox::CoordBox box;
      const auto& re = c.at("re");
      const auto& im = c.at("im");
      box.re_lo = re.at(0).get<double>();
      box.re_hi = re.at(1).get<double>();
      box.im_lo = im.at(0).get<double>();
      box.im_hi = im.at(1).get<double>();
      if (box.re_lo >= box.re_hi || box.im_lo >= box.im_hi)
        throw MetricFileError(origin + ": empty domain interval");
      dom.coords.push_back(box);
    }
  }
  if (j.contains("max_radius")) dom.max_radius = j.at("max_radius").get<double>();
  return dom;
}

Expr parse_entry(const std::string& text, int m, const std::string& origin,
                 const std::string& where) {
  try {
    return Expr::parse(text, m);
  } catch (const ExprParseError& e) {
    throw MetricFileError(origin + ": " + where + ": " + e.what());
  }
}

// Symbolic jet of a matrix of expressions.
struct SymbolicJet {
  int m;
  std::vector<Expr> g;                  // m*m, row-major
  std::vector<Expr> dg;                 // m*m*m: [c](a,b)
  std::vector<Expr> ddg;                // m*m*m*m: [c][d](a,b)
  Expr& at_g(int a, int b) { return g[a * m + b]; }
  Expr& at_dg(int c, int a, int b) { return dg[(c * m + a) * m + b]; }
  Expr& at_ddg(int c, int d, int a, int b) {
    return ddg[((c * m + d) * m + a) * m + b];
  }
};

SymbolicJet differentiate_metric(std::vector<Expr> g_entries, int m) {
  SymbolicJet jet;
  jet.m = m;
  jet.g = std::move(g_entries);
  jet.dg.resize(static_cast<std::size_t>(m) * m * m);
  jet.ddg.resize(static_cast<std::size_t>(m) * m * m * m);
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        jet.at_dg(c, a, b) = jet.at_g(a, b).d(c);
  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          jet.at_ddg(c, d, a, b) = jet.at_dg(c, a, b).dbar(d);
  return jet;
}

MetricChart chart_from_symbolic(SymbolicJet sym, DomainBox domain) {
  const int m = sym.m;
  auto shared = std::make_shared<SymbolicJet>(std::move(sym));
  MetricFn metric = [shared, m](const ChartPoint& p) {
    Eigen::MatrixXcd g(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) g(a, b) = shared->at_g(a, b).eval(p);
    return g;
  };
  ExactJetFn jet = [shared, m](const ChartPoint& p) {
    MetricJet out;
    out.g = Eigen::MatrixXcd(m, m);
    out.dg.assign(m, Eigen::MatrixXcd(m, m));
    out.ddg.assign(m, std::vector<Eigen::MatrixXcd>(m, Eigen::MatrixXcd(m, m)));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out.g(a, b) = shared->at_g(a, b).eval(p);
    for (int c = 0; c < m; ++c)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          out.dg[c](a, b) = shared->at_dg(c, a, b).eval(p);
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            out.ddg[c][d](a, b) = shared->at_ddg(c, d, a, b).eval(p);
    return out;
  };
  return MetricChart::exact(m, std::move(domain), std::move(metric), std::move(jet));
}

}  // namespace

MetricChart metric_chart_from_json_text(const std::string& text,
                                        const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw MetricFileError(origin + ":" + std::to_string(line) + ":" +
                          std::to_string(col) + ": " + e.what());
  }

  try {
    // a metric file may also name a built-in model geometry
    if (j.value("kind", std::string()) == "model") {
      const std::string name = j.at("name").get<std::string>();
      std::map<std::string, double> params;
      if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items())
          params[k] = v.get<double>();
      try {
        return make_model(name, params).chart;
      } catch (const std::invalid_argument& e) {
        throw MetricFileError(origin + ": " + e.what());
      }
    }
    const int m = j.at("m").get<int>();
    if (m < 1 || m > 6)
      throw MetricFileError(origin + ": m must be between 1 and 6");
    const std::string kind = j.at("kind").get<std::string>();
    const std::string mode = j.value("derivative_mode", std::string("fd"));
    if (mode != "fd" && mode != "exact")
      throw MetricFileError(origin + ": derivative_mode must be 'fd' or 'exact'");
    DomainBox domain = parse_domain(j, m, origin);

    if (kind == "potential") {
      if (!j.at("expression").is_string())
        throw MetricFileError(origin +
                              ": potential metrics need a string 'expression'");
      const std::string text_expr = j.at("expression").get<std::string>();
      Expr phi = parse_entry(text_expr, m, origin, "expression");

      if (mode == "exact") {
        // g_{a b.} = d^2 phi / dz_a dzbar_b, then symbolic derivatives
        std::vector<Expr> g(static_cast<std::size_t>(m) * m);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) g[a * m + b] = phi.d(a).dbar(b);
        return chart_from_symbolic(differentiate_metric(std::move(g), m),
                                   std::move(domain));
      }
      PotentialFn fn = [phi](const ChartPoint& p) { return phi.eval(p).real(); };
      // reject complex-valued potentials up front
      ChartPoint probe(m, cplx(0.1, 0.05));
      const cplx v = phi.eval(probe);
      if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v)))
        throw MetricFileError(origin + ": potential is not real-valued");
      return MetricChart::potential_fd(m, std::move(domain), std::move(fn));
    }

    if (kind == "components") {
      const json& e = j.at("expression");
      if (!e.is_array() || static_cast<int>(e.size()) != m)
        throw MetricFileError(
            origin + ": component metrics need an m x m array 'expression'");
      std::vector<Expr> g(static_cast<std::size_t>(m) * m);
      for (int a = 0; a < m; ++a) {
        const json& row = e.at(a);
        if (!row.is_array() || static_cast<int>(row.size()) != m)
          throw MetricFileError(origin + ": expression row " + std::to_string(a) +
                                " must have m entries");
        for (int b = 0; b < m; ++b)
          g[a * m + b] =
              parse_entry(row.at(b).get<std::string>(), m, origin,
                          "expression[" + std::to_string(a) + "][" +
                              std::to_string(b) + "]");
      }
      if (mode == "exact")
        return chart_from_symbolic(differentiate_metric(std::move(g), m),
                                   std::move(domain));
      auto shared = std::make_shared<std::vector<Expr>>(std::move(g));
      MetricFn fn = [shared, m](const ChartPoint& p) {
        Eigen::MatrixXcd out(m, m);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) out(a, b) = (*shared)[a * m + b].eval(p);
        return out;
      };
      return MetricChart::metric_fd(m, std::move(domain), std::move(fn));
    }

    throw MetricFileError(origin + ": kind must be 'potential' or 'components'");
  } catch (const json::exception& e) {
    throw MetricFileError(origin + ": " + e.what());
  }
}

MetricChart load_metric_chart(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MetricFileError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return metric_chart_from_json_text(buf.str(), path);
}

}  // namespace kcurv
