#include "kcurv/report.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kcurv {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json point_json(const ChartPoint& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& z : p) arr.push_back({z.real(), z.imag()});
  return arr;
}

ordered_json gap_json(const GapReport& g) {
  ordered_json j;
  j["name"] = g.name;
  j["lhs"] = g.lhs;
  j["rhs"] = g.rhs;
  j["gap"] = g.gap;
  j["tol"] = g.tol;
  j["pass"] = g.pass;
  j["skipped"] = g.skipped;
  j["witness"] = g.witness;
  return j;
}

ordered_json fuzz_json(const FuzzSummary& f) {
  ordered_json j;
  j["suite"] = f.suite;
  j["m"] = f.m;
  j["samples"] = f.samples;
  j["min_gap"] = f.min_gap;
  j["tol"] = f.tol;
  j["worst_seed"] = f.worst_seed;
  j["worst_index"] = f.worst_index;
  j["pass"] = f.pass;
  return j;
}

ordered_json verdict_json(const PinchVerdict& v) {
  ordered_json j;
  j["theorem"] = v.theorem_id;
  j["model"] = v.model;
  j["m"] = v.m;
  j["applicable"] = v.applicable;
  j["lhs"] = v.lhs;
  j["threshold"] = v.threshold;
  j["margin"] = v.margin;
  j["satisfied"] = v.satisfied;
  j["boundary_case"] = v.boundary_case;
  j["expected_conclusion"] = v.expected_conclusion;
  j["consistency"] = v.consistency;
  j["notes"] = v.notes;
  return j;
}

bool verdict_ok(const PinchVerdict& v) {
  return v.consistency != "paper-contradiction";
}

}  // namespace

bool RunReport::all_pass() const {
  for (const auto& s : sections) {
    for (const auto& g : s.gaps)
      if (!g.pass) return false;
    for (const auto& f : s.fuzz)
      if (!f.pass) return false;
    for (const auto& v : s.verdicts)
      if (!verdict_ok(v)) return false;
  }
  return true;
}

std::string RunReport::to_json_text() const {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = {{"name", "kcurv"}, {"version", kToolVersion}};
  j["seed"] = seed;
  j["model"] = model_ref;
  j["tolerances"] = {{"algebraic", tol_algebraic}, {"fd", tol_fd}};
  j["all_pass"] = all_pass();
  ordered_json sects = ordered_json::array();
  for (const auto& s : sections) {
    ordered_json sj;
    sj["name"] = s.name;
    if (!s.model_flags.empty()) sj["model_flags"] = s.model_flags;
    if (!s.analyze_rows.empty()) {
      ordered_json rows = ordered_json::array();
      for (const auto& r : s.analyze_rows) {
        ordered_json rj;
        rj["point"] = point_json(r.point);
        rj["scalar_curvature"] = r.scalar;
        rj["norm_E"] = r.norm_E;
        rj["norm_B"] = r.norm_B;
        rows.push_back(rj);
      }
      sj["points"] = rows;
    }
    if (!s.gaps.empty()) {
      ordered_json rows = ordered_json::array();
      for (const auto& g : s.gaps) rows.push_back(gap_json(g));
      sj["gaps"] = rows;
    }
    if (!s.fuzz.empty()) {
      ordered_json rows = ordered_json::array();
      for (const auto& f : s.fuzz) rows.push_back(fuzz_json(f));
      sj["fuzz"] = rows;
    }
    if (!s.verdicts.empty()) {
      ordered_json rows = ordered_json::array();
      for (const auto& v : s.verdicts) rows.push_back(verdict_json(v));
      sj["verdicts"] = rows;
    }
    if (include_timings) sj["wall_seconds"] = s.wall_seconds;
    sects.push_back(sj);
  }
  j["sections"] = sects;
  return j.dump(2) + "\n";
}

std::string RunReport::to_csv_text() const {
  std::ostringstream os;
  os << "section,kind,name,model,lhs,rhs_or_threshold,gap_or_margin,tol,pass,"
        "notes\n";
  os << std::setprecision(17);
  auto quote = [](std::string s) {
    for (auto& c : s)
      if (c == ',') c = ';';
    return s;
  };
  for (const auto& s : sections) {
    for (const auto& g : s.gaps)
      os << s.name << ",gap," << quote(g.name) << ",," << g.lhs << "," << g.rhs
         << "," << g.gap << "," << g.tol << "," << (g.pass ? 1 : 0) << ","
         << quote(g.witness) << "\n";
    for (const auto& f : s.fuzz)
      os << s.name << ",fuzz," << quote(f.suite) << ",,," << "" << ","
         << f.min_gap << "," << f.tol << "," << (f.pass ? 1 : 0) << ",samples="
         << f.samples << "\n";
    for (const auto& v : s.verdicts)
      os << s.name << ",verdict," << v.theorem_id << "," << quote(v.model) << ","
         << v.lhs << "," << v.threshold << "," << v.margin << ",,"
         << (verdict_ok(v) ? 1 : 0) << "," << quote(v.consistency) << "\n";
    for (const auto& r : s.analyze_rows) {
      std::ostringstream pt;
      pt << std::setprecision(17) << "(";
      for (std::size_t k = 0; k < r.point.size(); ++k) {
        if (k) pt << ";";
        pt << r.point[k].real() << (r.point[k].imag() < 0 ? "" : "+")
           << r.point[k].imag() << "i";
      }
      pt << ")";
      // lhs/rhs/gap columns carry R, |E|, |B| for point rows
      os << s.name << ",point," << pt.str() << ",," << r.scalar << ","
         << r.norm_E << "," << r.norm_B << ",,1,\n";
    }
  }
  return os.str();
}

void RunReport::print_human(std::ostream& os) const {
  os << "kcurv " << kToolVersion << "  seed=" << seed;
  if (!model_ref.empty()) os << "  model=" << model_ref;
  os << "\n";
  for (const auto& s : sections) {
    os << "== " << s.name << " ==\n";
    if (!s.model_flags.empty()) os << "  flags: " << s.model_flags << "\n";
    for (const auto& r : s.analyze_rows) {
      os << "  point (";
      for (std::size_t k = 0; k < r.point.size(); ++k) {
        if (k) os << ", ";
        os << r.point[k].real() << (r.point[k].imag() < 0 ? "-" : "+")
           << std::abs(r.point[k].imag()) << "i";
      }
      os << ")  R=" << r.scalar << "  |E|=" << r.norm_E << "  |B|=" << r.norm_B
         << "\n";
    }
    for (const auto& g : s.gaps) {
      os << "  [" << (g.skipped ? "SKIP" : (g.pass ? "ok" : "FAIL")) << "] "
         << g.name << "  gap=" << g.gap;
      if (!g.witness.empty()) os << "  (" << g.witness << ")";
      os << "\n";
    }
    for (const auto& f : s.fuzz)
      os << "  [" << (f.pass ? "ok" : "FAIL") << "] fuzz " << f.suite
         << " m=" << f.m << " samples=" << f.samples << " min_gap=" << f.min_gap
         << "\n";
    for (const auto& v : s.verdicts) {
      os << "  [" << (verdict_ok(v) ? "ok" : "FAIL") << "] " << v.theorem_id
         << " on " << v.model << ": " << v.consistency;
      if (v.applicable)
        os << "  lhs=" << v.lhs << " threshold=" << v.threshold
           << " margin=" << v.margin;
      if (!v.notes.empty()) os << "  (" << v.notes << ")";
      os << "\n";
    }
    if (include_timings)
      os << "  wall: " << std::fixed << std::setprecision(3) << s.wall_seconds
         << "s\n"
         << std::defaultfloat;
  }
  os << (all_pass() ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

}  // namespace kcurv
