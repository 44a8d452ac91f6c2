#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kcurv/fd.hpp"
#include "kcurv/gap_report.hpp"
#include "kcurv/inequalities.hpp"
#include "kcurv/pinching.hpp"

namespace kcurv {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchemaVersion = "1";

struct AnalyzeRow {
  ChartPoint point;
  double scalar = 0.0;
  double norm_E = 0.0;
  double norm_B = 0.0;
};

struct ReportSection {
  std::string name;
  std::string model_flags;  // optional flag summary for model sections
  std::vector<AnalyzeRow> analyze_rows;
  std::vector<GapReport> gaps;
  std::vector<FuzzSummary> fuzz;
  std::vector<PinchVerdict> verdicts;
  double wall_seconds = 0.0;
};

// Machine-readable run record. JSON output is deterministic for identical
// inputs; wall-clock timings are only emitted when `include_timings` is set,
// so default reports are byte-identical across reruns.
struct RunReport {
  std::uint64_t seed = 0;
  std::string model_ref;
  double tol_algebraic = 1e-12;
  double tol_fd = 1e-5;
  bool include_timings = false;
  std::vector<ReportSection> sections;

  bool all_pass() const;
  std::string to_json_text() const;
  std::string to_csv_text() const;
  void print_human(std::ostream& os) const;
};

void write_text_file(const std::string& path, const std::string& text);

}  // namespace kcurv
