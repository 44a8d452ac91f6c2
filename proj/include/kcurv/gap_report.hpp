#pragma once

#include <string>

namespace kcurv {

// Result of a single inequality / identity check. `gap = rhs - lhs` where
// `rhs` is the bound and `lhs` the attained value, so the check passes iff
// gap >= -tol. `witness` records the input (or a note such as a skip reason).
struct GapReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string witness;
};

inline GapReport make_gap_report(std::string name, double lhs, double rhs,
                                 double tol, std::string witness = {}) {
  GapReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  r.tol = tol;
  r.pass = r.gap >= -tol;
  r.witness = std::move(witness);
  return r;
}

inline GapReport make_skipped_report(std::string name, std::string reason) {
  GapReport r;
  r.name = std::move(name);
  r.pass = true;
  r.skipped = true;
  r.witness = std::move(reason);
  return r;
}

}  // namespace kcurv
