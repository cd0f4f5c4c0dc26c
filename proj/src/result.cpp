#include "extlab/result.hpp"

#include <limits>

namespace extlab {

double safe_ratio(double lhs, double rhs, VerdictMode mode) {
  if (rhs == 0.0) {
    if (lhs == 0.0) return mode == VerdictMode::Forward ? 0.0 : 1.0;
    return std::numeric_limits<double>::infinity();
  }
  return lhs / rhs;
}

Trial& ExperimentResult::add(const std::string& label, double lhs, double rhs, VerdictMode mode, double tol) {
  Trial t;
  t.label = label;
  t.lhs = lhs;
  t.rhs = rhs;
  t.mode = mode;
  t.tol = tol;
  t.ratio = safe_ratio(lhs, rhs, mode);
  switch (mode) {
    case VerdictMode::Forward: t.pass = t.ratio <= 1.0 + tol; break;
    case VerdictMode::Reverse: t.pass = t.ratio >= 1.0 - tol; break;
    case VerdictMode::Identity: t.pass = std::abs(t.ratio - 1.0) <= tol; break;
  }
  if (std::isnan(t.ratio)) t.pass = false;
  trials.push_back(t);
  return trials.back();
}

Trial& ExperimentResult::add_check(const std::string& label, bool ok) {
  return add(label, ok ? 1.0 : 0.0, 1.0, VerdictMode::Identity, 0.0);
}

bool ExperimentResult::verdict() const {
  for (const auto& t : trials)
    if (!t.pass) return false;
  return true;
}

double ExperimentResult::max_ratio() const {
  double m = 0.0;
  for (const auto& t : trials)
    if (std::isfinite(t.ratio)) m = std::max(m, t.ratio);
  return m;
}

std::vector<std::string> ExperimentResult::failures() const {
  std::vector<std::string> out;
  for (const auto& t : trials)
    if (!t.pass) out.push_back(t.label);
  return out;
}

}  // namespace extlab
