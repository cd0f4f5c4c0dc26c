#pragma once

#include "extlab/common.hpp"

#include <json.hpp>

namespace extlab {

enum class VerdictMode {
  Forward,   // ratio <= 1 + tol
  Reverse,   // ratio >= 1 - tol
  Identity,  // |ratio - 1| <= tol
};

struct Trial {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  VerdictMode mode = VerdictMode::Forward;
  double tol = 0.05;
  bool pass = false;
};

// 0/0 counts as ratio 0 (trivially satisfied forward checks) unless the mode is Identity.
double safe_ratio(double lhs, double rhs, VerdictMode mode);

struct ExperimentResult {
  std::string id;
  std::uint64_t seed = 0;
  std::vector<Trial> trials;
  nlohmann::json metadata = nlohmann::json::object();
  double wall_seconds = 0.0;

  Trial& add(const std::string& label, double lhs, double rhs, VerdictMode mode, double tol);
  // Boolean property recorded as a trial (lhs=rhs=1 on success, lhs=2,rhs=1 otherwise).
  Trial& add_check(const std::string& label, bool ok);
  bool verdict() const;
  double max_ratio() const;
  std::vector<std::string> failures() const;
};

}  // namespace extlab
