#pragma once

#include <string>
#include <vector>

namespace regdyn {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool correct = false;
  double elapsed_ms = 0;
  double limit_ms = 0;
  std::string detail;

  bool passed() const { return correct && elapsed_ms <= limit_ms; }
};

/// The thirteen acceptance checks, each timed against its limit.
/// Errors inside a check are caught and reported as failures.
std::vector<CriterionResult> run_acceptance();

/// "[PASS]  3  name  (12.3 ms / 1000 ms)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace regdyn
