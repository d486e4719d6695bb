#pragma once

// Named acceptance checks AC-1 .. AC-12. Each returns a pass/fail verdict
// with the measured quantities in `detail`; none of them throws on failure.

#include <string>
#include <vector>

namespace waring {

struct CriterionResult {
  std::string id;
  std::string title;
  bool exact = false;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<std::string> criterion_ids();
bool criterion_is_exact(const std::string& id);

// Throws std::invalid_argument for an unknown id. Exceptions raised by the
// computation itself are reported as a failed result.
CriterionResult run_criterion(const std::string& id, unsigned threads = 1);

// "PASS AC-3 <title> : <detail>" (or FAIL).
std::string format_result(const CriterionResult& result);

}  // namespace waring
