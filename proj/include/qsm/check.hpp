#pragma once

#include <string>
#include <vector>

namespace qsm {

/// One named verification outcome.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline bool allPassed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

} // namespace qsm
