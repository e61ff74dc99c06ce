#pragma once

// Built-in verification battery backing the `check` run mode.  Each check is
// self-contained and deterministic; independent checks may run concurrently
// but results are always reported in battery order.

#include <string>
#include <vector>

namespace chemoflux {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;   // one-line evidence: measured value vs tolerance
  double seconds = 0.0;
};

struct CheckSuite {
  std::vector<CheckResult> results;

  bool all_passed() const {
    for (const auto& r : results) {
      if (!r.pass) return false;
    }
    return true;
  }
};

// Runs every check.  max_threads <= 1 runs serially; larger values run up to
// that many checks at once.
CheckSuite run_checks(int max_threads = 1);

// One line per check: "[ OK ]"/"[FAIL]" + name + detail.
std::string format_check_report(const CheckSuite& suite);

}  // namespace chemoflux
