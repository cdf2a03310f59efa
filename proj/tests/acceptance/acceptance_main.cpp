#include <cstdlib>
#include <iostream>
#include <vector>

#include "qpmut/acceptance.hpp"

// Release gate: one pass/fail line per checklist item.  Check 14 drives the
// installed command-line binary (path in QPMUT_CLI) and fails honestly when
// it is missing.  Exit code = number of failed checks.
int main() {
  using namespace qpmut;
  std::vector<CriterionResult> rows = run_selftest_criteria();
  const char* cli = std::getenv("QPMUT_CLI");
  rows.push_back(selftest_determinism(cli ? cli : ""));
  std::cout << format_selftest(rows);
  return count_failures(rows);
}
