#pragma once

#include <string>
#include <vector>

namespace qpmut {

// One line of the release checklist: a numbered check with a pass/fail flag
// and a short diagnostic (empty when everything held).
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The library-level checklist (checks 1-13): worked examples with hardcoded
// expected values plus seeded property sweeps.  Deterministic and
// self-contained: no files are read.
std::vector<CriterionResult> run_selftest_criteria();

// Check 14: runs `<cli_path> selftest --inner` twice and compares the raw
// bytes (and exit codes) of the two runs.  An empty path fails honestly.
CriterionResult selftest_determinism(const std::string& cli_path);

// Render one "ok/FAIL <id> <name>" line per result plus a summary line.
std::string format_selftest(const std::vector<CriterionResult>& rows);

// Number of failed rows.
int count_failures(const std::vector<CriterionResult>& rows);

}  // namespace qpmut
