#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kobpath::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteConfig {
  double quad_tol = 1e-8;  // the tolerances have margin down to ~1e-12
};

/// Runs the built-in verification suite (one result per criterion),
/// printing a pass/fail line per criterion to `out` when non-null.
std::vector<CriterionResult> run_all(std::ostream* out,
                                     const SuiteConfig& cfg = {});

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace kobpath::acceptance
