#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace confpoly {

/// One named verification check. `margin` is the signed distance to the
/// pass/fail boundary in the check's own units (non-negative means pass),
/// `tolerance` is the threshold the margin was measured against.
struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double margin = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

/// Suites accepted by the CLI: lemmas, dominance, crofton, alpha, knotproxy,
/// all. run_suite additionally accepts "sampler" (the sampler-correctness
/// group, always part of "all"). sample_scale multiplies every Monte Carlo
/// budget (floored at a usable minimum) so CI can trade accuracy for time;
/// the default budgets are the ones the acceptance thresholds are tuned for.
SuiteResult run_suite(const std::string& suite, uint64_t seed,
                      double sample_scale = 1.0);

const std::vector<std::string>& cli_suite_names();

}  // namespace confpoly
