// Invariant suites behind `verify` and the acceptance runner: orthogonality,
// Gauss sums, Bessel contracts, the functional equation, cross-method gamma
// equality, the local chain, the xi identity, base change, and the
// two-models determinism check.
#pragma once

#include <string>
#include <vector>

#include "cuspgamma/config.hpp"

namespace cuspgamma {

struct CaseResult {
  std::string name;
  bool pass = false;
  double err = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::string size_class;
  u64 seed = 0;
  std::vector<CaseResult> cases;
  bool pass = true;
  double max_err = 0.0;

  void add(CaseResult r);
};

// orthogonality | gauss | bessel | functional-eq | finite-vs-closed | chain |
// xi | base-change; size_class quick | full.
SuiteReport run_suite(const std::string& suite, const std::string& size_class, const RunConfig& cfg);
std::vector<std::string> suite_names();

// Rebuilds the towers with a different primitive polynomial and checks that
// gamma values agree for corresponding orbit labels.
SuiteReport run_determinism_check(const RunConfig& cfg);

}  // namespace cuspgamma
