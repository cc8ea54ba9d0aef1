#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace kplus {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Suites: "all", "kernels" (family tables, superoperator identities, BKM,
// order relation), "posdef" (thresholds, bridge bounds, hyperbolic
// predicates), "closed-forms" (Fourier transforms), "channels" (monotonicity,
// contraction coefficients).  `inject_fault` corrupts one kernel evaluator to
// exercise the failure path.
std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            bool inject_fault = false,
                                            std::uint64_t seed = 42);

nlohmann::json acceptance_report(const std::vector<CriterionResult>& results);

}  // namespace kplus
