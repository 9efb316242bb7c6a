#pragma once
// Acceptance criteria: twelve end-to-end checks, each cross-validating two
// or more independent layers of the code base (exact enumeration, contour
// formulas, determinantal kernel, asymptotic quadratures, Monte Carlo).
// Every tolerance is pinned here, in code.

#include <string>
#include <vector>

namespace cylq {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // key numbers behind the verdict
  double seconds = 0.0;
};

// Run one criterion (1..12); throws std::invalid_argument on unknown id.
CriterionResult run_criterion(int id, int threads);

// Criteria ids belonging to a named suite: identities, exact, kernel,
// moments, asymptotics, mcmc, or all.  Throws on unknown names.
std::vector<int> suite_criteria(const std::string& suite);

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            int threads);

}  // namespace cylq
