// Acceptance gate: runs every verification criterion and prints one
// PASS/FAIL line per criterion.  Exit status 0 iff all criteria pass.
//
// Usage: acceptance [criterion-id ...]
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "cylq/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) ids = cylq::suite_criteria("all");
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  bool all_pass = true;
  for (int id : ids) {
    cylq::CriterionResult r;
    try {
      r = cylq::run_criterion(id, threads);
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false,
           std::string("exception: ") + e.what(), 0.0};
    }
    all_pass = all_pass && r.pass;
    std::printf("[%s] criterion %2d: %-40s (%.1fs) %s\n",
                r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAIL");
  return all_pass ? 0 : 1;
}
