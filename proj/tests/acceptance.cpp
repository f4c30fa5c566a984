// Acceptance gate: runs every verification suite and prints exactly one
// PASS/FAIL line per criterion. Exit status is nonzero if any suite fails.

#include <cstdio>

#include "indeplab/verify.hpp"

int main() {
  bool all_pass = true;
  for (int id = 1; id <= 9; ++id) {
    indeplab::CriterionResult r = indeplab::run_criterion(id);
    all_pass = all_pass && r.pass;
    std::printf("criterion %d (%s): %s — %llu checks%s%s\n", r.id, r.name.c_str(),
                r.pass ? "PASS" : "FAIL", static_cast<unsigned long long>(r.checks),
                r.detail.empty() ? "" : " — ", r.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
