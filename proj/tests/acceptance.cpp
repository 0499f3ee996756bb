// Acceptance runner: executes every criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exit 0 iff all pass.

#include <cstdio>
#include <exception>

#include "rho/parallel.hpp"
#include "rho/suites.hpp"

namespace {

constexpr unsigned kSeed = 20260808;

const char* provenance_name(rho::Provenance p) {
  switch (p) {
    case rho::Provenance::Paper: return "paper";
    case rho::Provenance::Derived: return "derived";
    case rho::Provenance::Trivial: return "trivial";
  }
  return "?";
}

}  // namespace

int main() {
  std::vector<rho::CriterionResult> results;
  try {
    results = rho::run_acceptance(kSeed, rho::thread_cap());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: aborted by exception: %s\n", e.what());
    return 1;
  }

  int failed = 0;
  for (const rho::CriterionResult& c : results) {
    std::printf("[%2d] %s  %s\n", c.index, c.pass ? "PASS" : "FAIL", c.title.c_str());
    if (!c.pass) {
      ++failed;
      for (const rho::CheckRecord& r : c.records) {
        if (r.diagnostic || r.pass) continue;
        std::printf("      failed %s: computed=%.17g reference=%.17g tol=%.3g [%s]\n",
                    r.name.c_str(), r.computed, r.reference, r.tolerance,
                    provenance_name(r.provenance));
      }
    }
  }
  std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
