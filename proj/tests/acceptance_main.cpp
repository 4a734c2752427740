// Acceptance battery runner: one line per criterion, nonzero exit when any
// criterion fails.
#include <cstdio>
#include <exception>

#include "gapcheck/acceptance.hpp"

int main() {
  try {
    auto results = gapcheck::run_acceptance(4);
    int failed = 0;
    for (const auto& r : results) {
      std::printf("[%s] criterion %2d: %s -- %s\n", r.pass ? "PASS" : "FAIL",
                  r.id, r.title.c_str(), r.detail.c_str());
      std::fflush(stdout);
      if (!r.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n",
                static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance battery aborted: %s\n", e.what());
    return 2;
  }
}
