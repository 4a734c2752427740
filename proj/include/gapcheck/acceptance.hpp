#pragma once

#include <string>
#include <vector>

namespace gapcheck {

// One entry of the acceptance battery: a numbered criterion with a
// pass/fail verdict and a one-line numeric summary.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

// Runs the full battery with pinned grids, seeds, and tolerances.
// `threads` bounds the worker count of pairwise reductions only; results
// are identical for any positive value.
std::vector<CriterionResult> run_acceptance(int threads);

}  // namespace gapcheck
