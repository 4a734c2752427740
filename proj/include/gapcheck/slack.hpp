#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gapcheck/geometry.hpp"

namespace gapcheck {

enum class Verdict { Pass, Marginal, Fail };

std::string to_string(Verdict v);

// Aggregate of a pairwise inequality check: minimum slack, where it is
// attained, and the low quantiles of the slack distribution.
struct SlackReport {
  std::string inequality;
  std::size_t pairCount = 0;
  std::size_t excludedPoleCount = 0;
  double minSlack = 0.0;
  Vec2 argminX = Vec2::Zero(), argminY = Vec2::Zero();
  double argminSeparation = 0.0;
  double q0 = 0.0, q1 = 0.0, q50 = 0.0;  // 0%, 1%, 50% quantiles
  double tolerance = 0.0;
  Verdict verdict = Verdict::Fail;
};

// Evaluates `slack(pairIndex)` over the pair list (optionally across
// threads; results are gathered in pair order so the reduction is
// deterministic) and aggregates. Pairs flagged by `exclude` are counted
// and skipped.
SlackReport reduce_slack(const std::string& inequality,
                         const std::vector<std::pair<int, int>>& pairs,
                         const GridDomain& grid, double tolerance, int threads,
                         const std::function<double(int, int)>& slack,
                         const std::function<bool(int, int)>& exclude);

// Default discretization tolerance 10 h (pi/D)^2.
double default_slack_tol(double h, double D);

}  // namespace gapcheck
