#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gapcheck/geometry.hpp"
#include "gapcheck/operators.hpp"

namespace gapcheck {

// Parsed scenario configuration. The on-disk format is a plain-text file
// with [section] headers and `key = value` lines; lists are whitespace or
// comma separated; `#` starts a comment.
struct RunConfig {
  DomainSpec domain;
  double h = 0.0;
  int levels = 2;  // refinement levels used by Richardson-corrected checks
  Potential potential;
  std::vector<std::string> checks;
  double delta = 1e-2;
  std::size_t maxPairs = 200000;
  std::uint64_t seed = 0;
  std::vector<double> tList;
  bool sourceIsCenter = true;
  Vec2 sourceOffset = Vec2::Zero();  // absolute coordinates when not center
  double epsPrime = 0.0;
  std::string neumannDrift = "none";  // none | model-tan
  int threads = 1;
  std::map<std::string, double> tolOverrides;
};

const std::vector<std::string>& known_checks();

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace gapcheck
