#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "gapcheck/bounds.hpp"
#include "gapcheck/config.hpp"
#include "gapcheck/slack.hpp"

namespace gapcheck {

using json = nlohmann::json;

// Structured run output: the self-contained JSON document plus plot-ready
// field columns sampled at the admissible nodes of the finest grid.
struct RunReport {
  json doc;
  std::vector<Vec2> fieldCoords;
  std::map<std::string, std::vector<double>> fields;
  int exitCode = 0;  // 0 pass/marginal, 1 any fail, 2 config/compute error
};

json config_echo(const RunConfig& cfg);
json to_json(const SlackReport& rep);
json to_json(const BoundVerdict& v);

// Canonical serialization: sorted keys, two-space indent, shortest
// round-trip decimals (byte-stable across runs and thread counts).
std::string report_json(const RunReport& rep);
std::string table_csv(const RunReport& rep);
std::string field_csv(const RunReport& rep);

void emit(const RunReport& rep, const std::vector<std::string>& formats,
          const std::string& outDir);

}  // namespace gapcheck
