#pragma once

#include "gapcheck/config.hpp"
#include "gapcheck/report.hpp"

namespace gapcheck {

// Executes the configured check set in dependency order. Module errors are
// recorded per check; independent checks still run. The report is
// deterministic for a fixed config (seed included).
RunReport run(const RunConfig& cfg);

// Node index closest to a point.
int nearest_node(const GridDomain& grid, const Vec2& p);
Vec2 centroid(const DomainSpec& spec);

}  // namespace gapcheck
