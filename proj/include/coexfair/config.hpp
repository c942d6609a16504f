#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "coexfair/params.hpp"

namespace coexfair {

/// Parse a scenario config: `key = value` lines under [wifi] / [laa] /
/// [scenario] / [solver] sections, `#` comments. Unknown keys are errors.
/// force_raw_table_td overrides the [laa] raw_table_td key (CLI flag).
Scenario parse_scenario(std::istream& in, bool force_raw_table_td = false);

Scenario load_scenario(const std::string& path, bool force_raw_table_td = false);

/// Fully resolved scenario as (key, value) pairs, defaults included, in the
/// order and spelling the parser accepts. Used to make output files
/// self-describing.
std::vector<std::pair<std::string, std::string>> scenario_echo(const Scenario& scenario);

}  // namespace coexfair
