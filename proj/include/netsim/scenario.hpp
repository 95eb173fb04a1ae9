#pragma once

#include <string>

#include "netsim/harness.hpp"

namespace netsim {

struct Scenario {
  SimConfig sim;
  BatchSpec batch;
};

// Parses scenario text (JSON; empty or whitespace-only means pure defaults).
// Unknown keys and invariant violations raise ConfigError with the key path;
// malformed JSON raises ConfigError with the line of the syntax error.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<scenario>");

Scenario load_scenario(const std::string& path);

// Full effective configuration as scenario text; loading it back reproduces
// the same configuration.
std::string scenario_text(const Scenario& scenario);

void write_scenario(const std::string& path, const Scenario& scenario);

}  // namespace netsim
