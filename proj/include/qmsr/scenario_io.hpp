#pragma once

#include <iosfwd>
#include <string>

#include "qmsr/engine.hpp"

namespace qmsr {

// Scenario files are line-oriented `key = value` text; `#` starts a comment.
//
//   graph = graphs/seven.graph       # path relative to the scenario file
//   graph.n = 7                      # ...or an inline graph
//   graph.edges = 1 2; 1 3; 2 1
//   initial_states = [1, 10, 1, 10, 1, 10, 1]
//   f = 1
//   fault_mode = total               # total | local
//   malicious = [1]
//   attack.kind = alternating        # constant | alternating | index_alternating | scripted
//   attack.params = [1, 10]
//   schedule.kind = deterministic    # synchronous | deterministic | probabilistic
//   schedule.table = 3 5 7; 2 4 6
//   schedule.window = 2
//   schedule.p = 0.5                 # or one value per agent: [0.5, 0.4, ...]
//   delay.kind = table               # none | constant | table | scripted
//   delay.bound = 8
//   delay.value = 2                  # constant
//   delay.table = 1 2 7 8; 1 3 8 7   # rows `j i even odd`
//   delay.script = 1 2 0 3 1         # rows `j i tau0 tau1 ...`, repeated cyclically
//   quantizer = probabilistic        # probabilistic | floor | ceil
//   horizon = 500
//   seed = 1
//
// Unknown or repeated keys are parse errors.

// Throws ParseError on malformed text and ConfigError when the parsed
// scenario violates a model constraint. `base_dir` resolves graph paths.
Scenario parse_scenario_text(const std::string& text, const std::string& base_dir = ".");
Scenario parse_scenario(const std::string& path);

// Self-contained text (inline graph) that parses back to an equal Scenario.
std::string serialize_scenario(const Scenario& s);

}  // namespace qmsr
