#pragma once

#include <iosfwd>
#include <string>

#include "qmsr/engine.hpp"

namespace qmsr {

// Header `k,agent,state,updated,malicious`, one row per (step, agent) in
// (k, agent) order. `updated` marks membership in U[k]; the last step has
// no update set and reports 0.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

// One-line human verdict for a single run.
std::string run_verdict(const RunResult& r);

void write_summary_table(std::ostream& out, const MonteCarloSummary& s);
std::string summary_json(const MonteCarloSummary& s, int indent = 2);

// Writes to `path` via a temporary file in the same directory and a rename.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace qmsr
