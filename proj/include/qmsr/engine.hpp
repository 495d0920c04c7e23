#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmsr/adversary.hpp"
#include "qmsr/channel.hpp"
#include "qmsr/graph.hpp"
#include "qmsr/quantize.hpp"
#include "qmsr/rng.hpp"
#include "qmsr/schedule.hpp"

namespace qmsr {

struct Scenario {
  DirectedGraph graph{1, {}};
  Placement placement;
  AdversaryStrategy strategy = AdversaryStrategy::constant(0);
  Schedule schedule;
  DelayModel delay;
  QuantizerKind quantizer = QuantizerKind::kProbabilistic;
  StateVector x0;
  Time horizon = 500;
  std::uint64_t seed = 1;

  NodeSet normals() const { return normal_agents(graph.size(), placement.malicious); }
  bool operator==(const Scenario&) const = default;
};

// 10 * n * (bound + 1) * window for deterministic schedules, floored at 500.
Time default_horizon(const Scenario& s);

// Throws ConfigError naming the first violated constraint.
void validate_scenario(const Scenario& s);

// x[k] for k = 0..K; update_sets[k] = U[k] for k = 0..K-1; broadcasts[k]
// holds the attackers' values for step k, in increasing id order.
struct Trajectory {
  NodeSet malicious;
  std::vector<StateVector> states;
  std::vector<NodeSet> update_sets;
  std::vector<StateVector> broadcasts;

  Time last_step() const { return static_cast<Time>(states.size()) - 1; }
  bool operator==(const Trajectory&) const = default;
};

// Per-run tallies of the runtime checks on the QW-MSR guarantees.
struct InvariantReport {
  std::int64_t envelope_violations = 0;    // windowed max grew or min shrank
  std::int64_t absorption_violations = 0;  // left consensus after the window agreed
  std::int64_t weight_violations = 0;      // extended weight matrix audit failed
  std::int64_t total() const { return envelope_violations + absorption_violations + weight_violations; }
};

struct RunResult {
  bool safety_ok = true;
  bool agreed = false;
  std::optional<Time> agreement_time;  // k_a
  std::optional<Value> final_value;
  Value safety_lo = 0;
  Value safety_hi = 0;
  bool frozen = false;  // no normal agent ever left its initial value
  Time steps = 0;
  std::uint64_t seed = 0;
  StateVector final_state;
  InvariantReport invariants;
};

struct RunOptions {
  // Throw ContractViolation on the first invariant breach instead of counting.
  bool strict = false;
  // Build W_tau[k] every step and check it against the performed update.
  bool audit_weights = false;
  bool record_trajectory = true;
  // Stop once consensus has held for bound+1 further steps.
  bool stop_on_agreement = true;
};

// Step-by-step QW-MSR simulation of one scenario.
class Simulation {
 public:
  explicit Simulation(Scenario s, RunOptions options = {});

  const Scenario& scenario() const { return s_; }
  const NodeSet& normals() const { return normals_; }
  Time now() const { return history_.now(); }
  const StateVector& state() const { return history_.at(history_.now()); }
  const History& history() const { return history_; }
  // U[now()], already drawn so attackers can see it.
  const NodeSet& pending_update_set() const { return update_set_; }
  const InvariantReport& invariants() const { return invariants_; }
  const Trajectory& trajectory() const { return trajectory_; }
  Trajectory take_trajectory() { return std::move(trajectory_); }

  // Advances from k to k+1: every normal agent in U[k] applies the filtered,
  // quantized update to its (possibly delayed) view of step-k values, then
  // all new values commit together along with the attackers' k+1 broadcasts.
  void step();

  bool normals_agree() const;

 private:
  NeighborView view_for(Node i) const;
  Value window_max() const;
  Value window_min() const;
  bool window_agrees() const;
  StateVector broadcasts_for(Time k, StateVector& states);
  void audit_weights(const std::vector<AgentStepRecord>& records, const StateVector& next);
  void report(const std::string& what, std::int64_t& counter);

  Scenario s_;
  RunOptions options_;
  NodeSet normals_;
  bool delayed_;
  History history_;
  NodeSet update_set_;
  std::vector<RandomStream> quantizer_rngs_;  // indexed by agent - 1
  RandomStream schedule_rng_;
  InvariantReport invariants_;
  Trajectory trajectory_;
};

std::pair<Trajectory, RunResult> run(const Scenario& s, RunOptions options = {});

// Every normal state at every recorded step lies in the interval spanned by
// the normal initial values (which equals the delayed interval, since the
// pre-history repeats x[0]).
bool check_safety(const Trajectory& t, const NodeSet& normals, int bound);

struct MonteCarloSummary {
  int runs = 0;
  int agreed = 0;
  double agreement_rate = 0.0;
  std::optional<Time> ka_min, ka_median, ka_max;
  std::map<Value, int> final_values;  // histogram over agreed runs
  int safety_violations = 0;
  InvariantReport invariants;         // summed over runs
  std::vector<RunResult> results;     // in seed order
};

// Runs seeds seed, seed+1, ..., seed+n_runs-1 in parallel (OpenMP). The
// summary does not depend on thread count or completion order.
MonteCarloSummary monte_carlo(const Scenario& s, int n_runs, RunOptions options = {.record_trajectory = false});

// Single-threaded reference for monte_carlo.
MonteCarloSummary monte_carlo_serial(const Scenario& s, int n_runs,
                                     RunOptions options = {.record_trajectory = false});

MonteCarloSummary summarize(std::vector<RunResult> results);

}  // namespace qmsr
