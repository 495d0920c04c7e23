#pragma once

#include <string_view>
#include <vector>

#include "qmsr/graph.hpp"
#include "qmsr/rng.hpp"

namespace qmsr {

// Which normal agents update at each step.
class Schedule {
 public:
  enum class Kind { kSynchronous, kDeterministic, kProbabilistic };

  Schedule() = default;  // synchronous
  static Schedule synchronous() { return Schedule(); }
  // U[k] = table[k mod table.size()]; `window` is the coverage bound k-bar.
  static Schedule deterministic(std::vector<NodeSet> table, int window);
  // Same probability for every normal agent.
  static Schedule probabilistic(double p);
  // per_agent[i-1] is p_i; entries for malicious agents are ignored.
  static Schedule probabilistic(std::vector<double> per_agent);

  Kind kind() const { return kind_; }
  const std::vector<NodeSet>& table() const { return table_; }
  int window() const { return window_; }
  bool uniform_probability() const { return uniform_; }
  double probability(Node i) const;
  const std::vector<double>& probabilities() const { return p_; }

  bool operator==(const Schedule&) const = default;

 private:
  Kind kind_ = Kind::kSynchronous;
  std::vector<NodeSet> table_;
  int window_ = 1;
  std::vector<double> p_;
  bool uniform_ = true;
};

std::string_view to_string(Schedule::Kind kind);

// Update set for step k. Probabilistic schedules draw one Bernoulli per
// normal agent in increasing id order.
NodeSet update_set(const Schedule& s, const NodeSet& normals, Time k, RandomStream& rng);

// True iff every `window` consecutive steps of the periodic table jointly
// cover every normal agent.
bool validate_coverage(const Schedule& s, int window, const NodeSet& normals);

// Throws ConfigError if the schedule is inconsistent with the normal set
// (table names a non-normal agent, coverage fails, p outside (0, 1]).
void validate_schedule(const Schedule& s, const NodeSet& normals, int n);

}  // namespace qmsr
