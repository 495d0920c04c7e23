#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qmsr/graph.hpp"
#include "qmsr/msr.hpp"
#include "qmsr/quantize.hpp"

namespace qmsr {

// Per-edge delays with period two: `even` applies at even k, `odd` at odd k.
struct ParityDelayRow {
  Node from;
  Node to;
  int even;
  int odd;
  bool operator==(const ParityDelayRow&) const = default;
};

// Per-edge cyclic delay sequence: tau(k) = cycle[k mod cycle.size()].
struct CyclicDelayRow {
  Node from;
  Node to;
  std::vector<int> cycle;
  bool operator==(const CyclicDelayRow&) const = default;
};

// tau_{to,from}[k]; must stay within [0, bound].
using DelayFunction = std::function<int(Node to, Node from, Time k)>;

class DelayModel {
 public:
  enum class Kind { kNone, kConstant, kTable, kScripted, kCustom };

  DelayModel() = default;  // no delay
  static DelayModel none() { return DelayModel(); }
  static DelayModel constant(int tau);
  // Edges not listed have zero delay. bound defaults to the largest entry.
  static DelayModel table(std::vector<ParityDelayRow> rows, std::optional<int> bound = std::nullopt);
  static DelayModel scripted(std::vector<CyclicDelayRow> rows, std::optional<int> bound = std::nullopt);
  // Arbitrary function; values above `bound` are reported as contract
  // violations when observed.
  static DelayModel custom(DelayFunction fn, int bound);

  Kind kind() const;
  int bound() const { return bound_; }

  // Delay on edge (from -> to) at time k. Self-observation is always current.
  int delay(Node to, Node from, Time k) const;

  const std::vector<ParityDelayRow>& table_rows() const;
  const std::vector<CyclicDelayRow>& scripted_rows() const;
  int constant_value() const;

  // Checks every listed edge exists in g. Throws ConfigError.
  void validate(const DirectedGraph& g) const;

  // Custom models never compare equal.
  bool operator==(const DelayModel& other) const;

 private:
  struct None {};
  struct Constant { int tau; };
  struct Table { std::vector<ParityDelayRow> rows; };
  struct Scripted { std::vector<CyclicDelayRow> rows; };
  struct Custom { DelayFunction fn; };

  std::variant<None, Constant, Table, Scripted, Custom> model_;
  int bound_ = 0;
};

std::string_view to_string(DelayModel::Kind kind);

// Sliding window over the last bound+1 state vectors x[k], ..., x[k-bound].
// The initial window holds times 0, -1, ..., -bound.
class History {
 public:
  // Pre-history equal to x0 at every negative time.
  History(StateVector x0, int bound);
  // window[d] is the state at time -d, d = 0..bound.
  explicit History(std::vector<StateVector> window);

  Time now() const { return now_; }
  int bound() const { return static_cast<int>(ring_.size()) - 1; }
  std::size_t width() const { return width_; }

  // Appends x[now+1] and evicts the oldest vector.
  void record(StateVector x);

  // Replaces entries of the current vector (used to commit attacker values).
  StateVector& current() { return slot(now_); }
  const StateVector& at(Time t) const;
  Value value(Time t, Node j) const { return at(t)[static_cast<std::size_t>(j - 1)]; }

  // Stacked extended state [x[k]; x[k-1]; ...; x[k-bound]].
  std::vector<Value> extended() const;

 private:
  StateVector& slot(Time t);
  const StateVector& slot(Time t) const;

  std::vector<StateVector> ring_;
  std::size_t width_ = 0;
  Time now_ = 0;
};

// Values x_j[k - tau_ij[k]] for every in-neighbor j of agent i, read at
// time k == h.now().
NeighborView delayed_view(const History& h, const DirectedGraph& g, const DelayModel& dm, Node i, Time k);

// Undelayed view: x_j[k] straight from a state vector.
NeighborView current_view(const StateVector& x, const DirectedGraph& g, Node i);

// Dense n x (bound+1)n matrix W_tau[k] for one step, built from each agent's
// retained neighbors. Rows of non-updating agents are unit vectors.
struct ExtendedWeightMatrix {
  int n = 0;
  int bound = 0;
  std::vector<double> entries;  // row-major

  double at(int row, int col) const { return entries[static_cast<std::size_t>(row) * cols() + col]; }
  int cols() const { return n * (bound + 1); }
  double row_sum(int row) const;
  double smallest_positive() const;
  double apply_row(int row, const std::vector<Value>& z) const;
};

struct AgentStepRecord {
  Node agent;
  bool updated;
  NeighborView retained;
};

ExtendedWeightMatrix assemble_extended_weights(const DirectedGraph& g, const DelayModel& dm, Time k,
                                               const std::vector<AgentStepRecord>& agents);

}  // namespace qmsr
