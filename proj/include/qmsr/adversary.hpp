#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qmsr/graph.hpp"
#include "qmsr/types.hpp"

namespace qmsr {

// What a malicious agent may look at before choosing its broadcast for step k:
// every current state and the update set drawn for k.
struct WorldSnapshot {
  Time k = 0;
  const StateVector* states = nullptr;
  const NodeSet* update_set = nullptr;
};

using AdaptiveAttack = std::function<Value(Node agent, Time k, const WorldSnapshot& world)>;

class AdversaryStrategy {
 public:
  enum class Kind { kConstant, kAlternating, kIndexAlternating, kScripted, kAdaptive };

  static AdversaryStrategy constant(Value v);
  static AdversaryStrategy alternating(Value even, Value odd);
  // Agent i broadcasts i at even k and i + offset at odd k.
  static AdversaryStrategy index_alternating(Value offset);
  // values[k] at step k; running past the end is a configuration error.
  static AdversaryStrategy scripted(std::vector<Value> values);
  static AdversaryStrategy adaptive(AdaptiveAttack attack);

  Kind kind() const { return kind_; }
  // Numeric parameters in declaration order (empty for adaptive).
  const std::vector<Value>& params() const { return params_; }

  bool operator==(const AdversaryStrategy& other) const {
    return kind_ != Kind::kAdaptive && kind_ == other.kind_ && params_ == other.params_;
  }

 private:
  friend Value adversary_value(const AdversaryStrategy&, Node, Time, const WorldSnapshot&);

  Kind kind_ = Kind::kConstant;
  std::vector<Value> params_;
  AdaptiveAttack attack_;
};

std::string_view to_string(AdversaryStrategy::Kind kind);
std::optional<AdversaryStrategy::Kind> parse_attack_kind(std::string_view text);
// Builds a non-adaptive strategy from its kind and numeric parameters.
AdversaryStrategy make_strategy(AdversaryStrategy::Kind kind, const std::vector<Value>& params);

// Broadcast of malicious `agent` for step k. Negative k gives the attacker's
// pre-history: periodic strategies extend backwards, scripted ones repeat
// their first value.
Value adversary_value(const AdversaryStrategy& strat, Node agent, Time k, const WorldSnapshot& world = {});

enum class FaultMode { kTotal, kLocal };

std::string_view to_string(FaultMode mode);
std::optional<FaultMode> parse_fault_mode(std::string_view text);

struct Placement {
  NodeSet malicious;
  int f = 0;
  FaultMode mode = FaultMode::kTotal;
  bool operator==(const Placement&) const = default;
};

// total: |M| <= f. local: every normal agent has at most f malicious
// in-neighbors.
bool validate_placement(const DirectedGraph& g, const Placement& p);

NodeSet normal_agents(int n, const NodeSet& malicious);

}  // namespace qmsr
