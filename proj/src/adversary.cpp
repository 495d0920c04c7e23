#include "qmsr/adversary.hpp"

#include <algorithm>

#include "qmsr/errors.hpp"

namespace qmsr {

namespace {

bool is_even(Time k) { return k % 2 == 0; }

}  // namespace

AdversaryStrategy AdversaryStrategy::constant(Value v) {
  AdversaryStrategy s;
  s.kind_ = Kind::kConstant;
  s.params_ = {v};
  return s;
}

AdversaryStrategy AdversaryStrategy::alternating(Value even, Value odd) {
  AdversaryStrategy s;
  s.kind_ = Kind::kAlternating;
  s.params_ = {even, odd};
  return s;
}

AdversaryStrategy AdversaryStrategy::index_alternating(Value offset) {
  AdversaryStrategy s;
  s.kind_ = Kind::kIndexAlternating;
  s.params_ = {offset};
  return s;
}

AdversaryStrategy AdversaryStrategy::scripted(std::vector<Value> values) {
  if (values.empty()) throw ConfigError("scripted attack needs at least one value");
  AdversaryStrategy s;
  s.kind_ = Kind::kScripted;
  s.params_ = std::move(values);
  return s;
}

AdversaryStrategy AdversaryStrategy::adaptive(AdaptiveAttack attack) {
  AdversaryStrategy s;
  s.kind_ = Kind::kAdaptive;
  s.attack_ = std::move(attack);
  return s;
}

std::string_view to_string(AdversaryStrategy::Kind kind) {
  switch (kind) {
    case AdversaryStrategy::Kind::kConstant: return "constant";
    case AdversaryStrategy::Kind::kAlternating: return "alternating";
    case AdversaryStrategy::Kind::kIndexAlternating: return "index_alternating";
    case AdversaryStrategy::Kind::kScripted: return "scripted";
    case AdversaryStrategy::Kind::kAdaptive: return "adaptive";
  }
  return "?";
}

std::optional<AdversaryStrategy::Kind> parse_attack_kind(std::string_view text) {
  for (auto kind : {AdversaryStrategy::Kind::kConstant, AdversaryStrategy::Kind::kAlternating,
                    AdversaryStrategy::Kind::kIndexAlternating, AdversaryStrategy::Kind::kScripted}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

AdversaryStrategy make_strategy(AdversaryStrategy::Kind kind, const std::vector<Value>& params) {
  const auto expect = [&](std::size_t count) {
    if (params.size() != count) {
      throw ConfigError("attack.kind = " + std::string(to_string(kind)) + " takes " + std::to_string(count) +
                        " parameter(s), got " + std::to_string(params.size()));
    }
  };
  switch (kind) {
    case AdversaryStrategy::Kind::kConstant: expect(1); return AdversaryStrategy::constant(params[0]);
    case AdversaryStrategy::Kind::kAlternating:
      expect(2);
      return AdversaryStrategy::alternating(params[0], params[1]);
    case AdversaryStrategy::Kind::kIndexAlternating:
      expect(1);
      return AdversaryStrategy::index_alternating(params[0]);
    case AdversaryStrategy::Kind::kScripted: return AdversaryStrategy::scripted(params);
    case AdversaryStrategy::Kind::kAdaptive: break;
  }
  throw ConfigError("adaptive attacks cannot be built from parameters");
}

Value adversary_value(const AdversaryStrategy& strat, Node agent, Time k, const WorldSnapshot& world) {
  const auto& p = strat.params_;
  switch (strat.kind_) {
    case AdversaryStrategy::Kind::kConstant: return p[0];
    case AdversaryStrategy::Kind::kAlternating: return is_even(k) ? p[0] : p[1];
    case AdversaryStrategy::Kind::kIndexAlternating: return is_even(k) ? agent : agent + p[0];
    case AdversaryStrategy::Kind::kScripted:
      if (k < 0) return p.front();
      if (static_cast<std::size_t>(k) >= p.size()) {
        throw ConfigError("scripted attack exhausted at k=" + std::to_string(k) + " (" +
                          std::to_string(p.size()) + " values)");
      }
      return p[static_cast<std::size_t>(k)];
    case AdversaryStrategy::Kind::kAdaptive: return strat.attack_(agent, k, world);
  }
  return 0;
}

std::string_view to_string(FaultMode mode) { return mode == FaultMode::kTotal ? "total" : "local"; }

std::optional<FaultMode> parse_fault_mode(std::string_view text) {
  if (text == "total") return FaultMode::kTotal;
  if (text == "local") return FaultMode::kLocal;
  return std::nullopt;
}

bool validate_placement(const DirectedGraph& g, const Placement& p) {
  if (p.f < 0) return false;
  for (Node m : p.malicious)
    if (!g.contains(m)) throw InputError("malicious agent " + std::to_string(m) + " out of range");
  NodeSet m = p.malicious;
  std::sort(m.begin(), m.end());
  if (p.mode == FaultMode::kTotal) return static_cast<int>(m.size()) <= p.f;
  for (Node i : normal_agents(g.size(), m)) {
    const auto& nbrs = g.in_neighbors(i);
    const auto bad = std::count_if(nbrs.begin(), nbrs.end(),
                                   [&](Node j) { return std::binary_search(m.begin(), m.end(), j); });
    if (bad > p.f) return false;
  }
  return true;
}

NodeSet normal_agents(int n, const NodeSet& malicious) {
  NodeSet normals;
  for (Node i = 1; i <= n; ++i)
    if (std::find(malicious.begin(), malicious.end(), i) == malicious.end()) normals.push_back(i);
  return normals;
}

}  // namespace qmsr
