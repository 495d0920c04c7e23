#include "qmsr/engine.hpp"

#include <algorithm>
#include <cmath>

#include "qmsr/errors.hpp"

namespace qmsr {

namespace {

std::vector<StateVector> initial_window(const Scenario& s) {
  const int bound = s.delay.bound();
  std::vector<StateVector> window(static_cast<std::size_t>(bound) + 1, s.x0);
  // Attackers script their own past; adaptive ones have nothing to look at
  // before time 0 and simply repeat x[0].
  if (s.strategy.kind() != AdversaryStrategy::Kind::kAdaptive) {
    for (int d = 1; d <= bound; ++d)
      for (Node m : s.placement.malicious)
        window[static_cast<std::size_t>(d)][static_cast<std::size_t>(m - 1)] = adversary_value(s.strategy, m, -d);
  }
  return window;
}

bool all_equal_on(const StateVector& x, const NodeSet& nodes) {
  if (nodes.empty()) return true;
  const Value first = x[static_cast<std::size_t>(nodes.front() - 1)];
  return std::all_of(nodes.begin(), nodes.end(),
                     [&](Node i) { return x[static_cast<std::size_t>(i - 1)] == first; });
}

}  // namespace

Time default_horizon(const Scenario& s) {
  const Time window = s.schedule.kind() == Schedule::Kind::kDeterministic ? s.schedule.window() : 1;
  const Time h = 10 * static_cast<Time>(s.graph.size()) * (s.delay.bound() + 1) * window;
  return std::max<Time>(500, h);
}

void validate_scenario(const Scenario& s) {
  const int n = s.graph.size();
  if (s.x0.size() != static_cast<std::size_t>(n)) {
    throw ConfigError("initial_states has " + std::to_string(s.x0.size()) + " entries but the graph has " +
                      std::to_string(n) + " nodes");
  }
  if (s.placement.f < 0) throw ConfigError("f must be nonnegative");
  NodeSet m = s.placement.malicious;
  std::sort(m.begin(), m.end());
  if (std::adjacent_find(m.begin(), m.end()) != m.end()) throw ConfigError("malicious list has duplicates");
  for (Node i : m)
    if (!s.graph.contains(i)) throw ConfigError("malicious agent " + std::to_string(i) + " is not a node");
  if (!validate_placement(s.graph, s.placement)) {
    throw ConfigError(std::string("malicious set violates f-") + std::string(to_string(s.placement.mode)) +
                      " bound");
  }
  validate_schedule(s.schedule, s.normals(), n);
  s.delay.validate(s.graph);
  if (s.horizon < 0) throw ConfigError("horizon must be nonnegative");
}

Simulation::Simulation(Scenario s, RunOptions options)
    : s_(std::move(s)),
      options_(options),
      normals_((validate_scenario(s_), s_.normals())),
      delayed_(s_.delay.kind() != DelayModel::Kind::kNone),
      history_(initial_window(s_)),
      schedule_rng_(s_.seed, RandomStream::Purpose::kSchedule, 0) {
  quantizer_rngs_.reserve(static_cast<std::size_t>(s_.graph.size()));
  for (Node i = 1; i <= s_.graph.size(); ++i)
    quantizer_rngs_.emplace_back(s_.seed, RandomStream::Purpose::kQuantizer, static_cast<std::uint32_t>(i));
  update_set_ = update_set(s_.schedule, normals_, 0, schedule_rng_);

  if (options_.record_trajectory) {
    trajectory_.malicious = s_.placement.malicious;
    std::sort(trajectory_.malicious.begin(), trajectory_.malicious.end());
    trajectory_.states.push_back(s_.x0);
    StateVector b;
    for (Node m : trajectory_.malicious) b.push_back(s_.x0[static_cast<std::size_t>(m - 1)]);
    trajectory_.broadcasts.push_back(std::move(b));
  }
}

bool Simulation::normals_agree() const { return all_equal_on(state(), normals_); }

NeighborView Simulation::view_for(Node i) const {
  if (!delayed_) return current_view(state(), s_.graph, i);
  return delayed_view(history_, s_.graph, s_.delay, i, now());
}

Value Simulation::window_max() const {
  Value hi = std::numeric_limits<Value>::min();
  for (Time t = now() - history_.bound(); t <= now(); ++t)
    for (Node i : normals_) hi = std::max(hi, history_.value(t, i));
  return hi;
}

Value Simulation::window_min() const {
  Value lo = std::numeric_limits<Value>::max();
  for (Time t = now() - history_.bound(); t <= now(); ++t)
    for (Node i : normals_) lo = std::min(lo, history_.value(t, i));
  return lo;
}

bool Simulation::window_agrees() const { return window_min() == window_max(); }

StateVector Simulation::broadcasts_for(Time k, StateVector& states) {
  const WorldSnapshot world{k, &states, &update_set_};
  StateVector values;
  NodeSet m = s_.placement.malicious;
  std::sort(m.begin(), m.end());
  for (Node i : m) values.push_back(adversary_value(s_.strategy, i, k, world));
  for (std::size_t idx = 0; idx < m.size(); ++idx) states[static_cast<std::size_t>(m[idx] - 1)] = values[idx];
  return values;
}

void Simulation::report(const std::string& what, std::int64_t& counter) {
  ++counter;
  if (options_.strict) throw ContractViolation(what + " at k=" + std::to_string(now()));
}

void Simulation::audit_weights(const std::vector<AgentStepRecord>& records, const StateVector& next) {
  const auto w = assemble_extended_weights(s_.graph, s_.delay, now(), records);
  const auto z = history_.extended();
  const double beta = 1.0 / (s_.graph.max_in_degree() + 1);
  bool ok = w.smallest_positive() >= beta - 1e-12;
  for (const auto& r : records) {
    const int row = r.agent - 1;
    if (std::abs(w.row_sum(row) - 1.0) > 1e-9) ok = false;
    const double y = w.apply_row(row, z);
    const Value got = next[static_cast<std::size_t>(row)];
    if (!(got >= std::floor(y - 1e-9) && got <= std::ceil(y + 1e-9))) ok = false;
  }
  if (!ok) report("extended weight matrix disagrees with the update", invariants_.weight_violations);
}

void Simulation::step() {
  const Time k = now();
  const StateVector& x = state();
  StateVector next = x;
  const Value hi_before = window_max();
  const Value lo_before = window_min();
  const bool absorbed_before = hi_before == lo_before && !normals_.empty();

  std::vector<AgentStepRecord> records;
  for (Node i : update_set_) {
    const auto idx = static_cast<std::size_t>(i - 1);
    const NeighborView view = view_for(i);
    next[idx] = normal_update(x[idx], view, s_.placement.f, s_.quantizer, quantizer_rngs_[idx]);
    if (options_.audit_weights) records.push_back({i, true, msr_filter(x[idx], view, s_.placement.f)});
  }
  if (options_.audit_weights) {
    for (Node i : normals_)
      if (!std::binary_search(update_set_.begin(), update_set_.end(), i)) records.push_back({i, false, {}});
    audit_weights(records, next);
  }

  const NodeSet performed = std::move(update_set_);
  update_set_ = update_set(s_.schedule, normals_, k + 1, schedule_rng_);
  StateVector broadcasts = broadcasts_for(k + 1, next);
  history_.record(next);

  if (options_.record_trajectory) {
    trajectory_.update_sets.push_back(performed);
    trajectory_.states.push_back(state());
    trajectory_.broadcasts.push_back(std::move(broadcasts));
  }

  if (window_max() > hi_before || window_min() < lo_before) {
    report("normal envelope expanded", invariants_.envelope_violations);
  }
  if (absorbed_before) {
    for (Node i : normals_) {
      if (history_.value(now(), i) != hi_before) {
        report("normal agents left consensus", invariants_.absorption_violations);
        break;
      }
    }
  }
}

std::pair<Trajectory, RunResult> run(const Scenario& s, RunOptions options) {
  Simulation sim(s, options);
  const NodeSet& normals = sim.normals();
  RunResult result;
  result.seed = s.seed;
  if (!normals.empty()) {
    result.safety_lo = result.safety_hi = s.x0[static_cast<std::size_t>(normals.front() - 1)];
    for (Node i : normals) {
      result.safety_lo = std::min(result.safety_lo, s.x0[static_cast<std::size_t>(i - 1)]);
      result.safety_hi = std::max(result.safety_hi, s.x0[static_cast<std::size_t>(i - 1)]);
    }
  }
  result.frozen = true;

  std::optional<Time> streak;
  const auto observe = [&] {
    const StateVector& x = sim.state();
    for (Node i : normals) {
      const Value v = x[static_cast<std::size_t>(i - 1)];
      if (v < result.safety_lo || v > result.safety_hi) result.safety_ok = false;
      if (v != s.x0[static_cast<std::size_t>(i - 1)]) result.frozen = false;
    }
    if (sim.normals_agree()) {
      if (!streak) streak = sim.now();
    } else {
      streak.reset();
    }
  };

  observe();
  const Time confirm = s.delay.bound() + 1;
  while (sim.now() < s.horizon) {
    if (options.stop_on_agreement && streak && sim.now() - *streak >= confirm) break;
    sim.step();
    observe();
  }

  result.steps = sim.now();
  result.final_state = sim.state();
  result.agreed = sim.normals_agree();
  if (result.agreed && streak) {
    result.agreement_time = streak;
    if (!normals.empty()) result.final_value = result.final_state[static_cast<std::size_t>(normals.front() - 1)];
  }
  result.invariants = sim.invariants();
  return {sim.take_trajectory(), result};
}

bool check_safety(const Trajectory& t, const NodeSet& normals, int bound) {
  if (t.states.empty()) throw InputError("check_safety: empty trajectory");
  if (bound < 0) throw InputError("check_safety: negative delay bound");
  if (normals.empty()) return true;
  // With x[k] = x[0] for k < 0 the extended initial vector spans the same
  // interval as x[0], whatever the bound.
  const StateVector& x0 = t.states.front();
  Value lo = x0[static_cast<std::size_t>(normals.front() - 1)];
  Value hi = lo;
  for (Node i : normals) {
    lo = std::min(lo, x0[static_cast<std::size_t>(i - 1)]);
    hi = std::max(hi, x0[static_cast<std::size_t>(i - 1)]);
  }
  for (const auto& x : t.states) {
    for (Node i : normals) {
      const Value v = x[static_cast<std::size_t>(i - 1)];
      if (v < lo || v > hi) return false;
    }
  }
  return true;
}

}  // namespace qmsr
