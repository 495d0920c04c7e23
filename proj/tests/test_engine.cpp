#include <doctest.h>

#include "qmsr/engine.hpp"
#include "qmsr/errors.hpp"

using namespace qmsr;

namespace {

const char* kRobust22 = QMSR_SCENARIO_DIR "/graphs/seven_node_22robust.graph";
const char* kStrong = QMSR_SCENARIO_DIR "/graphs/seven_node_strong.graph";

Scenario alternating_attack(const DirectedGraph& g) {
  Scenario s;
  s.graph = g;
  s.placement = {{1}, 1, FaultMode::kTotal};
  s.strategy = AdversaryStrategy::alternating(1, 10);
  s.x0 = {1, 10, 1, 10, 1, 10, 1};
  s.horizon = 500;
  return s;
}

Scenario five_node(QuantizerKind kind) {
  Scenario s;
  s.graph = DirectedGraph(5, {{2, 1}, {5, 1}, {3, 2}, {5, 2}, {1, 3}, {5, 3}, {1, 4}, {3, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}});
  s.placement = {{5}, 1, FaultMode::kTotal};
  s.quantizer = kind;
  if (kind == QuantizerKind::kCeil) {
    s.strategy = AdversaryStrategy::constant(5);
    s.x0 = {2, 2, 2, 3, 5};
  } else {
    s.strategy = AdversaryStrategy::constant(1);
    s.x0 = {4, 4, 4, 3, 1};
  }
  return s;
}

Scenario k6_counterexample() {
  Scenario s;
  s.graph = DirectedGraph::complete(6);
  s.placement = {{1, 2}, 2, FaultMode::kTotal};
  s.strategy = AdversaryStrategy::index_alternating(6);
  s.schedule = Schedule::deterministic({{3, 4}, {5, 6}}, 2);
  s.x0 = {1, 2, 3, 4, 5, 6};
  return s;
}

bool frozen_everywhere(const Trajectory& t, const NodeSet& normals) {
  for (const auto& x : t.states)
    for (Node i : normals)
      if (x[static_cast<std::size_t>(i - 1)] != t.states.front()[static_cast<std::size_t>(i - 1)]) return false;
  return true;
}

const RunOptions kFull{.strict = true, .audit_weights = true, .record_trajectory = true, .stop_on_agreement = false};

}  // namespace

TEST_CASE("ceil quantizer freezes an attack-free line") {
  Scenario s;
  s.graph = DirectedGraph::line(6);
  s.quantizer = QuantizerKind::kCeil;
  s.x0 = {1, 2, 3, 4, 5, 6};
  const auto [t, r] = run(s, kFull);
  CHECK(t.states.size() == 501);
  CHECK(frozen_everywhere(t, s.normals()));
  CHECK(r.frozen);
  CHECK_FALSE(r.agreed);
}

TEST_CASE("deterministic quantizers freeze the five-node example") {
  for (auto kind : {QuantizerKind::kCeil, QuantizerKind::kFloor}) {
    const auto s = five_node(kind);
    const auto [t, r] = run(s, kFull);
    CHECK(frozen_everywhere(t, s.normals()));
    CHECK(r.safety_ok);
    CHECK(r.invariants.total() == 0);
  }
}

TEST_CASE("a lone agent never moves") {
  Scenario s;
  s.graph = DirectedGraph(1, {});
  s.x0 = {42};
  s.horizon = 20;
  const auto [t, r] = run(s, kFull);
  CHECK(r.agreed);
  CHECK(r.final_value == 42);
  for (const auto& x : t.states) CHECK(x == StateVector{42});
}

TEST_CASE("synchronous QW-MSR on the (2,2)-robust graph agrees safely") {
  const auto s = alternating_attack(load_graph(kRobust22));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto scenario = s;
    scenario.seed = seed;
    const auto [t, r] = run(scenario, {.strict = true, .audit_weights = true});
    CHECK(r.agreed);
    REQUIRE(r.final_value.has_value());
    CHECK(*r.final_value >= 1);
    CHECK(*r.final_value <= 10);
    CHECK(r.safety_ok);
    CHECK(check_safety(t, s.normals(), 0));
    CHECK(r.steps == *r.agreement_time + 1);
  }
}

TEST_CASE("the non-robust graph splits into the two initial groups") {
  const auto s = alternating_attack(load_graph(kStrong));
  const auto [t, r] = run(s, kFull);
  CHECK_FALSE(r.agreed);
  for (Node i : {2, 4, 6}) CHECK(r.final_state[static_cast<std::size_t>(i - 1)] == 10);
  for (Node i : {3, 7}) CHECK(r.final_state[static_cast<std::size_t>(i - 1)] == 1);
  CHECK(r.safety_ok);
}

TEST_CASE("two index-alternating attackers split K6 under the parity schedule") {
  const auto s = k6_counterexample();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto scenario = s;
    scenario.seed = seed;
    const auto [t, r] = run(scenario, kFull);
    const auto& x = r.final_state;
    CHECK_FALSE(r.agreed);
    CHECK(x[2] == x[3]);
    CHECK(x[4] == x[5]);
    CHECK((x[2] == 3 || x[2] == 4));
    CHECK((x[4] == 5 || x[4] == 6));
  }
}

TEST_CASE("trajectory bookkeeping") {
  auto s = k6_counterexample();
  s.horizon = 6;
  const auto [t, r] = run(s, kFull);
  CHECK(t.states.front() == s.x0);
  CHECK(t.last_step() == 6);
  CHECK(t.update_sets.size() == 6);
  CHECK(t.broadcasts.size() == 7);
  CHECK(t.malicious == NodeSet{1, 2});
  CHECK(t.update_sets[0] == NodeSet{3, 4});
  CHECK(t.update_sets[1] == NodeSet{5, 6});
  for (Time k = 1; k <= 6; ++k) {
    const auto& x = t.states[static_cast<std::size_t>(k)];
    // Attackers commit exactly what they broadcast.
    CHECK(x[0] == adversary_value(s.strategy, 1, k));
    CHECK(x[1] == adversary_value(s.strategy, 2, k));
    CHECK(t.broadcasts[static_cast<std::size_t>(k)] == StateVector{x[0], x[1]});
    // Agents outside U[k-1] keep their value.
    const auto& prev = t.states[static_cast<std::size_t>(k - 1)];
    for (Node i = 3; i <= 6; ++i) {
      const auto& u = t.update_sets[static_cast<std::size_t>(k - 1)];
      if (std::find(u.begin(), u.end(), i) == u.end()) CHECK(x[static_cast<std::size_t>(i - 1)] == prev[static_cast<std::size_t>(i - 1)]);
    }
  }
}

TEST_CASE("same seed, identical trajectory") {
  auto s = alternating_attack(load_graph(kRobust22));
  s.schedule = Schedule::probabilistic(0.5);
  s.seed = 17;
  const auto a = run(s, kFull).first;
  const auto b = run(s, kFull).first;
  CHECK(a == b);
  s.seed = 18;
  CHECK_FALSE(run(s, kFull).first == a);
}

TEST_CASE("zero-bound delay pipeline matches the undelayed one") {
  for (auto schedule : {Schedule::synchronous(), Schedule::probabilistic(0.5),
                        Schedule::deterministic({{3, 5, 7}, {2, 4, 6}}, 2)}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto s = alternating_attack(load_graph(kRobust22));
      s.schedule = schedule;
      s.seed = seed;
      s.horizon = 80;
      auto d = s;
      d.delay = DelayModel::constant(0);
      CHECK(run(s, kFull).first == run(d, kFull).first);
    }
  }
}

TEST_CASE("agreement is absorbing even against an adaptive attacker") {
  Scenario s;
  s.graph = DirectedGraph::complete(5);
  s.placement = {{1}, 1, FaultMode::kTotal};
  s.x0 = {0, 4, 4, 4, 4};
  s.strategy = AdversaryStrategy::adaptive([](Node, Time k, const WorldSnapshot& w) {
    return (k % 2 == 0 ? -1000 : 1000) + static_cast<Value>(w.update_set->size());
  });
  s.schedule = Schedule::probabilistic(0.7);
  s.delay = DelayModel::constant(2);
  s.horizon = 200;
  const auto [t, r] = run(s, kFull);
  for (const auto& x : t.states)
    for (Node i = 2; i <= 5; ++i) CHECK(x[static_cast<std::size_t>(i - 1)] == 4);
  CHECK(r.agreed);
  CHECK(r.agreement_time == 0);
}

TEST_CASE("early stop waits bound + 1 steps after agreement") {
  Scenario s;
  s.graph = DirectedGraph::complete(4);
  s.x0 = {3, 3, 3, 3};
  s.delay = DelayModel::constant(3);
  const auto [t, r] = run(s);
  CHECK(r.agreement_time == 0);
  CHECK(r.steps == 4);
  CHECK(t.states.size() == 5);
}

TEST_CASE("delayed scenarios keep every invariant") {
  auto s = alternating_attack(load_graph(kRobust22));
  s.delay = DelayModel::table({{1, 2, 7, 8}, {1, 3, 8, 7}, {1, 5, 8, 7}, {1, 7, 8, 7}}, 8);
  s.schedule = Schedule::probabilistic(0.4);
  s.horizon = 300;
  const auto [t, r] = run(s, kFull);
  CHECK(r.invariants.total() == 0);
  CHECK(check_safety(t, s.normals(), 8));
  CHECK(r.frozen);
}

TEST_CASE("default horizon") {
  auto s = alternating_attack(load_graph(kRobust22));
  CHECK(default_horizon(s) == 500);
  s.schedule = Schedule::deterministic({{3, 5, 7}, {2, 4, 6}}, 2);
  s.delay = DelayModel::constant(8);
  CHECK(default_horizon(s) == 10 * 7 * 9 * 2);
}

TEST_CASE("invalid scenarios are rejected before stepping") {
  auto s = alternating_attack(load_graph(kRobust22));
  auto bad = s;
  bad.x0.pop_back();
  CHECK_THROWS_AS(run(bad), ConfigError);
  bad = s;
  bad.placement.malicious = {1, 2};
  CHECK_THROWS_AS(run(bad), ConfigError);
  bad = s;
  bad.schedule = Schedule::deterministic({{2, 3, 5, 7}, {2, 4}}, 2);
  CHECK_THROWS_AS(run(bad), ConfigError);
  bad = s;
  bad.delay = DelayModel::table({{2, 7, 1, 1}});
  CHECK_THROWS_AS(run(bad), ConfigError);
  bad = s;
  bad.horizon = -1;
  CHECK_THROWS_AS(run(bad), ConfigError);
}

TEST_CASE("delays above the declared bound abort the run") {
  auto s = alternating_attack(load_graph(kRobust22));
  s.delay = DelayModel::custom([](Node, Node, Time k) { return k == 5 ? 3 : 1; }, 2);
  CHECK_THROWS_AS(run(s), ContractViolation);
}

TEST_CASE("check_safety on hand-built trajectories") {
  Trajectory t;
  t.states = {{1, 5, 9}, {2, 5, 8}, {3, 5, 7}};
  CHECK(check_safety(t, {1, 2, 3}, 0));
  t.states.push_back({0, 5, 7});
  CHECK_FALSE(check_safety(t, {1, 2, 3}, 0));
  CHECK(check_safety(t, {2, 3}, 2));
  Trajectory constant;
  constant.states = {{4, 4}, {4, 4}};
  CHECK(check_safety(constant, {1, 2}, 0));
  CHECK_THROWS_AS(check_safety(Trajectory{}, {1}, 0), InputError);
}

TEST_CASE("simulation can be stepped by hand") {
  auto s = k6_counterexample();
  Simulation sim(s, kFull);
  CHECK(sim.now() == 0);
  CHECK(sim.pending_update_set() == NodeSet{3, 4});
  sim.step();
  CHECK(sim.now() == 1);
  CHECK(sim.state()[0] == 7);
  CHECK(sim.state()[1] == 8);
  CHECK(sim.pending_update_set() == NodeSet{5, 6});
  CHECK(sim.trajectory().states.front() == s.x0);
  CHECK(sim.history().at(1) == sim.state());
}

TEST_CASE("Monte Carlo summary is independent of parallel execution") {
  auto s = alternating_attack(load_graph(kRobust22));
  s.schedule = Schedule::probabilistic(0.5);
  const auto par = monte_carlo(s, 24);
  const auto ser = monte_carlo_serial(s, 24);
  CHECK(par.runs == 24);
  CHECK(par.agreed == ser.agreed);
  CHECK(par.final_values == ser.final_values);
  CHECK(par.ka_median == ser.ka_median);
  for (std::size_t r = 0; r < par.results.size(); ++r) {
    CHECK(par.results[r].seed == s.seed + r);
    CHECK(par.results[r].final_state == ser.results[r].final_state);
  }
  CHECK_THROWS_AS(monte_carlo(s, 0), InputError);
}

TEST_CASE("a frozen deterministic scenario gives identical runs for every seed") {
  const auto s = five_node(QuantizerKind::kCeil);
  const auto mc = monte_carlo(s, 8);
  CHECK(mc.agreement_rate == 0.0);
  for (const auto& r : mc.results) CHECK(r.final_state == mc.results.front().final_state);
  const auto first = run(s, kFull).first;
  auto other = s;
  other.seed = 99;
  CHECK(run(other, kFull).first == first);
}

TEST_CASE("summary statistics") {
  std::vector<RunResult> results(4);
  results[0].agreed = true, results[0].agreement_time = 9, results[0].final_value = 3;
  results[1].agreed = true, results[1].agreement_time = 5, results[1].final_value = 3;
  results[2].agreed = true, results[2].agreement_time = 7, results[2].final_value = 4;
  results[3].safety_ok = false;
  const auto s = summarize(results);
  CHECK(s.agreed == 3);
  CHECK(s.agreement_rate == doctest::Approx(0.75));
  CHECK(s.ka_min == 5);
  CHECK(s.ka_median == 7);
  CHECK(s.ka_max == 9);
  CHECK(s.final_values == std::map<Value, int>{{3, 2}, {4, 1}});
  CHECK(s.safety_violations == 1);
}
