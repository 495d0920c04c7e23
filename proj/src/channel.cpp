#include "qmsr/channel.hpp"

#include <algorithm>
#include <limits>

#include "qmsr/errors.hpp"

namespace qmsr {

namespace {

void require_nonnegative(int tau) {
  if (tau < 0) throw ConfigError("delays must be nonnegative");
}

int resolve_bound(int largest, std::optional<int> bound) {
  if (!bound) return largest;
  if (*bound < largest) {
    throw ConfigError("delay.bound " + std::to_string(*bound) + " is below the largest listed delay " +
                      std::to_string(largest));
  }
  return *bound;
}

std::size_t positive_mod(Time t, std::size_t m) {
  const auto r = t % static_cast<Time>(m);
  return static_cast<std::size_t>(r < 0 ? r + static_cast<Time>(m) : r);
}

}  // namespace

DelayModel DelayModel::constant(int tau) {
  require_nonnegative(tau);
  DelayModel dm;
  dm.model_ = Constant{tau};
  dm.bound_ = tau;
  return dm;
}

DelayModel DelayModel::table(std::vector<ParityDelayRow> rows, std::optional<int> bound) {
  int largest = 0;
  for (const auto& r : rows) {
    require_nonnegative(r.even);
    require_nonnegative(r.odd);
    largest = std::max({largest, r.even, r.odd});
  }
  DelayModel dm;
  dm.bound_ = resolve_bound(largest, bound);
  dm.model_ = Table{std::move(rows)};
  return dm;
}

DelayModel DelayModel::scripted(std::vector<CyclicDelayRow> rows, std::optional<int> bound) {
  int largest = 0;
  for (const auto& r : rows) {
    if (r.cycle.empty()) throw ConfigError("scripted delay row has an empty sequence");
    for (int tau : r.cycle) {
      require_nonnegative(tau);
      largest = std::max(largest, tau);
    }
  }
  DelayModel dm;
  dm.bound_ = resolve_bound(largest, bound);
  dm.model_ = Scripted{std::move(rows)};
  return dm;
}

DelayModel DelayModel::custom(DelayFunction fn, int bound) {
  require_nonnegative(bound);
  DelayModel dm;
  dm.model_ = Custom{std::move(fn)};
  dm.bound_ = bound;
  return dm;
}

DelayModel::Kind DelayModel::kind() const {
  return static_cast<Kind>(model_.index());
}

int DelayModel::delay(Node to, Node from, Time k) const {
  if (to == from) return 0;
  switch (kind()) {
    case Kind::kNone: return 0;
    case Kind::kConstant: return std::get<Constant>(model_).tau;
    case Kind::kTable:
      for (const auto& r : std::get<Table>(model_).rows)
        if (r.from == from && r.to == to) return (k % 2 == 0) ? r.even : r.odd;
      return 0;
    case Kind::kScripted:
      for (const auto& r : std::get<Scripted>(model_).rows)
        if (r.from == from && r.to == to) return r.cycle[positive_mod(k, r.cycle.size())];
      return 0;
    case Kind::kCustom: return std::get<Custom>(model_).fn(to, from, k);
  }
  return 0;
}

const std::vector<ParityDelayRow>& DelayModel::table_rows() const {
  static const std::vector<ParityDelayRow> empty;
  if (const auto* t = std::get_if<Table>(&model_)) return t->rows;
  return empty;
}

const std::vector<CyclicDelayRow>& DelayModel::scripted_rows() const {
  static const std::vector<CyclicDelayRow> empty;
  if (const auto* s = std::get_if<Scripted>(&model_)) return s->rows;
  return empty;
}

int DelayModel::constant_value() const {
  if (const auto* c = std::get_if<Constant>(&model_)) return c->tau;
  return 0;
}

void DelayModel::validate(const DirectedGraph& g) const {
  const auto check = [&](Node from, Node to) {
    if (!g.has_edge(from, to)) {
      throw ConfigError("delay listed for (" + std::to_string(from) + "," + std::to_string(to) +
                        ") which is not an edge");
    }
  };
  for (const auto& r : table_rows()) check(r.from, r.to);
  for (const auto& r : scripted_rows()) check(r.from, r.to);
}

bool DelayModel::operator==(const DelayModel& other) const {
  if (kind() != other.kind() || bound_ != other.bound_) return false;
  switch (kind()) {
    case Kind::kNone: return true;
    case Kind::kConstant: return constant_value() == other.constant_value();
    case Kind::kTable: return table_rows() == other.table_rows();
    case Kind::kScripted: return scripted_rows() == other.scripted_rows();
    case Kind::kCustom: return false;
  }
  return false;
}

std::string_view to_string(DelayModel::Kind kind) {
  switch (kind) {
    case DelayModel::Kind::kNone: return "none";
    case DelayModel::Kind::kConstant: return "constant";
    case DelayModel::Kind::kTable: return "table";
    case DelayModel::Kind::kScripted: return "scripted";
    case DelayModel::Kind::kCustom: return "custom";
  }
  return "?";
}

History::History(StateVector x0, int bound) {
  if (bound < 0) throw InputError("history bound must be nonnegative");
  width_ = x0.size();
  ring_.assign(static_cast<std::size_t>(bound) + 1, std::move(x0));
}

History::History(std::vector<StateVector> window) {
  if (window.empty()) throw InputError("history window must hold at least one vector");
  width_ = window.front().size();
  for (const auto& x : window)
    if (x.size() != width_) throw InputError("history window vectors differ in length");
  ring_.resize(window.size());
  for (std::size_t d = 0; d < window.size(); ++d) slot(-static_cast<Time>(d)) = std::move(window[d]);
}

StateVector& History::slot(Time t) { return ring_[positive_mod(t, ring_.size())]; }
const StateVector& History::slot(Time t) const { return ring_[positive_mod(t, ring_.size())]; }

void History::record(StateVector x) {
  if (x.size() != width_) {
    throw InputError("history: expected state of length " + std::to_string(width_) + ", got " +
                     std::to_string(x.size()));
  }
  ++now_;
  slot(now_) = std::move(x);
}

const StateVector& History::at(Time t) const {
  if (t > now_ || t < now_ - bound()) {
    throw InputError("history: time " + std::to_string(t) + " outside window [" +
                     std::to_string(now_ - bound()) + ", " + std::to_string(now_) + "]");
  }
  return slot(t);
}

std::vector<Value> History::extended() const {
  std::vector<Value> z;
  z.reserve(ring_.size() * width_);
  for (int d = 0; d <= bound(); ++d) {
    const auto& x = slot(now_ - d);
    z.insert(z.end(), x.begin(), x.end());
  }
  return z;
}

NeighborView delayed_view(const History& h, const DirectedGraph& g, const DelayModel& dm, Node i, Time k) {
  if (k < 0) throw InputError("delayed_view: negative time");
  if (k != h.now()) throw InputError("delayed_view: history is not at time k");
  NeighborView view;
  const auto& nbrs = g.in_neighbors(i);
  view.reserve(nbrs.size());
  for (Node j : nbrs) {
    const int tau = dm.delay(i, j, k);
    if (tau < 0 || tau > dm.bound()) {
      throw ContractViolation("delay " + std::to_string(tau) + " on edge (" + std::to_string(j) + "," +
                              std::to_string(i) + ") at k=" + std::to_string(k) + " exceeds bound " +
                              std::to_string(dm.bound()));
    }
    if (tau > h.bound()) throw ContractViolation("history shorter than delay bound");
    view.push_back({j, h.value(k - tau, j)});
  }
  return view;
}

NeighborView current_view(const StateVector& x, const DirectedGraph& g, Node i) {
  NeighborView view;
  const auto& nbrs = g.in_neighbors(i);
  view.reserve(nbrs.size());
  for (Node j : nbrs) view.push_back({j, x[static_cast<std::size_t>(j - 1)]});
  return view;
}

double ExtendedWeightMatrix::row_sum(int row) const {
  double s = 0.0;
  for (int c = 0; c < cols(); ++c) s += at(row, c);
  return s;
}

double ExtendedWeightMatrix::smallest_positive() const {
  double m = std::numeric_limits<double>::infinity();
  for (double e : entries)
    if (e > 0.0) m = std::min(m, e);
  return m;
}

double ExtendedWeightMatrix::apply_row(int row, const std::vector<Value>& z) const {
  double s = 0.0;
  for (int c = 0; c < cols(); ++c) s += at(row, c) * static_cast<double>(z[static_cast<std::size_t>(c)]);
  return s;
}

ExtendedWeightMatrix assemble_extended_weights(const DirectedGraph& g, const DelayModel& dm, Time k,
                                               const std::vector<AgentStepRecord>& agents) {
  ExtendedWeightMatrix w;
  w.n = g.size();
  w.bound = dm.bound();
  w.entries.assign(static_cast<std::size_t>(w.n) * w.cols(), 0.0);
  const auto add = [&](Node row, int block, Node col, double value) {
    w.entries[static_cast<std::size_t>(row - 1) * w.cols() + block * w.n + (col - 1)] += value;
  };
  std::vector<bool> seen(static_cast<std::size_t>(w.n) + 1, false);
  for (const auto& a : agents) {
    seen[a.agent] = true;
    if (!a.updated) {
      add(a.agent, 0, a.agent, 1.0);
      continue;
    }
    const WeightAssignment weights = compute_weights(static_cast<int>(a.retained.size()));
    add(a.agent, 0, a.agent, weights.self_weight());
    for (const auto& o : a.retained) add(a.agent, dm.delay(a.agent, o.from, k), o.from, weights.neighbor_weight());
  }
  for (Node i = 1; i <= w.n; ++i)
    if (!seen[i]) add(i, 0, i, 1.0);
  return w;
}

}  // namespace qmsr
