#include "qmsr/schedule.hpp"

#include <algorithm>

#include "qmsr/errors.hpp"

namespace qmsr {

Schedule Schedule::deterministic(std::vector<NodeSet> table, int window) {
  Schedule s;
  s.kind_ = Kind::kDeterministic;
  for (auto& entry : table) {
    std::sort(entry.begin(), entry.end());
    entry.erase(std::unique(entry.begin(), entry.end()), entry.end());
  }
  s.table_ = std::move(table);
  s.window_ = window;
  return s;
}

Schedule Schedule::probabilistic(double p) {
  Schedule s;
  s.kind_ = Kind::kProbabilistic;
  s.p_ = {p};
  s.uniform_ = true;
  return s;
}

Schedule Schedule::probabilistic(std::vector<double> per_agent) {
  Schedule s;
  s.kind_ = Kind::kProbabilistic;
  s.p_ = std::move(per_agent);
  s.uniform_ = false;
  return s;
}

double Schedule::probability(Node i) const {
  switch (kind_) {
    case Kind::kSynchronous: return 1.0;
    case Kind::kDeterministic: return 0.0;
    case Kind::kProbabilistic: break;
  }
  if (uniform_) return p_.front();
  if (i < 1 || static_cast<std::size_t>(i) > p_.size()) {
    throw ConfigError("no update probability given for agent " + std::to_string(i));
  }
  return p_[static_cast<std::size_t>(i - 1)];
}

std::string_view to_string(Schedule::Kind kind) {
  switch (kind) {
    case Schedule::Kind::kSynchronous: return "synchronous";
    case Schedule::Kind::kDeterministic: return "deterministic";
    case Schedule::Kind::kProbabilistic: return "probabilistic";
  }
  return "?";
}

NodeSet update_set(const Schedule& s, const NodeSet& normals, Time k, RandomStream& rng) {
  if (k < 0) throw InputError("update_set: negative time");
  switch (s.kind()) {
    case Schedule::Kind::kSynchronous: return normals;
    case Schedule::Kind::kDeterministic: {
      if (s.table().empty()) return {};
      const auto& entry = s.table()[static_cast<std::size_t>(k % static_cast<Time>(s.table().size()))];
      for (Node i : entry) {
        if (!std::binary_search(normals.begin(), normals.end(), i)) {
          throw ConfigError("schedule table names agent " + std::to_string(i) + " which is not normal");
        }
      }
      return entry;
    }
    case Schedule::Kind::kProbabilistic: {
      NodeSet u;
      for (Node i : normals)
        if (rng.bernoulli(s.probability(i))) u.push_back(i);
      return u;
    }
  }
  return {};
}

bool validate_coverage(const Schedule& s, int window, const NodeSet& normals) {
  if (window < 1) return false;
  switch (s.kind()) {
    case Schedule::Kind::kSynchronous: return true;
    case Schedule::Kind::kProbabilistic:
      throw InputError("validate_coverage applies to deterministic schedules");
    case Schedule::Kind::kDeterministic: break;
  }
  const auto& table = s.table();
  if (table.empty()) return normals.empty();
  const std::size_t period = table.size();
  for (std::size_t start = 0; start < period; ++start) {
    NodeSet covered;
    for (int l = 0; l < window; ++l) {
      const auto& entry = table[(start + static_cast<std::size_t>(l)) % period];
      covered.insert(covered.end(), entry.begin(), entry.end());
    }
    std::sort(covered.begin(), covered.end());
    if (!std::includes(covered.begin(), covered.end(), normals.begin(), normals.end())) return false;
  }
  return true;
}

void validate_schedule(const Schedule& s, const NodeSet& normals, int n) {
  switch (s.kind()) {
    case Schedule::Kind::kSynchronous: return;
    case Schedule::Kind::kDeterministic:
      for (const auto& entry : s.table()) {
        for (Node i : entry) {
          if (!std::binary_search(normals.begin(), normals.end(), i)) {
            throw ConfigError("schedule table names agent " + std::to_string(i) + " which is not normal");
          }
        }
      }
      if (!validate_coverage(s, s.window(), normals)) {
        throw ConfigError("deterministic schedule fails k-bar coverage with window " + std::to_string(s.window()));
      }
      return;
    case Schedule::Kind::kProbabilistic:
      if (!s.uniform_probability() && s.probabilities().size() != static_cast<std::size_t>(n)) {
        throw ConfigError("schedule.p must list one probability per agent");
      }
      for (Node i : normals) {
        const double p = s.probability(i);
        if (!(p > 0.0 && p <= 1.0)) {
          throw ConfigError("update probability for agent " + std::to_string(i) + " must lie in (0, 1]");
        }
      }
      return;
  }
}

}  // namespace qmsr
