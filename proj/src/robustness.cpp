#include <atomic>
#include <bit>
#include <cstdint>
#include <iostream>
#include <limits>

#include "qmsr/errors.hpp"
#include "qmsr/graph.hpp"

namespace qmsr {

namespace {

using Mask = std::uint32_t;

struct Masks {
  int n;
  std::vector<Mask> in;  // in[i]: bit j set iff (j+1, i+1) is an edge
};

Masks to_masks(const DirectedGraph& g) {
  Masks m{g.size(), std::vector<Mask>(g.size(), 0)};
  for (const Edge& e : g.edges()) m.in[e.to - 1] |= Mask{1} << (e.from - 1);
  return m;
}

// Members of `set` with at least r in-neighbors outside `set`.
inline Mask reachable_members(const Masks& m, Mask set, int r) {
  Mask x = 0;
  for (Mask rest = set; rest; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    if (std::popcount(m.in[i] & ~set) >= r) x |= Mask{1} << i;
  }
  return x;
}

inline bool pair_satisfied(const Masks& m, Mask v1, Mask v2, int r, int s) {
  const Mask x1 = reachable_members(m, v1, r);
  if (x1 == v1) return true;
  const Mask x2 = reachable_members(m, v2, r);
  if (x2 == v2) return true;
  return std::popcount(x1) + std::popcount(x2) >= s;
}

// Pairs are keyed by (union, subset of union-minus-lowest-node placed in V1);
// the lowest node of the union always sits in V1, so each unordered pair is
// visited once. Returns the smallest violating key within `u`, or max.
inline std::uint64_t first_violation(const Masks& m, Mask u, int r, int s) {
  const Mask low = u & (~u + 1);
  const Mask rest = u ^ low;
  Mask sub = 0;
  do {
    if (sub != rest) {
      const Mask v1 = low | sub;
      const Mask v2 = rest ^ sub;
      if (!pair_satisfied(m, v1, v2, r, s)) return (std::uint64_t{u} << 32) | sub;
    }
    sub = (sub - rest) & rest;
  } while (sub != 0);
  return std::numeric_limits<std::uint64_t>::max();
}

void check_arguments(const DirectedGraph& g, int r, int s) {
  const int n = g.size();
  if (r < 0 || r >= n) throw InputError("r must satisfy 0 <= r < n");
  if (s < 1 || s >= n) throw InputError("s must satisfy 1 <= s < n");
  if (n > kRobustnessMaxNodes) {
    throw InputError("exhaustive robustness check is capped at " +
                     std::to_string(kRobustnessMaxNodes) + " nodes");
  }
  if (n > kRobustnessWarnNodes) {
    std::clog << "warning: exhaustive robustness check on " << n
              << " nodes enumerates ~3^n subset pairs\n";
  }
}

NodeSet to_nodes(Mask mask) {
  NodeSet nodes;
  for (; mask; mask &= mask - 1) nodes.push_back(std::countr_zero(mask) + 1);
  return nodes;
}

RobustnessReport make_report(int r, int s, std::uint64_t key) {
  RobustnessReport report{r, s, true, std::nullopt};
  if (key == std::numeric_limits<std::uint64_t>::max()) return report;
  const Mask u = static_cast<Mask>(key >> 32);
  const Mask sub = static_cast<Mask>(key & 0xffffffffu);
  const Mask low = u & (~u + 1);
  const Mask v1 = low | sub;
  report.holds = false;
  report.witness = std::make_pair(to_nodes(v1), to_nodes(u ^ v1));
  return report;
}

}  // namespace

RobustnessReport is_r_s_robust_serial(const DirectedGraph& g, int r, int s) {
  check_arguments(g, r, s);
  const Masks m = to_masks(g);
  const Mask full = (Mask{1} << m.n) - 1;
  for (Mask u = 1; u <= full; ++u) {
    if (std::popcount(u) < 2) continue;
    const std::uint64_t key = first_violation(m, u, r, s);
    if (key != std::numeric_limits<std::uint64_t>::max()) return make_report(r, s, key);
  }
  return make_report(r, s, std::numeric_limits<std::uint64_t>::max());
}

RobustnessReport is_r_s_robust(const DirectedGraph& g, int r, int s) {
  check_arguments(g, r, s);
  const Masks m = to_masks(g);
  const std::int64_t count = std::int64_t{1} << m.n;
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};

#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t idx = 1; idx < count; ++idx) {
    const Mask u = static_cast<Mask>(idx);
    if (std::popcount(u) < 2) continue;
    // Keys grow with u, so a found violation at a smaller union wins.
    if ((std::uint64_t{u} << 32) > best.load(std::memory_order_relaxed)) continue;
    const std::uint64_t key = first_violation(m, u, r, s);
    std::uint64_t current = best.load(std::memory_order_relaxed);
    while (key < current && !best.compare_exchange_weak(current, key, std::memory_order_relaxed)) {
    }
  }
  return make_report(r, s, best.load());
}

}  // namespace qmsr
