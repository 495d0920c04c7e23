#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmsr/types.hpp"

namespace qmsr {

// Directed edge (from, to): `to` receives the value of `from`.
struct Edge {
  Node from;
  Node to;
  auto operator<=>(const Edge&) const = default;
};

class DirectedGraph {
 public:
  // alpha defaults to 1 / (n + 1), which every uniform-weight update clears.
  DirectedGraph(int n, std::vector<Edge> edges, std::optional<double> alpha = std::nullopt);

  static DirectedGraph complete(int n);
  static DirectedGraph line(int n);   // 1 -> 2 -> ... -> n
  static DirectedGraph cycle(int n);  // line plus n -> 1

  int size() const { return n_; }
  double alpha() const { return alpha_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(Node from, Node to) const;
  bool contains(Node i) const { return i >= 1 && i <= n_; }

  // { j : (j, i) in E }
  const NodeSet& in_neighbors(Node i) const;
  const NodeSet& out_neighbors(Node j) const;
  int max_in_degree() const;

  DirectedGraph without_edges(std::span<const Edge> removed) const;
  DirectedGraph with_edges(std::span<const Edge> added) const;

  bool operator==(const DirectedGraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_ && alpha_ == other.alpha_;
  }

 private:
  void check_node(Node i) const;

  int n_;
  double alpha_;
  std::vector<Edge> edges_;
  std::vector<NodeSet> in_;
  std::vector<NodeSet> out_;
};

// Free-function form of DirectedGraph::in_neighbors.
NodeSet in_neighbors(const DirectedGraph& g, Node i);

// Nodes of `subset` with at least r in-neighbors outside `subset`.
NodeSet x_set(const DirectedGraph& g, const NodeSet& subset, int r);

struct RobustnessReport {
  int r = 0;
  int s = 1;
  bool holds = true;
  // Present iff holds == false: a pair of nonempty disjoint subsets for which
  // none of the three robustness clauses is satisfied.
  std::optional<std::pair<NodeSet, NodeSet>> witness;
};

// Exhaustive robustness limits.
inline constexpr int kRobustnessWarnNodes = 12;
inline constexpr int kRobustnessMaxNodes = 16;

// Exact (r,s)-robustness by enumerating unordered pairs of disjoint subsets.
// OpenMP-parallel over the union of the pair; verdict and witness are
// identical to the serial kernel.
RobustnessReport is_r_s_robust(const DirectedGraph& g, int r, int s);

// Single-threaded reference kernel with the same enumeration order.
RobustnessReport is_r_s_robust_serial(const DirectedGraph& g, int r, int s);

// Largest r such that the graph is (r,1)-robust.
int max_r_robustness(const DirectedGraph& g);

bool has_directed_spanning_tree(const DirectedGraph& g);
bool is_strongly_connected(const DirectedGraph& g);

// Text format: first line `n`, then one `j i` pair per directed edge.
// Blank lines and `#` comments are ignored.
DirectedGraph read_graph(std::istream& in);
DirectedGraph load_graph(const std::string& path);
void write_graph(std::ostream& out, const DirectedGraph& g);

std::string format_node_set(const NodeSet& nodes);

}  // namespace qmsr
