#include "qmsr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qmsr/errors.hpp"

namespace qmsr {

DirectedGraph::DirectedGraph(int n, std::vector<Edge> edges, std::optional<double> alpha)
    : n_(n), alpha_(alpha.value_or(1.0 / (n + 1.0))), edges_(std::move(edges)) {
  if (n_ < 1) throw InputError("graph must have at least one node");
  if (!(alpha_ > 0.0 && alpha_ < 1.0)) throw InputError("alpha must lie in (0, 1)");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  in_.assign(n_, {});
  out_.assign(n_, {});
  for (const Edge& e : edges_) {
    if (!contains(e.from) || !contains(e.to)) {
      throw InputError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                       ") has an endpoint outside 1.." + std::to_string(n_));
    }
    if (e.from == e.to) throw InputError("self-loop on node " + std::to_string(e.from));
    in_[e.to - 1].push_back(e.from);
    out_[e.from - 1].push_back(e.to);
  }
  for (auto& s : in_) std::sort(s.begin(), s.end());
  for (auto& s : out_) std::sort(s.begin(), s.end());
}

DirectedGraph DirectedGraph::complete(int n) {
  std::vector<Edge> edges;
  for (Node j = 1; j <= n; ++j)
    for (Node i = 1; i <= n; ++i)
      if (i != j) edges.push_back({j, i});
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph DirectedGraph::line(int n) {
  std::vector<Edge> edges;
  for (Node i = 1; i < n; ++i) edges.push_back({i, i + 1});
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph DirectedGraph::cycle(int n) {
  std::vector<Edge> edges;
  for (Node i = 1; i < n; ++i) edges.push_back({i, i + 1});
  if (n > 1) edges.push_back({n, 1});
  return DirectedGraph(n, std::move(edges));
}

void DirectedGraph::check_node(Node i) const {
  if (!contains(i)) {
    throw InputError("node " + std::to_string(i) + " outside 1.." + std::to_string(n_));
  }
}

bool DirectedGraph::has_edge(Node from, Node to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

const NodeSet& DirectedGraph::in_neighbors(Node i) const {
  check_node(i);
  return in_[i - 1];
}

const NodeSet& DirectedGraph::out_neighbors(Node j) const {
  check_node(j);
  return out_[j - 1];
}

int DirectedGraph::max_in_degree() const {
  std::size_t d = 0;
  for (const auto& s : in_) d = std::max(d, s.size());
  return static_cast<int>(d);
}

DirectedGraph DirectedGraph::without_edges(std::span<const Edge> removed) const {
  std::vector<Edge> kept;
  for (const Edge& e : edges_)
    if (std::find(removed.begin(), removed.end(), e) == removed.end()) kept.push_back(e);
  return DirectedGraph(n_, std::move(kept), alpha_);
}

DirectedGraph DirectedGraph::with_edges(std::span<const Edge> added) const {
  std::vector<Edge> all = edges_;
  all.insert(all.end(), added.begin(), added.end());
  return DirectedGraph(n_, std::move(all), alpha_);
}

NodeSet in_neighbors(const DirectedGraph& g, Node i) { return g.in_neighbors(i); }

NodeSet x_set(const DirectedGraph& g, const NodeSet& subset, int r) {
  if (r < 0) throw InputError("r must be nonnegative");
  NodeSet members = subset;
  std::sort(members.begin(), members.end());
  for (Node v : members)
    if (!g.contains(v)) throw InputError("subset node " + std::to_string(v) + " out of range");
  NodeSet result;
  for (Node i : members) {
    int outside = 0;
    for (Node j : g.in_neighbors(i))
      if (!std::binary_search(members.begin(), members.end(), j)) ++outside;
    if (outside >= r) result.push_back(i);
  }
  return result;
}

namespace {

std::vector<bool> reach_from(const DirectedGraph& g, Node root, bool forward) {
  std::vector<bool> seen(g.size() + 1, false);
  std::vector<Node> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    Node u = stack.back();
    stack.pop_back();
    for (Node v : forward ? g.out_neighbors(u) : g.in_neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

bool reaches_all(const std::vector<bool>& seen) {
  return std::all_of(seen.begin() + 1, seen.end(), [](bool b) { return b; });
}

}  // namespace

bool has_directed_spanning_tree(const DirectedGraph& g) {
  for (Node root = 1; root <= g.size(); ++root)
    if (reaches_all(reach_from(g, root, true))) return true;
  return false;
}

bool is_strongly_connected(const DirectedGraph& g) {
  return reaches_all(reach_from(g, 1, true)) && reaches_all(reach_from(g, 1, false));
}

int max_r_robustness(const DirectedGraph& g) {
  const int n = g.size();
  if (n < 2) throw InputError("max_r_robustness needs at least two nodes");
  for (int r = (n + 1) / 2; r > 0; --r)
    if (is_r_s_robust(g, r, 1).holds) return r;
  return 0;
}

DirectedGraph read_graph(std::istream& in) {
  std::string line;
  std::optional<int> n;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<long> values;
    long v;
    while (fields >> v) values.push_back(v);
    if (!fields.eof()) {
      throw ParseError("graph line " + std::to_string(line_no) + ": expected integers");
    }
    if (values.empty()) continue;
    if (!n) {
      if (values.size() != 1) throw ParseError("graph line " + std::to_string(line_no) + ": expected node count");
      n = static_cast<int>(values[0]);
      continue;
    }
    if (values.size() != 2) {
      throw ParseError("graph line " + std::to_string(line_no) + ": expected `j i`");
    }
    edges.push_back({static_cast<Node>(values[0]), static_cast<Node>(values[1])});
  }
  if (!n) throw ParseError("graph: missing node count");
  return DirectedGraph(*n, std::move(edges));
}

DirectedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const DirectedGraph& g) {
  out << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.from << ' ' << e.to << '\n';
}

std::string format_node_set(const NodeSet& nodes) {
  std::string s = "{";
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(nodes[k]);
  }
  return s + "}";
}

}  // namespace qmsr
