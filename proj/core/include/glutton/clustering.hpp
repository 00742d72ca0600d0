#pragma once

#include <functional>
#include <vector>

#include "glutton/forest.hpp"
#include "glutton/instance.hpp"

namespace glutton {

using NodeId = int;

// Partition of the terminals into supernodes. Ids are handed out in creation
// order and never reused. A supernode may also own non-terminal vertices it
// absorbed (path-contraction and paired-greedy runs only).
class Clustering {
 public:
  // Trivial clustering; a demand pair at distance 0 starts as one supernode.
  explicit Clustering(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  int generation() const { return generation_; }
  int next_id() const { return static_cast<int>(nodes_.size()); }
  int size() const { return live_; }

  std::vector<NodeId> ids() const;  // ascending
  bool present(NodeId id) const { return id >= 0 && id < next_id() && nodes_[id].present; }
  const std::vector<int>& terminals(NodeId id) const { return nodes_[id].terminals; }
  const std::vector<int>& vertices(NodeId id) const { return nodes_[id].vertices; }

  NodeId node_of_terminal(int term) const { return owner_[inst_->terminal_vertex(term)]; }
  NodeId owner(int vertex) const { return owner_[vertex]; }  // -1 for a free vertex
  const std::vector<int>& owners() const { return owner_; }

  // Some terminal of the supernode has its mate outside.
  bool mate_active(NodeId id) const;

  NodeId merge(NodeId a, NodeId b);
  // Merges several supernodes and absorbs free vertices into one new supernode.
  NodeId merge(const std::vector<NodeId>& parts, const std::vector<int>& free_vertices);

  // Terminal sets of all supernodes, each ascending, sorted.
  std::vector<std::vector<int>> partition() const;

 private:
  struct Node {
    std::vector<int> terminals;
    std::vector<int> vertices;
    bool present = true;
  };
  const Instance* inst_;
  std::vector<Node> nodes_;
  std::vector<int> owner_;
  int generation_ = 0;
  int live_ = 0;
};

using ActivityPolicy = std::function<bool(const Clustering&, NodeId)>;

inline ActivityPolicy mate_policy() {
  return [](const Clustering& cl, NodeId id) { return cl.mate_active(id); };
}

// Shortest paths in the graph where vertices sharing a group are joined by
// zero-length edges. Group -1 marks a vertex that is on its own.
class PuncturedMetric {
 public:
  PuncturedMetric(const Instance& inst, const std::vector<int>& groups);
  // Follows the clustering; recomputes lazily when its generation moves.
  explicit PuncturedMetric(const Clustering& cl);

  Rational distance(int u, int v) const;
  std::vector<int> path(int u, int v) const;  // vertex sequence from u to v

  struct NodePath {
    Rational distance;
    int from = -1;  // witnessing member vertices
    int to = -1;
    std::vector<int> path;
    bool degenerate = false;  // both arguments name the same supernode
  };
  NodePath between(NodeId a, NodeId b) const;

  // Consecutive path steps that cross between groups, with their lengths.
  std::vector<Edge> crossing_edges(const std::vector<int>& path) const;

  std::int64_t raw(int u, int v) const {
    refresh();
    return dist_[u][v];
  }

 private:
  void refresh() const;
  void compute(const std::vector<int>& groups) const;
  bool same_group(int u, int v) const;

  const Instance* inst_;
  const Clustering* cl_ = nullptr;
  mutable int seen_generation_ = -1;
  mutable std::vector<int> groups_;
  mutable std::vector<std::vector<std::int64_t>> dist_;
  mutable std::vector<std::vector<int>> next_;
};

// The metric M/F: vertices joined by the edge set become one point.
Instance contract_edges(const Instance& inst, const std::vector<Edge>& edges);

}  // namespace glutton
