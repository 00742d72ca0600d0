#pragma once

#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "glutton/instance.hpp"

namespace glutton {

struct Edge {
  int u = 0;
  int v = 0;
  Rational length;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class UnionFind {
 public:
  explicit UnionFind(int n) : sets_(static_cast<std::size_t>(n)) {}
  int find(int x) { return static_cast<int>(sets_.find_set(static_cast<std::size_t>(x))); }
  bool same(int a, int b) { return find(a) == find(b); }
  // False when a and b were already joined.
  bool unite(int a, int b) {
    if (same(a, b)) return false;
    sets_.union_set(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    return true;
  }

 private:
  boost::disjoint_sets_with_storage<> sets_;
};

Rational total_length(const std::vector<Edge>& edges);

// Keeps edges in order, skipping any that would close a cycle.
std::vector<Edge> maximal_acyclic(const std::vector<Edge>& edges, int n);
bool is_acyclic(const std::vector<Edge>& edges, int n);

// Component label per vertex: the smallest vertex in its component.
std::vector<int> component_labels(int n, const std::vector<Edge>& edges);

// The single feasibility check shared by solvers, oracles and tests.
bool connects_all(const Instance& inst, const std::vector<Edge>& edges);
bool connects_pairs(const Instance& inst, const std::vector<Edge>& edges, const std::vector<int>& pairs);

struct Tree {
  std::vector<int> vertices;  // ascending
  std::vector<Edge> edges;
  std::vector<int> pairs;  // demands with both endpoints inside
};

// Components of (V, edges) that carry at least one edge, ordered by smallest vertex.
std::vector<Tree> split_trees(const Instance& inst, const std::vector<Edge>& edges);

// Length of the path between u and v inside an acyclic edge set; -1 if disconnected.
Rational forest_distance(int n, const std::vector<Edge>& edges, int u, int v);

struct Width {
  Rational value;
  bool flagged = false;  // the tree holds no complete demand pair
};

Width tree_width(const Instance& inst, const Tree& tree);
Rational forest_width(const Instance& inst, const std::vector<Edge>& edges);

}  // namespace glutton
