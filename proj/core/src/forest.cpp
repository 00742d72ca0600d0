#include "glutton/forest.hpp"

#include <algorithm>
#include <map>

namespace glutton {

Rational total_length(const std::vector<Edge>& edges) {
  Rational sum(0);
  for (const auto& e : edges) sum += e.length;
  return sum;
}

std::vector<Edge> maximal_acyclic(const std::vector<Edge>& edges, int n) {
  UnionFind uf(n);
  std::vector<Edge> out;
  for (const auto& e : edges)
    if (uf.unite(e.u, e.v)) out.push_back(e);
  return out;
}

bool is_acyclic(const std::vector<Edge>& edges, int n) {
  UnionFind uf(n);
  for (const auto& e : edges)
    if (!uf.unite(e.u, e.v)) return false;
  return true;
}

std::vector<int> component_labels(int n, const std::vector<Edge>& edges) {
  UnionFind uf(n);
  for (const auto& e : edges) uf.unite(e.u, e.v);
  std::vector<int> label(n, -1), first(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = uf.find(v);
    if (first[r] < 0) first[r] = v;
    label[v] = first[r];
  }
  return label;
}

bool connects_pairs(const Instance& inst, const std::vector<Edge>& edges, const std::vector<int>& pairs) {
  UnionFind uf(inst.num_vertices());
  for (const auto& e : edges) uf.unite(e.u, e.v);
  for (int k : pairs)
    if (!uf.same(inst.demands()[k].s, inst.demands()[k].t)) return false;
  return true;
}

bool connects_all(const Instance& inst, const std::vector<Edge>& edges) {
  std::vector<int> all(inst.num_pairs());
  for (int k = 0; k < inst.num_pairs(); ++k) all[k] = k;
  return connects_pairs(inst, edges, all);
}

std::vector<Tree> split_trees(const Instance& inst, const std::vector<Edge>& edges) {
  const int n = inst.num_vertices();
  auto label = component_labels(n, edges);
  std::map<int, Tree> by_label;
  std::vector<char> touched(n, 0);
  for (const auto& e : edges) {
    touched[e.u] = touched[e.v] = 1;
    by_label[label[e.u]].edges.push_back(e);
  }
  for (int v = 0; v < n; ++v)
    if (touched[v]) by_label[label[v]].vertices.push_back(v);
  for (int k = 0; k < inst.num_pairs(); ++k) {
    const Demand& dm = inst.demands()[k];
    if (touched[dm.s] && label[dm.s] == label[dm.t]) by_label[label[dm.s]].pairs.push_back(k);
  }
  std::vector<Tree> out;
  for (auto& [_, t] : by_label) out.push_back(std::move(t));
  return out;
}

Rational forest_distance(int n, const std::vector<Edge>& edges, int u, int v) {
  std::vector<std::vector<std::pair<int, Rational>>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.length);
    adj[e.v].emplace_back(e.u, e.length);
  }
  std::vector<Rational> dist(n, Rational(-1));
  std::vector<int> stack{u};
  dist[u] = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto& [y, len] : adj[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + len;
        stack.push_back(y);
      }
  }
  return dist[v];
}

Width tree_width(const Instance& inst, const Tree& tree) {
  Width w{Rational(0), tree.pairs.empty()};
  const int n = inst.num_vertices();
  for (int k : tree.pairs) {
    Rational d = forest_distance(n, tree.edges, inst.demands()[k].s, inst.demands()[k].t);
    w.value = rmax(w.value, d);
  }
  return w;
}

Rational forest_width(const Instance& inst, const std::vector<Edge>& edges) {
  Rational sum(0);
  for (const auto& t : split_trees(inst, edges)) sum += tree_width(inst, t).value;
  return sum;
}

}  // namespace glutton
