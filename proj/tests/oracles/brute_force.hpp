#pragma once
// Deliberately naive reference implementations used only by tests. They share
// no code with the library beyond the Instance type.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "glutton/instance.hpp"

namespace oracle {

using glutton::Instance;
using glutton::Rational;

// Prim's MST over the listed vertices under the metric.
inline Rational mst_cost(const Instance& inst, const std::vector<int>& vs) {
  if (vs.size() <= 1) return Rational(0);
  std::vector<char> in(vs.size(), 0);
  std::vector<std::optional<Rational>> key(vs.size());
  key[0] = Rational(0);
  Rational total(0);
  for (std::size_t it = 0; it < vs.size(); ++it) {
    int pick = -1;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (!in[i] && key[i] && (pick < 0 || *key[i] < *key[pick])) pick = static_cast<int>(i);
    in[pick] = 1;
    total += *key[pick];
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Rational d = inst.d(vs[pick], vs[i]);
      if (!in[i] && (!key[i] || d < *key[i])) key[i] = d;
    }
  }
  return total;
}

// Steiner tree by enumerating which non-terminal vertices join the MST.
inline Rational steiner_tree(const Instance& inst, std::vector<int> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  std::vector<int> others;
  for (int v = 0; v < inst.num_vertices(); ++v)
    if (!std::binary_search(terms.begin(), terms.end(), v)) others.push_back(v);
  Rational best = mst_cost(inst, terms);
  const int m = static_cast<int>(others.size());
  for (int mask = 1; mask < (1 << m); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) > static_cast<int>(terms.size()) - 2) continue;
    std::vector<int> vs = terms;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) vs.push_back(others[i]);
    best = std::min(best, mst_cost(inst, vs));
  }
  return best;
}

// All set partitions of {0..k-1}, recursively.
inline void set_partitions(int k, const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      visit(blocks);
      return;
    }
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      blocks[j].push_back(i);
      rec(i + 1);
      blocks[j].pop_back();
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
}

inline Rational steiner_forest(const Instance& inst) {
  std::optional<Rational> best;
  set_partitions(inst.num_pairs(), [&](const std::vector<std::vector<int>>& blocks) {
    Rational total(0);
    for (const auto& b : blocks) {
      std::vector<int> terms;
      for (int k : b) {
        terms.push_back(inst.demands()[k].s);
        terms.push_back(inst.demands()[k].t);
      }
      total += steiner_tree(inst, terms);
    }
    if (!best || total < *best) best = total;
  });
  return best.value_or(Rational(0));
}

// Dijkstra on the complete graph with zero-length edges inside each group
// (group -1 = alone).
inline Rational punctured(const Instance& inst, const std::vector<int>& group, int s, int t) {
  const int n = inst.num_vertices();
  auto w = [&](int u, int v) {
    if (u == v || (group[u] >= 0 && group[u] == group[v])) return Rational(0);
    return inst.d(u, v);
  };
  std::vector<std::optional<Rational>> dist(n);
  std::vector<char> done(n, 0);
  dist[s] = Rational(0);
  for (int it = 0; it < n; ++it) {
    int x = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && dist[v] && (x < 0 || *dist[v] < *dist[x])) x = v;
    done[x] = 1;
    for (int v = 0; v < n; ++v)
      if (!dist[v] || *dist[x] + w(x, v) < *dist[v]) dist[v] = *dist[x] + w(x, v);
  }
  return *dist[t];
}

}  // namespace oracle
