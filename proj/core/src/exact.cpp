#include "glutton/exact.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace glutton {

namespace {

// Dreyfus-Wagner over integer-scaled distances. g[mask][v] is the best tree
// for mask + {v} in which v is a branching point (or the terminal itself);
// f[mask][v] additionally allows one direct edge into v.
class SteinerDp {
 public:
  SteinerDp(const Instance& inst, std::vector<int> terms) : inst_(inst), terms_(std::move(terms)) {
    const int k = static_cast<int>(terms_.size());
    const int n = inst.num_vertices();
    const auto& w = inst.int_dist();
    const int full = 1 << k;
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    g_.assign(full, std::vector<std::int64_t>(n, inf));
    f_.assign(full, std::vector<std::int64_t>(n, inf));
    split_.assign(full, std::vector<int>(n, 0));
    via_.assign(full, std::vector<int>(n, -1));
    for (int i = 0; i < k; ++i)
      for (int v = 0; v < n; ++v) {
        g_[1 << i][v] = w[terms_[i]][v];
        f_[1 << i][v] = w[terms_[i]][v];
        via_[1 << i][v] = v;
      }
    for (int mask = 1; mask < full; ++mask) {
      if ((mask & (mask - 1)) == 0) continue;
      const int low = mask & -mask;
      for (int v = 0; v < n; ++v) {
        std::int64_t best = inf;
        int arg = 0;
        // submasks holding the lowest bit, each split counted once
        for (int sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
          if (!(sub & low)) continue;
          ++nodes_;
          std::int64_t c = f_[sub][v] + f_[mask ^ sub][v];
          if (c < best) best = c, arg = sub;
        }
        g_[mask][v] = best;
        split_[mask][v] = arg;
      }
      for (int v = 0; v < n; ++v) {
        std::int64_t best = inf;
        int arg = -1;
        for (int u = 0; u < n; ++u) {
          std::int64_t c = g_[mask][u] + w[u][v];
          if (c < best || (c == best && u == v)) best = c, arg = u;
        }
        f_[mask][v] = best;
        via_[mask][v] = arg;
      }
    }
  }

  int size() const { return static_cast<int>(terms_.size()); }
  std::int64_t nodes() const { return nodes_; }

  std::int64_t cost(int mask) const {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t x : f_[mask]) best = std::min(best, x);
    return best;
  }

  std::vector<Edge> edges(int mask) const {
    int root = 0;
    for (int v = 1; v < inst_.num_vertices(); ++v)
      if (f_[mask][v] < f_[mask][root]) root = v;
    std::vector<Edge> out;
    expand_f(mask, root, out);
    return out;
  }

 private:
  void add(int u, int v, std::vector<Edge>& out) const {
    if (u != v) out.push_back({std::min(u, v), std::max(u, v), inst_.d(u, v)});
  }
  void expand_f(int mask, int v, std::vector<Edge>& out) const {
    if ((mask & (mask - 1)) == 0) {
      add(terms_[__builtin_ctz(static_cast<unsigned>(mask))], v, out);
      return;
    }
    int u = via_[mask][v];
    add(u, v, out);
    expand_f(split_[mask][u], u, out);
    expand_f(mask ^ split_[mask][u], u, out);
  }

  const Instance& inst_;
  std::vector<int> terms_;
  std::vector<std::vector<std::int64_t>> g_, f_;
  std::vector<std::vector<int>> split_, via_;
  std::int64_t nodes_ = 0;
};

// Acyclic, no non-terminal leaves, no non-terminal vertex of degree 2.
std::vector<Edge> tidy(const Instance& inst, std::vector<Edge> edges, const std::vector<char>& keep) {
  const int n = inst.num_vertices();
  edges = maximal_acyclic(edges, n);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::vector<int>> inc(n);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      inc[edges[i].u].push_back(i);
      inc[edges[i].v].push_back(i);
    }
    for (int v = 0; v < n && !changed; ++v) {
      if (keep[v]) continue;
      if (inc[v].size() == 1) {
        edges.erase(edges.begin() + inc[v][0]);
        changed = true;
      } else if (inc[v].size() == 2) {
        const Edge& a = edges[inc[v][0]];
        const Edge& b = edges[inc[v][1]];
        int x = a.u == v ? a.v : a.u, y = b.u == v ? b.v : b.u;
        if (inst.d(x, y) <= a.length + b.length) {
          Edge e{std::min(x, y), std::max(x, y), inst.d(x, y)};
          int hi = std::max(inc[v][0], inc[v][1]), lo = std::min(inc[v][0], inc[v][1]);
          edges.erase(edges.begin() + hi);
          edges.erase(edges.begin() + lo);
          edges.push_back(e);
          changed = true;
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  return edges;
}

}  // namespace

OracleResult steiner_tree_exact(const Instance& inst, const std::vector<int>& terminals) {
  std::vector<int> terms = terminals;
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (static_cast<int>(terms.size()) > kMaxTreeTerminals)
    throw OracleLimit("steiner_tree_exact supports at most " + std::to_string(kMaxTreeTerminals) + " terminals");
  OracleResult res;
  if (terms.size() <= 1) return res;
  SteinerDp dp(inst, terms);
  const int full = (1 << dp.size()) - 1;
  res.cost = Rational(dp.cost(full), inst.denominator());
  std::vector<char> keep(inst.num_vertices(), 0);
  for (int v : terms) keep[v] = 1;
  res.forest = tidy(inst, dp.edges(full), keep);
  res.search_nodes = dp.nodes();
  return res;
}

bool within_oracle_limits(const Instance& inst) { return inst.num_pairs() <= kMaxForestPairs; }

OracleResult steiner_forest_exact(const Instance& inst) {
  const int K = inst.num_pairs();
  if (K > kMaxForestPairs)
    throw OracleLimit("steiner_forest_exact supports at most " + std::to_string(kMaxForestPairs) + " pairs");
  OracleResult res;
  if (K == 0) return res;
  std::vector<int> terms(2 * K);
  for (int t = 0; t < 2 * K; ++t) terms[t] = inst.terminal_vertex(t);
  SteinerDp dp(inst, terms);
  res.search_nodes = dp.nodes();

  std::vector<std::int64_t> block_cost(1 << K, -1);
  auto block = [&](int pairs_mask) {
    if (block_cost[pairs_mask] < 0) {
      int tmask = 0;
      for (int k = 0; k < K; ++k)
        if (pairs_mask >> k & 1) tmask |= 3 << (2 * k);
      block_cost[pairs_mask] = dp.cost(tmask);
    }
    return block_cost[pairs_mask];
  };

  // Restricted growth strings: pair k joins an existing block or opens a new one.
  std::vector<int> rgs(K, 0), best_rgs;
  std::int64_t best = -1;
  int best_blocks = 0;
  std::function<void(int, int)> walk = [&](int k, int blocks) {
    if (k == K) {
      ++res.search_nodes;
      std::vector<int> masks(blocks, 0);
      for (int i = 0; i < K; ++i) masks[rgs[i]] |= 1 << i;
      std::int64_t total = 0;
      for (int m : masks) total += block(m);
      if (best < 0 || total < best || (total == best && blocks > best_blocks)) {
        best = total;
        best_blocks = blocks;
        best_rgs = rgs;
      }
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[k] = b;
      walk(k + 1, std::max(blocks, b + 1));
    }
  };
  walk(0, 0);

  res.cost = Rational(best, inst.denominator());
  res.partition.assign(best_blocks, {});
  for (int k = 0; k < K; ++k) res.partition[best_rgs[k]].push_back(k);
  std::vector<Edge> all;
  std::vector<char> keep(inst.num_vertices(), 0);
  for (int v : terms) keep[v] = 1;
  for (const auto& blk : res.partition) {
    int tmask = 0;
    for (int k : blk) tmask |= 3 << (2 * k);
    auto e = dp.edges(tmask);
    all.insert(all.end(), e.begin(), e.end());
  }
  res.forest = tidy(inst, all, keep);
  return res;
}

}  // namespace glutton
