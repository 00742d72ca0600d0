#include "glutton/generators.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <stdexcept>

#include "glutton/rng.hpp"

namespace glutton {

Matrix graph_metric(int n, const std::vector<WeightedEdge>& edges) {
  std::vector<std::vector<std::optional<Rational>>> m(n, std::vector<std::optional<Rational>>(n));
  for (int v = 0; v < n; ++v) m[v][v] = Rational(0);
  for (const auto& e : edges) {
    if (!m[e.u][e.v] || e.length < *m[e.u][e.v]) {
      m[e.u][e.v] = e.length;
      m[e.v][e.u] = e.length;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!m[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (!m[k][j]) continue;
        Rational via = *m[i][k] + *m[k][j];
        if (!m[i][j] || via < *m[i][j]) m[i][j] = via;
      }
    }
  Matrix out(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!m[i][j]) throw std::invalid_argument("graph is disconnected");
      out[i][j] = *m[i][j];
    }
  return out;
}

Instance gen_ladder(int N, const Rational& eps) {
  if (N < 1) throw std::invalid_argument("ladder needs N >= 1");
  if (eps <= 0) throw std::invalid_argument("ladder needs eps > 0");
  const int n = 2 * N + 2;
  auto top = [](int i) { return 2 * i; };
  auto bot = [](int i) { return 2 * i + 1; };
  std::vector<WeightedEdge> edges;
  for (int i = 1; i <= N; ++i) {
    edges.push_back({top(i), bot(i), Rational(2)});
    if (i < N) {
      edges.push_back({top(i), top(i + 1), Rational(2)});
      edges.push_back({bot(i), bot(i + 1), Rational(2)});
    }
  }
  edges.push_back({0, top(1), Rational(2) + eps});
  edges.push_back({top(N), 1, Rational(2) + eps});
  std::vector<Demand> demands{{0, 1}};
  for (int i = 1; i <= N; ++i) demands.push_back({top(i), bot(i)});
  return Instance(graph_metric(n, edges), std::move(demands));
}

namespace {

CubicGraph from_lcf(std::string name, int n, const std::vector<int>& lcf, int girth) {
  CubicGraph g{std::move(name), n, {}, girth};
  for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  for (int i = 0; i < n; ++i) {
    int j = ((i + lcf[i % lcf.size()]) % n + n) % n;
    if (i < j) g.edges.emplace_back(i, j);
  }
  return g;
}

std::vector<std::vector<std::pair<int, int>>> adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    adj[edges[id].first].emplace_back(edges[id].second, id);
    adj[edges[id].second].emplace_back(edges[id].first, id);
  }
  return adj;
}

}  // namespace

CubicGraph cubic_graph(const std::string& name) {
  if (name == "k4") return from_lcf("k4", 4, {2, 2}, 3);
  if (name == "k33") return from_lcf("k33", 6, {3}, 4);
  if (name == "petersen") {
    CubicGraph g{"petersen", 10, {}, 5};
    for (int i = 0; i < 5; ++i) g.edges.emplace_back(i, (i + 1) % 5);
    for (int i = 0; i < 5; ++i) g.edges.emplace_back(i, i + 5);
    for (int i = 0; i < 5; ++i) g.edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    return g;
  }
  if (name == "heawood") return from_lcf("heawood", 14, {5, -5}, 6);
  if (name == "mcgee") return from_lcf("mcgee", 24, {12, 7, -7}, 7);
  if (name == "tutte-coxeter") return from_lcf("tutte-coxeter", 30, {-13, -9, 7, -7, 9, 13}, 8);
  throw std::invalid_argument("unknown cubic graph '" + name + "'");
}

std::vector<std::string> cubic_graph_names() {
  return {"k4", "k33", "petersen", "heawood", "mcgee", "tutte-coxeter"};
}

int bfs_girth(int n, const std::vector<std::pair<int, int>>& edges) {
  auto adj = adjacency(n, edges);
  int best = 0;
  for (int root = 0; root < n; ++root) {
    std::vector<int> dist(n, -1), via(n, -1);
    std::queue<int> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (auto [w, id] : adj[u]) {
        if (id == via[u]) continue;
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          via[w] = id;
          q.push(w);
        } else {
          int len = dist[u] + dist[w] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

GirthInstanceSpec make_girth_spec(const CubicGraph& g) {
  auto adj = adjacency(g.n, g.edges);
  for (int v = 0; v < g.n; ++v)
    if (adj[v].size() != 3) throw std::invalid_argument("not cubic: vertex " + std::to_string(v));
  int measured = bfs_girth(g.n, g.edges);
  if (measured != g.girth)
    throw std::invalid_argument("girth record wrong: recorded " + std::to_string(g.girth) + ", measured " +
                                std::to_string(measured));
  GirthInstanceSpec spec{g, {}, Rational(g.girth, 2)};
  std::vector<char> seen(g.n, 0);
  std::queue<int> q;
  seen[0] = 1;
  q.push(0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (auto [w, id] : adj[u])
      if (!seen[w]) {
        seen[w] = 1;
        spec.tree_edges.push_back(id);
        q.push(w);
      }
  }
  if (static_cast<int>(spec.tree_edges.size()) != g.n - 1) throw std::invalid_argument("graph is disconnected");
  std::sort(spec.tree_edges.begin(), spec.tree_edges.end());
  return spec;
}

GirthInstance gen_girth_lb(const GirthInstanceSpec& spec) {
  const CubicGraph& g = spec.base;
  auto adj = adjacency(g.n, g.edges);
  for (int v = 0; v < g.n; ++v)
    if (adj[v].size() != 3) throw std::invalid_argument("not cubic: vertex " + std::to_string(v));
  if (bfs_girth(g.n, g.edges) != g.girth) throw std::invalid_argument("girth record wrong");
  if (static_cast<int>(spec.tree_edges.size()) != g.n - 1) throw std::invalid_argument("spanning tree has wrong size");

  GirthInstance out;
  std::vector<char> in_tree(g.edges.size(), 0);
  for (int id : spec.tree_edges) in_tree.at(id) = 1;
  std::vector<WeightedEdge> weighted;
  for (int id = 0; id < static_cast<int>(g.edges.size()); ++id) {
    auto [u, v] = g.edges[id];
    if (in_tree[id]) {
      weighted.push_back({u, v, Rational(1)});
    } else {
      weighted.push_back({u, v, spec.long_edge_length});
      out.non_tree_edges.push_back(id);
    }
  }
  std::vector<char> matched(g.n, 0);
  std::vector<Demand> demands;
  for (int id : out.non_tree_edges) {
    auto [u, v] = g.edges[id];
    if (matched[u] || matched[v]) continue;
    matched[u] = matched[v] = 1;
    out.matching.push_back(id);
    demands.push_back({u, v});
  }
  out.instance = Instance(graph_metric(g.n, weighted), std::move(demands));
  return out;
}

Instance gen_random(const RandomSpec& spec) {
  if (spec.pairs < 1 || spec.steiner < 0) throw std::invalid_argument("bad random spec");
  const int n = 2 * spec.pairs + spec.steiner;
  Rng rng(spec.seed);
  Matrix m;
  if (spec.family == RandomFamily::euclidean) {
    std::vector<std::pair<int, int>> pts;
    while (static_cast<int>(pts.size()) < n) {
      std::pair<int, int> p{rng.range(0, 19), rng.range(0, 19)};
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    m.assign(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        long dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
        long sq = dx * dx + dy * dy;
        long r = static_cast<long>(std::sqrt(static_cast<double>(sq)));
        while (r * r > sq) --r;
        while (r * r < sq) ++r;
        m[i][j] = Rational(r);
      }
    metric_closure(m);
  } else {
    std::vector<WeightedEdge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({v, rng.range(0, v - 1), Rational(rng.range(1, 9))});
    int extra = n;
    for (int e = 0; e < extra; ++e) {
      int u = rng.range(0, n - 1), v = rng.range(0, n - 1);
      if (u != v) edges.push_back({u, v, Rational(rng.range(1, 9))});
    }
    m = graph_metric(n, edges);
  }
  // Terminals are a random subset of the vertices.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  std::vector<Demand> demands;
  for (int k = 0; k < spec.pairs; ++k) demands.push_back({perm[2 * k], perm[2 * k + 1]});
  return Instance(std::move(m), std::move(demands));
}

Instance random_suite_instance(int i, std::uint64_t base_seed) {
  RandomSpec spec;
  spec.pairs = 1 + i % 6;
  spec.steiner = std::min(14 - 2 * spec.pairs, (i / 6) % 4);
  spec.seed = Rng::mix(base_seed + static_cast<std::uint64_t>(i));
  spec.family = (i / 2) % 2 == 0 ? RandomFamily::euclidean : RandomFamily::graph;
  return gen_random(spec);
}

}  // namespace glutton
