#include "glutton/greedy.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace glutton {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::merge: return "merge";
    case EventKind::contract: return "contract";
    case EventKind::pair_connect: return "pair-connect";
    case EventKind::tree_connect: return "tree-connect";
    case EventKind::moat_meet: return "moat-meet";
  }
  return "?";
}

Rational total_merging_distance(const RunTrace& trace) {
  Rational sum(0);
  for (const auto& ev : trace.events) sum += ev.distance;
  return sum;
}

TieRule TieRule::priorities(std::vector<int> priority) {
  std::vector<int> sorted = priority;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
    if (sorted[i] != i) throw std::invalid_argument("tie priorities must be a permutation of 0..2K-1");
  TieRule r;
  r.priority_ = std::move(priority);
  return r;
}

int TieRule::key(const Clustering& cl, NodeId id) const {
  if (is_lex()) return id;
  if (static_cast<int>(priority_.size()) != cl.instance().num_terminals())
    throw std::invalid_argument("tie priorities do not match the terminal count");
  int best = static_cast<int>(priority_.size()) + id;  // terminal-free supernodes rank last
  for (int term : cl.terminals(id)) best = std::min(best, priority_[term]);
  return best;
}

bool TieRule::before(const Clustering& cl, NodeId a1, NodeId a2, NodeId b1, NodeId b2) const {
  int ka1 = key(cl, a1), ka2 = key(cl, a2), kb1 = key(cl, b1), kb2 = key(cl, b2);
  return std::make_pair(std::min(ka1, ka2), std::max(ka1, ka2)) <
         std::make_pair(std::min(kb1, kb2), std::max(kb1, kb2));
}

std::vector<int> terminal_levels(const Instance& inst, int c) {
  std::vector<int> levels(inst.num_terminals());
  for (int term = 0; term < inst.num_terminals(); ++term)
    levels[term] = ceil_log(inst.pair_distance(Instance::pair_of(term)), c);
  return levels;
}

int leader(const Clustering& cl, NodeId id, const std::vector<int>& levels) {
  int best = -1;
  for (int term : cl.terminals(id))
    if (best < 0 || levels[term] > levels[best]) best = term;
  return best;
}

void rescale_trace(RunTrace& trace, const Rational& factor) {
  if (factor == 1) return;
  for (auto& ev : trace.events) {
    ev.distance *= factor;
    ev.time *= factor;
    for (auto& e : ev.bought) e.length *= factor;
  }
  for (auto& e : trace.forest) e.length *= factor;
  trace.cost *= factor;
}

namespace {

std::vector<Edge> zero_pair_edges(const Instance& inst) {
  std::vector<Edge> out;
  for (const auto& dm : inst.demands())
    if (inst.d(dm.s, dm.t) == 0) out.push_back({dm.s, dm.t, Rational(0)});
  return out;
}

void finish(RunTrace& tr, const Instance& inst, const Clustering& cl, const std::vector<Edge>& bought,
            const Rational& scale) {
  tr.forest = maximal_acyclic(bought, inst.num_vertices());
  tr.cost = total_length(tr.forest);
  tr.final_partition = cl.partition();
  tr.scale = scale;
  if (!connects_all(inst, tr.forest)) throw std::logic_error(tr.algorithm + " produced an infeasible forest");
  rescale_trace(tr, Rational(1) / scale);
}

}  // namespace

RunTrace gluttonous(const Instance& original, const TieRule& tie) {
  Normalized nz = normalize(original);
  const Instance& inst = nz.instance;
  Clustering cl(inst);
  PuncturedMetric pm(cl);
  RunTrace tr;
  tr.algorithm = "gluttonous";
  tr.tie = tie.name();
  std::vector<Edge> bought = zero_pair_edges(inst);
  for (int t = 1;; ++t) {
    std::vector<NodeId> act;
    for (NodeId id : cl.ids())
      if (cl.mate_active(id)) act.push_back(id);
    if (act.size() < 2) break;
    std::optional<PuncturedMetric::NodePath> best;
    NodeId ba = -1, bb = -1;
    for (std::size_t i = 0; i < act.size(); ++i)
      for (std::size_t j = i + 1; j < act.size(); ++j) {
        auto np = pm.between(act[i], act[j]);
        if (!best || np.distance < best->distance ||
            (np.distance == best->distance && tie.before(cl, act[i], act[j], ba, bb))) {
          best = std::move(np);
          ba = act[i];
          bb = act[j];
        }
      }
    MergeEvent ev;
    ev.iteration = t;
    ev.merged = {ba, bb};
    ev.distance = best->distance;
    ev.bought = pm.crossing_edges(best->path);
    ev.result = cl.merge(ba, bb);
    bought.insert(bought.end(), ev.bought.begin(), ev.bought.end());
    tr.events.push_back(std::move(ev));
  }
  finish(tr, inst, cl, bought, nz.scale);
  return tr;
}

namespace {

struct Candidate {
  NodeId a, b;
  PuncturedMetric::NodePath path;
  std::vector<Edge> bought;  // taken in the metric the pair was chosen in
};

}  // namespace

RunTrace timed_gluttonous(const Instance& original, int c) {
  if (c < 2) throw std::invalid_argument("timed gluttonous needs c >= 2");
  Normalized nz = normalize(original);
  const Instance& inst = nz.instance;
  const auto levels = terminal_levels(inst, c);
  const int top = levels.empty() ? -1 : *std::max_element(levels.begin(), levels.end());
  Clustering cl(inst);
  PuncturedMetric pm(cl);
  RunTrace tr;
  tr.algorithm = "timed";
  tr.c = c;
  std::vector<Edge> bought = zero_pair_edges(inst);
  int t = 0;
  for (int stage = 0; stage <= top; ++stage) {
    tr.stage_partitions.push_back(cl.partition());
    const Rational threshold = ipow(c, stage + 1);
    std::vector<NodeId> act;
    for (NodeId id : cl.ids())
      if (levels[leader(cl, id, levels)] >= stage) act.push_back(id);
    // Auxiliary graph edges in lexicographic order; keep a maximal acyclic subset.
    UnionFind uf(static_cast<int>(act.size()));
    std::vector<Candidate> chosen;
    for (std::size_t i = 0; i < act.size(); ++i)
      for (std::size_t j = i + 1; j < act.size(); ++j) {
        auto np = pm.between(act[i], act[j]);
        if (np.distance < threshold && uf.unite(static_cast<int>(i), static_cast<int>(j))) {
          auto edges = pm.crossing_edges(np.path);
          chosen.push_back({act[i], act[j], std::move(np), std::move(edges)});
        }
      }
    std::map<NodeId, NodeId> current;
    for (NodeId id : act) current[id] = id;
    auto resolve = [&](NodeId id) {
      while (current[id] != id) id = current[id];
      return id;
    };
    for (auto& cand : chosen) {
      MergeEvent ev;
      ev.iteration = ++t;
      ev.stage = stage;
      ev.leaders[0] = leader(cl, cand.a, levels);
      ev.leaders[1] = leader(cl, cand.b, levels);
      NodeId ra = resolve(cand.a), rb = resolve(cand.b);
      ev.merged = {ra, rb};
      ev.distance = cand.path.distance;
      ev.bought = std::move(cand.bought);
      ev.result = cl.merge(ra, rb);
      current[ra] = ev.result;
      current[rb] = ev.result;
      current[ev.result] = ev.result;
      bought.insert(bought.end(), ev.bought.begin(), ev.bought.end());
      tr.events.push_back(std::move(ev));
    }
  }
  tr.stage_partitions.push_back(cl.partition());
  finish(tr, inst, cl, bought, nz.scale);
  return tr;
}

RunTrace timed_gluttonous_iterative(const Instance& original, int c) {
  if (c < 2) throw std::invalid_argument("timed gluttonous needs c >= 2");
  Normalized nz = normalize(original);
  const Instance& inst = nz.instance;
  const auto levels = terminal_levels(inst, c);
  const int top = levels.empty() ? -1 : *std::max_element(levels.begin(), levels.end());
  Clustering cl(inst);
  PuncturedMetric pm(cl);
  RunTrace tr;
  tr.algorithm = "timed-iterative";
  tr.c = c;
  std::vector<Edge> bought = zero_pair_edges(inst);
  int t = 0;
  for (int stage = 0; stage <= top; ++stage) {
    tr.stage_partitions.push_back(cl.partition());
    const Rational threshold = ipow(c, stage + 1);
    for (;;) {
      std::vector<NodeId> act;
      for (NodeId id : cl.ids())
        if (levels[leader(cl, id, levels)] >= stage) act.push_back(id);
      std::optional<Candidate> best;
      for (std::size_t i = 0; i < act.size(); ++i)
        for (std::size_t j = i + 1; j < act.size(); ++j) {
          auto np = pm.between(act[i], act[j]);
          if (np.distance < threshold && (!best || np.distance < best->path.distance))
            best = Candidate{act[i], act[j], std::move(np), {}};
        }
      if (!best) break;
      MergeEvent ev;
      ev.iteration = ++t;
      ev.stage = stage;
      ev.leaders[0] = leader(cl, best->a, levels);
      ev.leaders[1] = leader(cl, best->b, levels);
      ev.merged = {best->a, best->b};
      ev.distance = best->path.distance;
      ev.bought = pm.crossing_edges(best->path.path);
      ev.result = cl.merge(best->a, best->b);
      bought.insert(bought.end(), ev.bought.begin(), ev.bought.end());
      tr.events.push_back(std::move(ev));
    }
  }
  tr.stage_partitions.push_back(cl.partition());
  finish(tr, inst, cl, bought, nz.scale);
  return tr;
}

RunTrace gluttonous_contract(const Instance& original, const TieRule& tie) {
  Normalized nz = normalize(original);
  const Instance& inst = nz.instance;
  const int n = inst.num_vertices();
  const auto& w = inst.int_dist();
  Clustering cl(inst);
  RunTrace tr;
  tr.algorithm = "contract";
  tr.tie = tie.name();
  std::vector<Edge> bought = zero_pair_edges(inst);

  for (int t = 1;; ++t) {
    // Units: present supernodes, then free vertices.
    struct Unit {
      NodeId node;  // -1 for a free vertex
      std::vector<int> verts;
      bool active;
    };
    std::vector<Unit> units;
    for (NodeId id : cl.ids()) units.push_back({id, cl.vertices(id), cl.mate_active(id)});
    for (int v = 0; v < n; ++v)
      if (cl.owner(v) < 0) units.push_back({-1, {v}, false});
    const int U = static_cast<int>(units.size());
    int n_active = 0;
    for (const auto& u : units) n_active += u.active;
    if (n_active < 2) break;

    // Unit-to-unit lengths with witnessing vertex pairs.
    std::vector<std::vector<std::int64_t>> len(U, std::vector<std::int64_t>(U, 0));
    std::vector<std::vector<std::pair<int, int>>> wit(U, std::vector<std::pair<int, int>>(U));
    for (int a = 0; a < U; ++a)
      for (int b = 0; b < U; ++b) {
        if (a == b) continue;
        std::int64_t best = -1;
        for (int x : units[a].verts)
          for (int y : units[b].verts)
            if (best < 0 || w[x][y] < best) {
              best = w[x][y];
              wit[a][b] = {x, y};
            }
        len[a][b] = best;
      }

    std::int64_t best_d = -1;
    int best_a = -1, best_b = -1;
    std::vector<int> best_prev;
    for (int a = 0; a < U; ++a) {
      if (!units[a].active) continue;
      // Dijkstra that may pass through inactive units only.
      std::vector<std::int64_t> dist(U, -1);
      std::vector<int> prev(U, -1);
      std::vector<char> done(U, 0);
      dist[a] = 0;
      for (;;) {
        int x = -1;
        for (int y = 0; y < U; ++y)
          if (!done[y] && dist[y] >= 0 && (x < 0 || dist[y] < dist[x])) x = y;
        if (x < 0) break;
        done[x] = 1;
        if (x != a && units[x].active) continue;
        for (int y = 0; y < U; ++y) {
          if (done[y] || y == x) continue;
          std::int64_t nd = dist[x] + len[x][y];
          if (dist[y] < 0 || nd < dist[y]) {
            dist[y] = nd;
            prev[y] = x;
          }
        }
      }
      for (int b = a + 1; b < U; ++b) {
        if (!units[b].active || dist[b] < 0) continue;
        bool better = best_d < 0 || dist[b] < best_d ||
                      (dist[b] == best_d &&
                       tie.before(cl, units[a].node, units[b].node, units[best_a].node, units[best_b].node));
        if (better) {
          best_d = dist[b];
          best_a = a;
          best_b = b;
          best_prev = prev;
        }
      }
    }

    std::vector<int> chain{best_b};
    while (chain.back() != best_a) chain.push_back(best_prev[chain.back()]);
    std::reverse(chain.begin(), chain.end());
    MergeEvent ev;
    ev.iteration = t;
    ev.kind = EventKind::contract;
    ev.distance = Rational(best_d, inst.denominator());
    ev.merged = {units[best_a].node, units[best_b].node};
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      auto [x, y] = wit[chain[i]][chain[i + 1]];
      ev.bought.push_back({x, y, inst.d(x, y)});
    }
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
      const Unit& u = units[chain[i]];
      if (u.node >= 0)
        ev.merged.push_back(u.node);
      else
        ev.absorbed_vertices.push_back(u.verts.front());
    }
    ev.result = cl.merge(ev.merged, ev.absorbed_vertices);
    bought.insert(bought.end(), ev.bought.begin(), ev.bought.end());
    tr.events.push_back(std::move(ev));
  }
  finish(tr, inst, cl, bought, nz.scale);
  return tr;
}

RunTrace paired_greedy(const Instance& original) {
  Normalized nz = normalize(original);
  const Instance& inst = nz.instance;
  Clustering cl(inst);
  PuncturedMetric pm(cl);
  RunTrace tr;
  tr.algorithm = "paired";
  std::vector<Edge> bought = zero_pair_edges(inst);
  for (int t = 1;; ++t) {
    int best = -1;
    Rational best_d;
    for (int k = 0; k < inst.num_pairs(); ++k) {
      const Demand& dm = inst.demands()[k];
      if (cl.owner(dm.s) == cl.owner(dm.t)) continue;
      Rational d = pm.distance(dm.s, dm.t);
      if (best < 0 || d < best_d) {
        best = k;
        best_d = d;
      }
    }
    if (best < 0) break;
    const Demand& dm = inst.demands()[best];
    auto path = pm.path(dm.s, dm.t);
    MergeEvent ev;
    ev.iteration = t;
    ev.kind = EventKind::pair_connect;
    ev.pair = best;
    ev.distance = best_d;
    ev.bought = pm.crossing_edges(path);
    for (int v : path) {
      NodeId o = cl.owner(v);
      if (o >= 0) {
        if (std::find(ev.merged.begin(), ev.merged.end(), o) == ev.merged.end()) ev.merged.push_back(o);
      } else if (std::find(ev.absorbed_vertices.begin(), ev.absorbed_vertices.end(), v) ==
                 ev.absorbed_vertices.end()) {
        ev.absorbed_vertices.push_back(v);
      }
    }
    // selected pair first: the supernodes of s and s-bar
    auto it = std::find(ev.merged.begin(), ev.merged.end(), cl.owner(dm.t));
    std::rotate(ev.merged.begin() + 1, it, it + 1);
    ev.result = cl.merge(ev.merged, ev.absorbed_vertices);
    bought.insert(bought.end(), ev.bought.begin(), ev.bought.end());
    tr.events.push_back(std::move(ev));
  }
  finish(tr, inst, cl, bought, nz.scale);
  return tr;
}

}  // namespace glutton
