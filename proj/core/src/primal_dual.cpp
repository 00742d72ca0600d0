#include "glutton/primal_dual.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "glutton/greedy.hpp"

namespace glutton {

ActivitySchedule half_distance_schedule(const Instance& inst) {
  ActivitySchedule tau(inst.num_terminals());
  for (int term = 0; term < inst.num_terminals(); ++term)
    tau[term] = inst.pair_distance(Instance::pair_of(term)) / 2;
  return tau;
}

ActivitySchedule group_strict_schedule(const Instance& inst, int c) {
  if (c < 2) throw std::invalid_argument("group-strict schedule needs c >= 2");
  Normalized nz = normalize(inst);
  auto levels = terminal_levels(nz.instance, c);
  ActivitySchedule tau(inst.num_terminals());
  for (int term = 0; term < inst.num_terminals(); ++term)
    tau[term] = Rational(6) * ipow(c, levels[term] + 1) / nz.scale;
  return tau;
}

ActivitySchedule scale_schedule(ActivitySchedule tau, const Rational& factor) {
  for (auto& x : tau) x *= factor;
  return tau;
}

std::vector<int> MoatHistory::moats_before(const Rational& time) const {
  UnionFind uf(n);
  for (const auto& ev : events)
    if (ev.time < time) uf.unite(ev.edge.u, ev.edge.v);
  std::vector<int> label(n), first(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = uf.find(v);
    if (first[r] < 0) first[r] = v;
    label[v] = first[r];
  }
  return label;
}

namespace {

std::vector<Edge> prune_timed(const Instance& inst, const ActivitySchedule& tau, const std::vector<Edge>& edges,
                              const std::vector<Rational>& when) {
  const int n = inst.num_vertices();
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    UnionFind uf(n);
    for (std::size_t j = 0; j < edges.size(); ++j)
      if (j != i) uf.unite(edges[j].u, edges[j].v);
    int side_a = uf.find(edges[i].u), side_b = uf.find(edges[i].v);
    bool live_a = false, live_b = false;
    for (int term = 0; term < inst.num_terminals(); ++term) {
      if (tau[term] < when[i]) continue;
      int r = uf.find(inst.terminal_vertex(term));
      live_a |= r == side_a;
      live_b |= r == side_b;
    }
    if (live_a && live_b) kept.push_back(edges[i]);
  }
  return kept;
}

std::vector<Edge> prune_reverse_delete(const Instance& inst, std::vector<Edge> edges) {
  std::vector<int> served;
  for (int k = 0; k < inst.num_pairs(); ++k)
    if (connects_pairs(inst, edges, {k})) served.push_back(k);
  for (int i = static_cast<int>(edges.size()) - 1; i >= 0; --i) {
    std::vector<Edge> without = edges;
    without.erase(without.begin() + i);
    if (connects_pairs(inst, without, served)) edges = std::move(without);
  }
  return edges;
}

}  // namespace

PrimalDualResult timed_primal_dual(const Instance& inst, const ActivitySchedule& tau, PruneRule prune) {
  if (static_cast<int>(tau.size()) != inst.num_terminals())
    throw std::invalid_argument("schedule does not cover every terminal");
  for (const auto& x : tau)
    if (x < 0) throw std::invalid_argument("negative activity time");

  const int n = inst.num_vertices();
  std::vector<int> comp(n);
  std::vector<std::vector<int>> members;
  for (int v = 0; v < n; ++v) {
    comp[v] = v;
    members.push_back({v});
  }
  std::vector<Rational> radius(n, Rational(0));
  std::vector<char> grew(n, 0);
  PrimalDualResult out;
  MoatHistory& h = out.history;
  h.n = n;
  RunTrace& tr = out.trace;
  tr.algorithm = "tpd";

  Rational clock(0);
  auto growing = [&](int c) {
    for (int v : members[c]) {
      int term = inst.terminal_at(v);
      if (term >= 0 && clock < tau[term]) return true;
    }
    return false;
  };
  auto separates = [&](int c) {
    for (int v : members[c]) {
      int term = inst.terminal_at(v);
      if (term >= 0 && comp[inst.terminal_vertex(Instance::mate(term))] != c) return true;
    }
    return false;
  };

  for (int round = 0;; ++round) {
    std::vector<char> g(members.size(), 0);
    bool any = false;
    for (int c = 0; c < static_cast<int>(members.size()); ++c)
      if (!members[c].empty() && growing(c)) g[c] = 1, any = true;
    if (!any) break;

    std::optional<Rational> next;
    auto offer = [&](const Rational& t) {
      if (!next || t < *next) next = t;
    };
    for (int term = 0; term < inst.num_terminals(); ++term)
      if (clock < tau[term]) offer(tau[term]);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (comp[u] == comp[v]) continue;
        int rate = g[comp[u]] + g[comp[v]];
        if (rate == 0) continue;
        Rational slack = inst.d(u, v) - radius[u] - radius[v];
        offer(clock + slack / rate);
      }
    const Rational dt = *next - clock;
    std::fill(grew.begin(), grew.end(), 0);
    if (dt > 0) {
      for (int c = 0; c < static_cast<int>(members.size()); ++c) {
        if (!g[c]) continue;
        h.total_dual += dt;
        if (separates(c)) h.lower_bound += dt;
        for (int v : members[c]) {
          radius[v] += dt;
          grew[v] = 1;
        }
      }
    }
    clock = *next;

    // Merge tight pairs one at a time in (component, component, u, v) order.
    for (;;) {
      std::optional<std::tuple<int, int, int, int>> pick;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
          int cu = comp[u], cv = comp[v];
          if (cu == cv) continue;
          Rational slack = inst.d(u, v) - radius[u] - radius[v];
          if (slack < 0) h.dual_feasible = false;
          if (slack != 0) continue;
          if (!(grew[u] || grew[v] || growing(cu) || growing(cv))) continue;
          auto key = std::make_tuple(std::min(cu, cv), std::max(cu, cv), u, v);
          if (!pick || key < *pick) pick = key;
        }
      if (!pick) break;
      auto [ca, cb, u, v] = *pick;
      int id = static_cast<int>(members.size());
      std::vector<int> joined = members[ca];
      joined.insert(joined.end(), members[cb].begin(), members[cb].end());
      std::sort(joined.begin(), joined.end());
      members[ca].clear();
      members[cb].clear();
      for (int x : joined) comp[x] = id;
      members.push_back(std::move(joined));
      Edge e{u, v, inst.d(u, v)};
      h.events.push_back({clock, ca, cb, id, e});
      h.unpruned.push_back(e);
      h.tight_time.push_back(clock);
      MergeEvent ev;
      ev.iteration = static_cast<int>(tr.events.size()) + 1;
      ev.kind = EventKind::moat_meet;
      ev.merged = {ca, cb};
      ev.result = id;
      ev.time = clock;
      ev.distance = e.length;
      ev.bought = {e};
      tr.events.push_back(std::move(ev));
    }
  }
  h.final_time = clock;

  switch (prune) {
    case PruneRule::timed: tr.forest = prune_timed(inst, tau, h.unpruned, h.tight_time); break;
    case PruneRule::reverse_delete: tr.forest = prune_reverse_delete(inst, h.unpruned); break;
    case PruneRule::none: tr.forest = h.unpruned; break;
  }
  tr.cost = total_length(tr.forest);
  {
    UnionFind uf(n);
    for (const auto& e : tr.forest) uf.unite(e.u, e.v);
    std::vector<std::vector<int>> parts;
    std::vector<int> slot(n, -1);
    for (int term = 0; term < inst.num_terminals(); ++term) {
      int r = uf.find(inst.terminal_vertex(term));
      if (slot[r] < 0) {
        slot[r] = static_cast<int>(parts.size());
        parts.emplace_back();
      }
      parts[slot[r]].push_back(term);
    }
    std::sort(parts.begin(), parts.end());
    tr.final_partition = std::move(parts);
  }
  return out;
}

PrimalDualResult group_strict_A_history(const Instance& inst, int c, PruneRule prune) {
  auto res = timed_primal_dual(inst, group_strict_schedule(inst, c), prune);
  res.trace.algorithm = "groupstrict-A";
  res.trace.c = c;
  return res;
}

RunTrace group_strict_A(const Instance& inst, int c, PruneRule prune) {
  return group_strict_A_history(inst, c, prune).trace;
}

RunTrace unistrict_A(const Instance& inst, int c) {
  RunTrace tr = timed_gluttonous(inst, c);
  tr.algorithm = "unistrict-A";
  const int n = inst.num_vertices();
  std::vector<Edge> forest = tr.forest;
  for (;;) {
    auto trees = split_trees(inst, forest);
    std::vector<Rational> width;
    for (const auto& t : trees) width.push_back(tree_width(inst, t).value);
    std::vector<int> groups(n, -1);
    for (int i = 0; i < static_cast<int>(trees.size()); ++i)
      for (int v : trees[i].vertices) groups[v] = i;
    PuncturedMetric pm(inst, groups);
    std::optional<Rational> best;
    int ba = -1, bb = -1, bu = -1, bv = -1;
    for (int a = 0; a < static_cast<int>(trees.size()); ++a)
      for (int b = a + 1; b < static_cast<int>(trees.size()); ++b) {
        Rational d(-1);
        int wu = -1, wv = -1;
        for (int u : trees[a].vertices)
          for (int v : trees[b].vertices) {
            Rational x = pm.distance(u, v);
            if (d < 0 || x < d) d = x, wu = u, wv = v;
          }
        if (d > 5 * rmin(width[a], width[b])) continue;
        if (!best || d < *best) best = d, ba = a, bb = b, bu = wu, bv = wv;
      }
    if (!best) break;
    MergeEvent ev;
    ev.iteration = static_cast<int>(tr.events.size()) + 1;
    ev.kind = EventKind::tree_connect;
    ev.merged = {trees[ba].vertices.front(), trees[bb].vertices.front()};
    ev.distance = *best;
    ev.bought = pm.crossing_edges(pm.path(bu, bv));
    forest.insert(forest.end(), ev.bought.begin(), ev.bought.end());
    forest = maximal_acyclic(forest, n);
    tr.events.push_back(std::move(ev));
  }
  tr.forest = forest;
  tr.cost = total_length(forest);
  return tr;
}

}  // namespace glutton
