#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "glutton/certifiers.hpp"

namespace glutton {

const char* to_string(DeletionRule rule) {
  return rule == DeletionRule::highest_potential ? "highest-potential" : "first-edge";
}

namespace {

enum class Fate { live, deleted, shortcut };

struct CEdge {
  int a = -1, b = -1;    // candidate-forest nodes
  int ou = -1, ov = -1;  // original endpoints (ou sits in a, ov in b)
  Rational length, phi;
  int parents[2] = {-1, -1};
  int born = 0;  // relevant iteration that created it, 0 for the initial tree
  int died = 0;
  Fate fate = Fate::live;
};

struct CNode {
  NodeId super = -1;  // supernode, or -1 for a Steiner vertex of the tree
  bool alive = true;
};

struct Relevant {
  int iteration = 0;
  int index = 0;  // 1-based among relevant iterations
  Rational delta;
  int active = 0;  // N_t
  int deleted_edge = -1;
};

class CandidateForest {
 public:
  CandidateForest(const Instance& inst, const Clustering& cl) : inst_(inst), cl_(cl) {}

  int add_node(NodeId super) {
    nodes_.push_back({super, true});
    return static_cast<int>(nodes_.size()) - 1;
  }
  int add_edge(int a, int b, int ou, int ov, const Rational& phi, int born, int p0 = -1, int p1 = -1) {
    CEdge e;
    e.a = a, e.b = b, e.ou = ou, e.ov = ov;
    e.length = inst_.d(ou, ov);
    e.phi = phi;
    e.parents[0] = p0, e.parents[1] = p1;
    e.born = born;
    edges_.push_back(e);
    return static_cast<int>(edges_.size()) - 1;
  }

  bool active(int x) const { return nodes_[x].super >= 0 && cl_.mate_active(nodes_[x].super); }
  std::vector<int> incident(int x) const {
    std::vector<int> out;
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id)
      if (edges_[id].fate == Fate::live && (edges_[id].a == x || edges_[id].b == x)) out.push_back(id);
    return out;
  }
  int degree(int x) const {
    int d = 0;
    for (int id : incident(x)) d += (edges_[id].a == x) + (edges_[id].b == x);
    return d;
  }
  bool has_loop(int x) const {
    for (int id : incident(x))
      if (edges_[id].a == edges_[id].b) return true;
    return false;
  }

  void kill(int id, Fate fate, int when) {
    edges_[id].fate = fate;
    edges_[id].died = when;
  }

  // Replaces the two edges at x by one edge between their far ends.
  int shortcut(int x, int when) {
    auto inc = incident(x);
    const CEdge e1 = edges_[inc[0]], e2 = edges_[inc[1]];
    auto far = [&](const CEdge& e, int& node, int& orig) {
      if (e.a == x) node = e.b, orig = e.ov;
      else node = e.a, orig = e.ou;
    };
    int n1, o1, n2, o2;
    far(e1, n1, o1);
    far(e2, n2, o2);
    kill(inc[0], Fate::shortcut, when);
    kill(inc[1], Fate::shortcut, when);
    nodes_[x].alive = false;
    return add_edge(n1, n2, o1, o2, e1.phi + e2.phi, when, inc[0], inc[1]);
  }

  // Edges of the unique cycle: what survives peeling degree-1 nodes.
  std::vector<int> cycle() const {
    std::vector<int> deg(nodes_.size(), 0);
    std::vector<int> live;
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id)
      if (edges_[id].fate == Fate::live) {
        live.push_back(id);
        ++deg[edges_[id].a];
        ++deg[edges_[id].b];
      }
    std::vector<bool> gone(nodes_.size(), false);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < static_cast<int>(nodes_.size()); ++x) {
        if (gone[x] || deg[x] != 1) continue;
        gone[x] = true;
        changed = true;
        for (int id : live) {
          const CEdge& e = edges_[id];
          if (e.a == x && !gone[e.b]) --deg[e.b];
          if (e.b == x && !gone[e.a]) --deg[e.a];
        }
        deg[x] = 0;
      }
    }
    std::vector<int> out;
    for (int id : live)
      if (!gone[edges_[id].a] && !gone[edges_[id].b]) out.push_back(id);
    return out;
  }

  std::vector<int> live_edges() const {
    std::vector<int> out;
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id)
      if (edges_[id].fate == Fate::live) out.push_back(id);
    return out;
  }
  int live_active() const {
    std::set<int> seen;
    for (int id : live_edges())
      for (int x : {edges_[id].a, edges_[id].b})
        if (active(x)) seen.insert(x);
    return static_cast<int>(seen.size());
  }

  std::vector<CNode> nodes_;
  std::vector<CEdge> edges_;

 private:
  const Instance& inst_;
  const Clustering& cl_;
};

// Edges of the tree at the start of relevant iteration t0 that were
// shortcut into edge `id`.
void base_set(const std::vector<CEdge>& edges, int id, int t0, std::vector<int>& out) {
  const CEdge& e = edges[id];
  if (e.born < t0) {
    out.push_back(id);
    return;
  }
  for (int p : e.parents) base_set(edges, p, t0, out);
}

int head_of(const std::vector<CEdge>& edges, const std::vector<int>& base) {
  int best = base.front();
  for (int id : base)
    if (edges[id].length > edges[best].length || (edges[id].length == edges[best].length && id < best)) best = id;
  return best;
}

}  // namespace

CertificateReport updateforest_trace(const Instance& inst, const std::vector<Edge>& tstar, const RunTrace& trace,
                                     DeletionRule rule) {
  if (trace.algorithm != "gluttonous") throw std::invalid_argument("updateforest replays gluttonous traces");
  const int n = inst.num_vertices();
  if (tstar.empty() || !is_acyclic(tstar, n)) throw std::invalid_argument("Tstar is not a tree");
  auto trees = split_trees(inst, tstar);
  if (trees.size() != 1) throw std::invalid_argument("Tstar is not a tree");
  const Tree& tree = trees.front();
  std::vector<bool> in_tree(n, false);
  for (int v : tree.vertices) in_tree[v] = true;
  for (const auto& dm : inst.demands())
    if (in_tree[dm.s] != in_tree[dm.t]) throw std::invalid_argument("Tstar separates a demand pair");

  CertificateReport rep("updateforest");
  const Rational cost = total_length(tstar);
  Clustering cl(inst);
  CandidateForest cf(inst, cl);
  std::map<NodeId, int> node_of_super;
  std::map<int, int> node_of_vertex;
  auto node_for = [&](int v) {
    NodeId s = cl.owner(v);
    if (s >= 0) {
      auto it = node_of_super.find(s);
      if (it != node_of_super.end()) return it->second;
      return node_of_super[s] = cf.add_node(s);
    }
    auto it = node_of_vertex.find(v);
    if (it != node_of_vertex.end()) return it->second;
    return node_of_vertex[v] = cf.add_node(-1);
  };
  for (const auto& e : tstar) cf.add_edge(node_for(e.u), node_for(e.v), e.u, e.v, e.length, 0);

  // Steiner leaves go to the deleted ledger, degree-2 Steiner nodes are
  // shortcut, and once no active node is left every edge is deleted.
  auto tidy = [&](int when, int& shortcuts) {
    if (cf.live_active() == 0) {
      for (int id : cf.live_edges()) cf.kill(id, Fate::deleted, when);
      return;
    }
    for (bool again = true; again;) {
      again = false;
      for (int x = 0; x < static_cast<int>(cf.nodes_.size()) && !again; ++x) {
        if (!cf.nodes_[x].alive || cf.active(x) || cf.has_loop(x)) continue;
        int d = cf.degree(x);
        if (d == 2) {
          cf.shortcut(x, when);
          ++shortcuts;
          again = true;
        } else if (d == 1) {
          cf.kill(cf.incident(x)[0], Fate::deleted, when);
          again = true;
        }
      }
    }
  };
  // Loops at the start come from zero-distance pairs and carry no length.
  for (int id : cf.live_edges())
    if (cf.edges_[id].a == cf.edges_[id].b) cf.kill(id, Fate::deleted, 0);
  {
    int ignored = 0;
    tidy(0, ignored);
  }

  auto conservation = [&]() {
    Rational sum(0);
    for (const auto& e : cf.edges_)
      if (e.fate != Fate::shortcut) sum += e.phi;
    return sum;
  };
  rep.record("potential conservation", conservation() == cost, conservation(), cost, "start");

  std::vector<Relevant> relevant;

  for (const auto& ev : trace.events) {
    const std::string w = "event " + std::to_string(ev.iteration);
    if (ev.merged.size() != 2 || !cl.present(ev.merged[0]) || !cl.present(ev.merged[1]))
      throw std::invalid_argument("trace does not replay on this instance (" + w + ")");
    const NodeId a = ev.merged[0], b = ev.merged[1];
    auto touches = [&](NodeId id) {
      bool any = false, all = true;
      for (int term : cl.terminals(id)) {
        bool inside = in_tree[inst.terminal_vertex(term)];
        any = any || inside;
        all = all && inside;
      }
      if (any && !all) throw std::invalid_argument("Tstar is not faithful to the trace (" + w + ")");
      return any;
    };
    const bool ra = touches(a), rb = touches(b);
    if (ra != rb) throw std::invalid_argument("Tstar is not faithful to the trace (" + w + ")");
    if (!ra) {
      cl.merge(a, b);
      continue;
    }

    Relevant rel;
    rel.iteration = ev.iteration;
    rel.index = static_cast<int>(relevant.size()) + 1;
    rel.delta = ev.distance;
    rel.active = cf.live_active();
    {
      int long_edges = 0;
      for (int id : cf.live_edges()) long_edges += 6 * cf.edges_[id].length >= rel.delta;
      rep.record("long edges at least half the active supernodes", 2 * long_edges >= rel.active,
                 std::to_string(long_edges), std::to_string(rel.active) + "/2", w);
    }
    const int t = rel.index;
    const std::size_t first_new_edge = cf.edges_.size();

    // step 2: one node for the merged supernode
    const int na = node_of_super.at(a), nb = node_of_super.at(b);
    const NodeId s = cl.merge(a, b);
    const int ns = cf.add_node(s);
    node_of_super[s] = ns;
    cf.nodes_[na].alive = cf.nodes_[nb].alive = false;
    for (auto& e : cf.edges_) {
      if (e.fate != Fate::live) continue;
      if (e.a == na || e.a == nb) e.a = ns;
      if (e.b == na || e.b == nb) e.b = ns;
    }
    // step 3
    if (!cf.active(ns) && !cf.has_loop(ns) && cf.degree(ns) == 2) cf.shortcut(ns, t);
    // steps 4 and 5
    auto cyc = cf.cycle();
    rep.record("merge closes exactly one cycle", !cyc.empty(), std::to_string(cyc.size()), {}, w);
    if (cyc.empty()) throw std::logic_error("candidate forest lost its cycle");
    int victim = cyc.front();
    if (rule == DeletionRule::highest_potential)
      for (int id : cyc)
        if (cf.edges_[id].phi > cf.edges_[victim].phi) victim = id;
    cf.kill(victim, Fate::deleted, t);
    rel.deleted_edge = victim;
    {
      bool ok = true;
      std::string bad;
      for (int x = 0; x < static_cast<int>(cf.nodes_.size()); ++x) {
        if (!cf.nodes_[x].alive || cf.active(x) || x == cf.edges_[victim].a || x == cf.edges_[victim].b) continue;
        int d = cf.degree(x);
        if (d != 0 && d < 3) ok = false, bad = "node " + std::to_string(x) + " degree " + std::to_string(d);
      }
      rep.record("Steiner degree at least 3", ok, bad, "3", w);
    }
    // step 6
    int step6 = 0;
    tidy(t, step6);
    rep.record("at most two step-6 shortcuts", step6 <= 2, std::to_string(step6), "2", w);

    for (std::size_t id = first_new_edge; id < cf.edges_.size(); ++id) {
      const CEdge& e = cf.edges_[id];
      rep.record("potential at least length", e.phi >= e.length, e.phi, e.length, w);
    }
    rep.record("potential conservation", conservation() == cost, conservation(), cost, w);
    relevant.push_back(rel);

    // a long edge that stops heading its group hands its charge to the edge
    // deleted in the same iteration
    for (std::size_t id = first_new_edge; id < cf.edges_.size(); ++id) {
      const CEdge& e = cf.edges_[id];
      if (e.parents[0] < 0) continue;
      for (const auto& r0 : relevant) {
        std::vector<int> whole, left, right;
        base_set(cf.edges_, static_cast<int>(id), r0.index, whole);
        base_set(cf.edges_, e.parents[0], r0.index, left);
        base_set(cf.edges_, e.parents[1], r0.index, right);
        const int h = head_of(cf.edges_, whole);
        for (const auto* side : {&left, &right}) {
          const int hs = head_of(cf.edges_, *side);
          if (hs == h || 6 * cf.edges_[hs].length < r0.delta) continue;
          const Rational phi = cf.edges_[victim].phi;
          rep.record("charge transfer to the deleted edge", 6 * phi >= r0.delta, phi, r0.delta / 6,
                     w + " for event " + std::to_string(r0.iteration));
        }
      }
    }
  }
  for (int id : cf.live_edges()) cf.kill(id, Fate::deleted, static_cast<int>(relevant.size()) + 1);
  rep.record("potential conservation", conservation() == cost, conservation(), cost, "end");

  std::vector<int> del;
  for (int id = 0; id < static_cast<int>(cf.edges_.size()); ++id)
    if (cf.edges_[id].fate == Fate::deleted) del.push_back(id);

  Rational total(0);
  for (const auto& r : relevant) {
    total += r.delta;
    int heavy = 0;
    for (int id : del) heavy += 6 * cf.edges_[id].phi >= r.delta;
    rep.record("deleted edges of potential at least delta/6", 8 * heavy >= r.active, std::to_string(heavy),
               std::to_string(r.active) + "/8", "event " + std::to_string(r.iteration));
  }

  // greedy assignment in descending delta order, capacity 8 per deleted edge
  {
    auto order = relevant;
    std::stable_sort(order.begin(), order.end(), [](const Relevant& x, const Relevant& y) { return x.delta > y.delta; });
    std::map<int, int> load;
    auto by_phi = del;
    std::stable_sort(by_phi.begin(), by_phi.end(),
                     [&](int x, int y) { return cf.edges_[x].phi < cf.edges_[y].phi; });
    bool ok = true;
    std::string witness;
    for (const auto& r : order) {
      bool placed = false;
      for (int id : by_phi) {
        if (6 * cf.edges_[id].phi < r.delta || load[id] >= 8) continue;
        ++load[id];
        placed = true;
        break;
      }
      if (!placed && ok) ok = false, witness = "event " + std::to_string(r.iteration);
    }
    rep.record("charging map with at most 8 per deleted edge", ok, {}, {}, witness);
  }
  rep.record("relevant merging cost within 48 cost(T*)", total <= 48 * cost, total, 48 * cost);
  return rep;
}

CertificateReport updateforest_forest(const Instance& inst, const std::vector<Edge>& forest, const RunTrace& trace,
                                      DeletionRule rule) {
  CertificateReport rep("updateforest");
  for (const auto& tree : split_trees(inst, forest)) {
    if (tree.pairs.empty() || tree_width(inst, tree).value == 0) continue;
    rep.absorb(updateforest_trace(inst, tree.edges, trace, rule));
  }
  return rep;
}

}  // namespace glutton
