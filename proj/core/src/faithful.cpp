#include <stdexcept>

#include "glutton/certifiers.hpp"

namespace glutton {

namespace {

std::string at(int t) { return "event " + std::to_string(t); }

// Terminals of the supernode whose mate lies outside it.
std::vector<int> active_terminals(const Clustering& cl, NodeId id) {
  std::vector<int> out;
  for (int term : cl.terminals(id))
    if (cl.node_of_terminal(Instance::mate(term)) != id) out.push_back(term);
  return out;
}

bool faithful(const Clustering& cl, const std::vector<int>& labels) {
  const Instance& inst = cl.instance();
  for (NodeId id : cl.ids()) {
    const auto& terms = cl.terminals(id);
    for (int term : terms)
      if (labels[inst.terminal_vertex(term)] != labels[inst.terminal_vertex(terms.front())]) return false;
  }
  return true;
}

}  // namespace

FaithfulResult build_faithful(const Instance& inst, const std::vector<Edge>& fstar, const RunTrace& trace) {
  const int n = inst.num_vertices();
  if (!connects_all(inst, fstar)) throw std::invalid_argument("Fstar is not feasible");
  if (!is_acyclic(fstar, n)) throw std::invalid_argument("Fstar has a cycle");
  if (trace.algorithm != "gluttonous") throw std::invalid_argument("build_faithful replays gluttonous traces");

  FaithfulResult out;
  CertificateReport& rep = out.report;
  out.forest = fstar;
  const Rational cost0 = total_length(fstar), width0 = forest_width(inst, fstar);
  Clustering cl(inst);

  for (const auto& ev : trace.events) {
    const std::string w = at(ev.iteration);
    bool ok = ev.merged.size() == 2 && cl.present(ev.merged[0]) && cl.present(ev.merged[1]);
    rep.record("trace matches instance", ok, {}, {}, w);
    if (!ok) throw std::invalid_argument("trace does not replay on this instance (" + w + ")");
    const NodeId a = ev.merged[0], b = ev.merged[1];
    auto ua = active_terminals(cl, a), vb = active_terminals(cl, b);
    rep.record("merged supernodes active", !ua.empty() && !vb.empty(), {}, {}, w);
    if (ua.empty() || vb.empty()) throw std::invalid_argument("trace merges an inactive supernode (" + w + ")");

    auto labels = component_labels(n, out.forest);
    const int u = inst.terminal_vertex(ua.front()), v = inst.terminal_vertex(vb.front());
    if (labels[u] != labels[v]) {
      ++out.case_two;
      // every active terminal's own pair distance in its tree bounds the path
      Rational tree_min(-1);
      for (const auto* side : {&ua, &vb})
        for (int term : *side) {
          Rational d = forest_distance(n, out.forest, inst.terminal_vertex(term),
                                       inst.terminal_vertex(Instance::mate(term)));
          if (tree_min < 0 || d < tree_min) tree_min = d;
        }
      rep.record("path cost within tree pair distances", ev.distance <= tree_min, ev.distance, tree_min, w);
      std::vector<Edge> grown = out.forest;
      grown.insert(grown.end(), ev.bought.begin(), ev.bought.end());
      grown = maximal_acyclic(grown, n);
      out.added += total_length(grown) - total_length(out.forest);
      out.forest = std::move(grown);
      labels = component_labels(n, out.forest);
      rep.record("path joins the two trees", labels[u] == labels[v], {}, {}, w);
    }
    cl.merge(a, b);
    const Rational slack = width0 - forest_width(inst, out.forest);
    rep.record("added cost within width decrease", out.added <= slack, out.added, slack, w);
    rep.record("faithful to current clustering", faithful(cl, labels), {}, {}, w);
  }

  const Rational cost = total_length(out.forest);
  rep.record("faithful to final clustering", faithful(cl, component_labels(n, out.forest)));
  rep.record("feasible", connects_all(inst, out.forest));
  rep.record("cost within Fstar plus width", cost <= cost0 + width0, cost, cost0 + width0);
  rep.record("cost within twice Fstar", cost <= 2 * cost0, cost, 2 * cost0);
  return out;
}

}  // namespace glutton
