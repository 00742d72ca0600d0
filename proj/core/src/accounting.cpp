#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

#include "glutton/certifiers.hpp"

namespace glutton {

namespace {

// One tree of Fstar as a standalone instance with its own clustering.
struct Projection {
  std::vector<int> local;  // instance vertex -> local vertex, or -1
  std::vector<int> pairs;  // instance demand ids, in local order
  std::unique_ptr<Instance> sub;
  std::unique_ptr<Clustering> cl;
  std::unique_ptr<PuncturedMetric> pm;
  Rational cost;

  int local_terminal(int term) const {
    auto it = std::find(pairs.begin(), pairs.end(), Instance::pair_of(term));
    return 2 * static_cast<int>(it - pairs.begin()) + (term & 1);
  }
  int global_terminal(int local_term) const { return 2 * pairs[local_term / 2] + (local_term & 1); }

  std::optional<Rational> delta() const {
    std::vector<NodeId> act;
    for (NodeId id : cl->ids())
      if (cl->mate_active(id)) act.push_back(id);
    std::optional<Rational> best;
    for (std::size_t i = 0; i < act.size(); ++i)
      for (std::size_t j = i + 1; j < act.size(); ++j) {
        Rational d = pm->between(act[i], act[j]).distance;
        if (!best || d < *best) best = d;
      }
    return best;
  }
};

bool below(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return false;
  return !b || *a < *b;
}

std::string show(const std::optional<Rational>& x) { return x ? to_string(*x) : "inf"; }

class ProjectedReplay {
 public:
  ProjectedReplay(const Instance& inst, const std::vector<Edge>& fstar, const RunTrace& trace)
      : cl_(inst), tree_of_(inst.num_terminals(), -1) {
    if (!connects_all(inst, fstar)) throw std::invalid_argument("Fstar is not feasible");
    static const char* supported[] = {"gluttonous", "contract", "timed", "timed-iterative", "paired", "unistrict-A"};
    if (std::find_if(std::begin(supported), std::end(supported), [&](const char* s) { return trace.algorithm == s; }) ==
        std::end(supported))
      throw std::invalid_argument("projected accounting needs a supernode-merging trace, got " + trace.algorithm);
    for (const auto& tree : split_trees(inst, fstar)) {
      if (tree.pairs.empty() || tree_width(inst, tree).value == 0) continue;
      Projection p;
      p.local.assign(inst.num_vertices(), -1);
      for (std::size_t i = 0; i < tree.vertices.size(); ++i) p.local[tree.vertices[i]] = static_cast<int>(i);
      Matrix m(tree.vertices.size(), std::vector<Rational>(tree.vertices.size()));
      for (std::size_t i = 0; i < tree.vertices.size(); ++i)
        for (std::size_t j = 0; j < tree.vertices.size(); ++j) m[i][j] = inst.d(tree.vertices[i], tree.vertices[j]);
      std::vector<Demand> demands;
      for (int k : tree.pairs) {
        p.pairs.push_back(k);
        demands.push_back({p.local[inst.demands()[k].s], p.local[inst.demands()[k].t]});
        tree_of_[2 * k] = tree_of_[2 * k + 1] = static_cast<int>(proj_.size());
      }
      p.sub = std::make_unique<Instance>(std::move(m), std::move(demands));
      p.cl = std::make_unique<Clustering>(*p.sub);
      p.pm = std::make_unique<PuncturedMetric>(*p.cl);
      p.cost = total_length(tree.edges);
      proj_.push_back(std::move(p));
    }
    act_.resize(proj_.size());
    for (NodeId id : cl_.ids()) {
      charge_[id] = Rational(0);
      for (int r : alive(id)) {
        const int term = first_in(id, r);
        act_[r][id] = proj_[r].cl->node_of_terminal(proj_[r].local_terminal(term));
      }
    }
  }

  int trees() const { return static_cast<int>(proj_.size()); }
  const Projection& tree(int r) const { return proj_[r]; }
  const Clustering& clustering() const { return cl_; }
  Rational charge(NodeId id) const { return charge_.at(id); }

  // Trees r in which S_r holds a terminal whose mate is outside S.
  std::vector<int> alive(NodeId id) const {
    std::vector<int> out;
    for (int term : cl_.terminals(id)) {
      const int r = tree_of_[term];
      if (r < 0 || cl_.node_of_terminal(Instance::mate(term)) == id) continue;
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::optional<Rational>> deltas() const {
    std::vector<std::optional<Rational>> out;
    for (const auto& p : proj_) out.push_back(p.delta());
    return out;
  }

  // Applies one event; fills step.both_alive, result, charge, n_alive.
  void apply(const MergeEvent& ev, const std::optional<Rational>& delta, ProjectedStep& step, CertificateReport& rep) {
    const std::string w = "event " + std::to_string(ev.iteration);
    bool ok = ev.merged.size() >= 2;
    for (NodeId id : ev.merged) ok = ok && cl_.present(id);
    rep.record("trace matches instance", ok, {}, {}, w);
    if (!ok) throw std::invalid_argument("trace does not replay on this instance (" + w + ")");
    const NodeId a = ev.merged[0], b = ev.merged[1];
    const auto aa = alive(a), ab = alive(b);
    std::vector<int> both;
    std::set_intersection(aa.begin(), aa.end(), ab.begin(), ab.end(), std::back_inserter(both));
    std::map<int, NodeId> joined;
    for (int r : both) joined[r] = proj_[r].cl->merge(act_[r].at(a), act_[r].at(b));

    Rational charge(0);
    for (NodeId id : ev.merged) charge += charge_.at(id);
    if (delta) charge -= (2 * static_cast<int>(both.size()) - 1) * *delta;
    const NodeId res = cl_.merge(ev.merged, ev.absorbed_vertices);
    charge_[res] = charge;

    const auto now = alive(res);
    for (int r : now) {
      NodeId x = joined.count(r) ? joined[r] : act_[r].count(a) ? act_[r].at(a) : act_[r].count(b) ? act_[r].at(b) : -1;
      int inside = 0;
      const Clustering& pc = *proj_[r].cl;
      for (NodeId id : pc.ids()) {
        if (!pc.mate_active(id)) continue;
        bool sub = true;
        for (int lt : pc.terminals(id)) sub = sub && cl_.node_of_terminal(proj_[r].global_terminal(lt)) == res;
        inside += sub;
      }
      const bool good = x >= 0 && pc.present(x) && pc.mate_active(x) && inside == 1;
      rep.record("one active projected supernode per alive tree", good, std::to_string(inside), "1",
                 w + " tree " + std::to_string(r));
      if (x >= 0) act_[r][res] = x;
    }
    step.both_alive = both;
    step.result = res;
    step.charge = charge;
    step.n_alive = static_cast<int>(now.size());
  }

 private:
  int first_in(NodeId id, int r) const {
    for (int term : cl_.terminals(id))
      if (tree_of_[term] == r && cl_.node_of_terminal(Instance::mate(term)) != id) return term;
    return -1;
  }

  Clustering cl_;
  std::vector<int> tree_of_;  // terminal -> projection index
  std::vector<Projection> proj_;
  std::vector<std::map<NodeId, NodeId>> act_;
  std::map<NodeId, Rational> charge_;
};

enum class Mode { delta, charge };

AccountingResult run(const Instance& inst, const std::vector<Edge>& fstar, const RunTrace& trace, Mode mode) {
  AccountingResult out;
  out.report = CertificateReport(mode == Mode::delta ? "delta_accounting" : "charge_trace");
  CertificateReport& rep = out.report;
  if (mode == Mode::charge && trace.algorithm != "gluttonous" && trace.algorithm != "contract")
    throw std::invalid_argument("charge accounting replays gluttonous or contract traces");
  ProjectedReplay pr(inst, fstar, trace);
  const int R = pr.trees();
  std::vector<Rational> per_tree(R, Rational(0));
  std::optional<Rational> prev;
  std::vector<std::optional<Rational>> prev_r(R);
  bool started = false;
  Rational sum_delta(0), sum_paid(0), merging(0);

  auto check_invariant = [&](const std::optional<Rational>& delta, const std::string& w) {
    const Clustering& cl = pr.clustering();
    for (NodeId id : cl.ids()) {
      const Rational ch = pr.charge(id);
      if (!cl.mate_active(id)) {
        rep.record("charge invariant", ch <= 0, ch, Rational(0), w + " supernode " + std::to_string(id));
        continue;
      }
      const int nS = static_cast<int>(pr.alive(id).size());
      if (!delta) {
        rep.record("charge invariant", nS >= 2 || ch <= 0, to_string(ch), nS >= 2 ? "inf" : "0",
                   w + " supernode " + std::to_string(id));
        continue;
      }
      const Rational bound = (nS - 1) * *delta;
      rep.record("charge invariant", ch <= bound, ch, bound, w + " supernode " + std::to_string(id));
    }
  };

  for (const auto& ev : trace.events) {
    if (ev.kind == EventKind::tree_connect) continue;
    const std::string w = "event " + std::to_string(ev.iteration);
    ProjectedStep step;
    step.iteration = ev.iteration;
    step.delta_r = pr.deltas();
    for (const auto& d : step.delta_r)
      if (below(d, step.delta)) step.delta = d;

    rep.record("delta ascending", !started || !below(step.delta, prev), show(step.delta), show(prev), w);
    for (int r = 0; r < R; ++r) {
      rep.record("projected delta ascending", !started || !below(step.delta_r[r], prev_r[r]), show(step.delta_r[r]),
                 show(prev_r[r]), w + " tree " + std::to_string(r));
      prev_r[r] = step.delta_r[r];
    }
    prev = step.delta;
    started = true;

    if (mode == Mode::charge) {
      check_invariant(step.delta, w);
      rep.record("delta finite while merging", step.delta.has_value(), show(step.delta), {}, w);
      rep.record("merging cost within delta", step.delta && ev.distance <= *step.delta, ev.distance,
                 step.delta ? *step.delta : Rational(-1), w);
    }
    pr.apply(ev, step.delta, step, rep);
    for (int r : step.both_alive) {
      per_tree[r] += *step.delta_r[r];
      sum_paid += *step.delta_r[r];
    }
    if (step.delta) sum_delta += *step.delta;
    merging += ev.distance;
    out.steps.push_back(std::move(step));
  }

  for (int r = 0; r < R; ++r) {
    const Rational bound = 48 * pr.tree(r).cost;
    rep.record("projected delta sum within 48 cost(T_r)", per_tree[r] <= bound, per_tree[r], bound,
               "tree " + std::to_string(r));
  }
  if (mode == Mode::charge) {
    check_invariant(std::nullopt, "end");
    rep.record("delta sum within twice the paid projected deltas", sum_delta <= 2 * sum_paid, sum_delta,
               2 * sum_paid);
    const Rational bound = 96 * total_length(fstar);
    rep.record("merging cost within 96 cost(F*)", merging <= bound, merging, bound);
  }
  return out;
}

}  // namespace

AccountingResult delta_accounting(const Instance& inst, const std::vector<Edge>& fstar, const RunTrace& trace) {
  return run(inst, fstar, trace, Mode::delta);
}

AccountingResult charge_trace(const Instance& inst, const std::vector<Edge>& fstar, const RunTrace& trace) {
  return run(inst, fstar, trace, Mode::charge);
}

}  // namespace glutton
