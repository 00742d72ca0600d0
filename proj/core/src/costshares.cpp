#include "glutton/costshares.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "glutton/greedy.hpp"
#include "glutton/primal_dual.hpp"

namespace glutton {

const char* to_string(ShareScheme s) { return s == ShareScheme::unistrict ? "unistrict" : "groupstrict"; }

const char* to_string(PairClass p) {
  switch (p) {
    case PairClass::good: return "good";
    case PairClass::bad: return "bad";
    default: return "dropped";
  }
}

Rational gamma_tg(int c) { return Rational(96) * (ipow(c, 2) + 1); }

Rational CostShareTable::total() const {
  Rational sum(0);
  for (const auto& x : shares) sum += x;
  return sum;
}

Rational CostShareTable::total(const std::vector<int>& pairs) const {
  Rational sum(0);
  for (int k : pairs) sum += shares.at(k);
  return sum;
}

CostShareTable shares_from_trace(const Instance& inst, const RunTrace& timed, ShareScheme scheme) {
  if (timed.algorithm != "timed" && timed.algorithm != "timed-iterative")
    throw std::invalid_argument("cost shares are read off a timed gluttonous trace");
  CostShareTable t;
  t.scheme = scheme;
  t.c = timed.c;
  t.gamma = gamma_tg(timed.c);
  t.scale = timed.scale;
  t.shares.assign(inst.num_pairs(), Rational(0));
  const Rational unit = 1 / (2 * t.gamma * timed.scale);

  if (scheme == ShareScheme::groupstrict) {
    for (const auto& ev : timed.events)
      for (int term : ev.leaders) {
        ShareContribution sc{Instance::pair_of(term), term, ev.iteration, ev.stage, ipow(t.c, ev.stage + 1) * unit};
        t.shares[sc.pair] += sc.amount;
        t.provenance.push_back(sc);
      }
    return t;
  }

  t.last_stage.assign(inst.num_terminals(), -1);
  std::vector<int> last_event(inst.num_terminals(), 0);
  for (const auto& ev : timed.events)
    for (int term : ev.leaders)
      if (ev.stage >= t.last_stage[term]) t.last_stage[term] = ev.stage, last_event[term] = ev.iteration;
  for (int term = 0; term < inst.num_terminals(); ++term) {
    if (t.last_stage[term] < 0) continue;
    ShareContribution sc{Instance::pair_of(term), term, last_event[term], t.last_stage[term],
                         ipow(t.c, t.last_stage[term]) * unit};
    t.shares[sc.pair] += sc.amount;
    t.provenance.push_back(sc);
  }
  std::stable_sort(t.provenance.begin(), t.provenance.end(),
                   [](const ShareContribution& a, const ShareContribution& b) { return a.event < b.event; });
  return t;
}

CostShareTable chi_unistrict(const Instance& inst, int c) {
  return shares_from_trace(inst, timed_gluttonous(inst, c), ShareScheme::unistrict);
}

CostShareTable chi_groupstrict(const Instance& inst, int c) {
  return shares_from_trace(inst, timed_gluttonous(inst, c), ShareScheme::groupstrict);
}

CertificateReport audit_shares(const CostShareTable& table, const std::optional<Rational>& opt) {
  CertificateReport rep("cost_shares");
  std::vector<Rational> sum(table.shares.size(), Rational(0));
  for (const auto& sc : table.provenance) sum.at(sc.pair) += sc.amount;
  for (std::size_t k = 0; k < table.shares.size(); ++k) {
    const std::string w = "pair " + std::to_string(k);
    rep.record("shares nonnegative", table.shares[k] >= 0, table.shares[k], Rational(0), w);
    rep.record("provenance sums to the share", sum[k] == table.shares[k], sum[k], table.shares[k], w);
  }
  if (opt)
    rep.record("budget balanced", table.total() <= *opt, table.total(), *opt);
  else
    rep.skip("budget balanced", "no optimum supplied");
  return rep;
}

namespace {

void require_pair(const Instance& inst, int target) {
  if (target < 0 || target >= inst.num_pairs())
    throw std::invalid_argument("target " + std::to_string(target) + " is not a demand pair");
}

Instance without_pair(const Instance& inst, int target) {
  std::vector<Demand> rest;
  for (int k = 0; k < inst.num_pairs(); ++k)
    if (k != target) rest.push_back(inst.demands()[k]);
  return inst.with_demands(std::move(rest));
}

// c^(l+1), or 0 for a terminal that never led a merge.
Rational reach(int c, int stage) { return stage < 0 ? Rational(0) : ipow(c, stage + 1); }

}  // namespace

CertificateReport verify_unistrict(const Instance& inst, int target, int c) {
  require_pair(inst, target);
  CertificateReport rep("verify_unistrict");
  const auto chi = chi_unistrict(inst, c);
  const auto reduced = unistrict_A(without_pair(inst, target), c);
  PuncturedMetric pm(inst, component_labels(inst.num_vertices(), reduced.forest));
  const Demand& dm = inst.demands()[target];
  const Rational d = pm.distance(dm.s, dm.t);
  const std::string w = "pair " + std::to_string(target);

  const Rational reconnect =
      4 * (reach(c, chi.last_stage[2 * target]) + reach(c, chi.last_stage[2 * target + 1])) / chi.scale;
  rep.record("reconnection within 4(c^(l+1) + c^(lbar+1))", d <= reconnect, d, reconnect, w);
  const Rational strict = 16 * chi.gamma * chi.shares[target];
  rep.record("reconnection within 16 gamma chi", d <= strict, d, strict, w);
  return rep;
}

CertificateReport verify_nesting(const Instance& inst, int target, int c) {
  require_pair(inst, target);
  CertificateReport rep("verify_nesting");
  const auto full = timed_gluttonous(inst, c);
  const auto part = timed_gluttonous(without_pair(inst, target), c);
  const int s = 2 * target, sbar = s + 1;
  const int level = terminal_levels(normalize(inst).instance, c)[s];
  const int vs = inst.terminal_vertex(s), vsbar = inst.terminal_vertex(sbar);
  // reduced-run terminal -> terminal of D
  auto lift = [&](int t) { return Instance::pair_of(t) < target ? t : t + 2; };

  for (int i = 0; i <= level; ++i) {
    const std::string w = "stage " + std::to_string(i);
    const auto& P = full.stage_partitions.at(i);
    const auto& raw = i < static_cast<int>(part.stage_partitions.size()) ? part.stage_partitions[i]
                                                                         : part.final_partition;
    std::vector<std::vector<int>> Q;
    for (const auto& block : raw) {
      Q.emplace_back();
      for (int t : block) Q.back().push_back(lift(t));
      std::sort(Q.back().begin(), Q.back().end());
    }
    std::vector<int> block_of(inst.num_terminals(), -1);
    for (int b = 0; b < static_cast<int>(P.size()); ++b)
      for (int t : P[b]) block_of[t] = b;
    const int Cs = block_of[s], Csbar = block_of[sbar];

    bool refine = true;
    for (const auto& q : Q)
      for (int t : q) refine = refine && block_of[t] == block_of[q.front()];
    rep.record("nesting (a) reduced clustering refines the full one", refine, {}, {}, w);
    bool rest = true;
    for (int b = 0; b < static_cast<int>(P.size()); ++b)
      if (b != Cs && b != Csbar) rest = rest && std::find(Q.begin(), Q.end(), P[b]) != Q.end();
    rep.record("nesting (a) other supernodes unchanged", rest, {}, {}, w);

    std::vector<int> groups(inst.num_vertices(), -1);
    for (int q = 0; q < static_cast<int>(Q.size()); ++q)
      for (int t : Q[q]) groups[inst.terminal_vertex(t)] = q;
    PuncturedMetric pm(inst, groups);
    const Rational ci = ipow(c, i) / full.scale;
    if (Cs != Csbar) {
      for (auto [root, b] : {std::pair{vs, Cs}, std::pair{vsbar, Csbar}})
        for (int t : P[b]) {
          const Rational d = pm.distance(root, inst.terminal_vertex(t));
          rep.record("nesting (b) members within 2c^i", d <= 2 * ci, d, 2 * ci,
                     w + " terminal " + std::to_string(t));
        }
    } else {
      const Rational d = pm.distance(vs, vsbar);
      rep.record("nesting (c) pair within 4c^i", d <= 4 * ci, d, 4 * ci, w);
    }
  }
  return rep;
}

GroupStrictResult verify_groupstrict(const Instance& inst, const std::vector<int>& d2, int c, int boundary) {
  GroupStrictResult out;
  F2Construction& fc = out.construction;
  CertificateReport& rep = out.report;
  const int K = inst.num_pairs(), n = inst.num_vertices();
  std::vector<bool> in_d2(K, false);
  for (int k : d2) {
    require_pair(inst, k);
    if (in_d2[k]) throw std::invalid_argument("D1 and D2 overlap at pair " + std::to_string(k));
    in_d2[k] = true;
  }
  std::vector<Demand> dem1;
  for (int k = 0; k < K; ++k) {
    (in_d2[k] ? fc.d2 : fc.d1).push_back(k);
    if (!in_d2[k]) dem1.push_back(inst.demands()[k]);
  }

  const auto first = group_strict_A_history(inst.with_demands(dem1), c);
  fc.f1 = first.trace.forest;
  const auto& hist = first.history;
  const auto timed = timed_gluttonous(inst, c);
  fc.shares = shares_from_trace(inst, timed, ShareScheme::groupstrict);
  fc.d2_share = fc.shares.total(fc.d2);
  const Rational scale = timed.scale;
  const auto levels = terminal_levels(normalize(inst).instance, c);
  auto lead = [&](const std::vector<int>& block) {
    int best = block.front();
    for (int t : block)
      if (levels[t] > levels[best]) best = t;
    return best;
  };

  // Stage i of the D1 run starts at boundary * c^i (stage 0 at time 0).
  auto start = [&](int i) { return i == 0 ? Rational(0) : boundary * ipow(c, i) / scale; };
  std::vector<Rational> f1_time;
  for (const auto& e : fc.f1) {
    Rational when(0);
    for (std::size_t j = 0; j < hist.unpruned.size(); ++j) {
      const Edge& u = hist.unpruned[j];
      if ((u.u == e.u && u.v == e.v) || (u.u == e.v && u.v == e.u)) {
        when = hist.tight_time[j];
        break;
      }
    }
    f1_time.push_back(when);
  }
  auto f1_before = [&](const Rational& t) {
    std::vector<Edge> out;
    for (std::size_t j = 0; j < fc.f1.size(); ++j)
      if (f1_time[j] < t) out.push_back(fc.f1[j]);
    return out;
  };

  std::vector<Edge> f2_all;
  const int stages = static_cast<int>(timed.stage_partitions.size()) - 1;
  fc.bad_count.assign(std::max(stages, 0), 0);
  Rational bad_cost(0), bad_budget(0), goodcost_bound(0);
  bool acyclic = true, partition_ok = true, labels_ok = true;

  for (int i = 0; i < stages; ++i) {
    const std::string w = "stage " + std::to_string(i);
    const auto& P = timed.stage_partitions[i];
    const int B = static_cast<int>(P.size());
    std::vector<int> block_of(inst.num_terminals(), -1);
    for (int b = 0; b < B; ++b)
      for (int t : P[b]) block_of[t] = b;

    // Connectivity of the stage-start supernodes.
    {
      auto lbl = component_labels(n, [&] {
        auto e = f1_before(start(i));
        e.insert(e.end(), f2_all.begin(), f2_all.end());
        return e;
      }());
      bool ok = true;
      std::string bad;
      for (const auto& block : P)
        for (int t : block)
          if (lbl[inst.terminal_vertex(t)] != lbl[inst.terminal_vertex(block.front())] && ok)
            ok = false, bad = "terminal " + std::to_string(t);
      rep.record("supernodes connected by earlier stages", ok, bad, {}, w);
    }

    // Equivalence classes: D1 leaders sharing a moat at the end of the stage.
    const auto moat = hist.moats_before(start(i + 1));
    UnionFind cls(B);
    std::map<int, int> by_moat;
    for (int b = 0; b < B; ++b) {
      const int l = lead(P[b]);
      if (in_d2[Instance::pair_of(l)]) continue;
      auto [it, fresh] = by_moat.emplace(moat[inst.terminal_vertex(l)], b);
      if (!fresh) cls.unite(it->second, b);
    }
    std::vector<int> cls_label(B);
    {
      std::map<int, int> smallest;
      for (int b = 0; b < B; ++b)
        if (!smallest.count(cls.find(b))) smallest[cls.find(b)] = b;
      for (int b = 0; b < B; ++b) cls_label[b] = smallest[cls.find(b)];
    }
    fc.classes.push_back(cls_label);

    std::vector<std::pair<StagePair, const MergeEvent*>> stage_pairs;
    for (const auto& ev : timed.events) {
      if (ev.stage != i) continue;
      StagePair sp;
      sp.stage = i;
      sp.event = ev.iteration;
      sp.leaders[0] = ev.leaders[0], sp.leaders[1] = ev.leaders[1];
      sp.blocks[0] = block_of[ev.leaders[0]], sp.blocks[1] = block_of[ev.leaders[1]];
      stage_pairs.push_back({sp, &ev});
    }
    std::stable_sort(stage_pairs.begin(), stage_pairs.end(), [](const auto& x, const auto& y) {
      auto key = [](const StagePair& p) {
        return std::pair{std::min(p.blocks[0], p.blocks[1]), std::max(p.blocks[0], p.blocks[1])};
      };
      return key(x.first) < key(y.first);
    });

    UnionFind keep(B), check(B);
    for (int b = 0; b < B; ++b) keep.unite(b, cls_label[b]), check.unite(b, cls_label[b]);
    std::vector<Edge> stage_f2;
    for (auto& [sp, ev] : stage_pairs) {
      if (!keep.unite(sp.blocks[0], sp.blocks[1])) {
        sp.cls = PairClass::dropped;
      } else {
        const bool any_d2 = in_d2[Instance::pair_of(sp.leaders[0])] || in_d2[Instance::pair_of(sp.leaders[1])];
        sp.cls = any_d2 ? PairClass::good : PairClass::bad;
        acyclic = acyclic && check.unite(sp.blocks[0], sp.blocks[1]);
        for (const auto& e : ev->bought) {
          fc.f2.push_back({e, i, any_d2});
          stage_f2.push_back(e);
          if (!any_d2) bad_cost += e.length;
        }
        if (!any_d2) ++fc.bad_count[i];
      }
      const bool d1_both =
          !in_d2[Instance::pair_of(sp.leaders[0])] && !in_d2[Instance::pair_of(sp.leaders[1])];
      labels_ok = labels_ok && (sp.cls == PairClass::dropped || (sp.cls == PairClass::bad) == d1_both);
      fc.pairs.push_back(sp);
    }
    partition_ok = partition_ok && static_cast<int>(stage_pairs.size()) ==
                                       static_cast<int>(std::count_if(timed.events.begin(), timed.events.end(),
                                                                      [&](const MergeEvent& e) { return e.stage == i; }));
    f2_all.insert(f2_all.end(), stage_f2.begin(), stage_f2.end());

    {
      auto e = f1_before(start(i));
      e.insert(e.end(), f2_all.begin(), f2_all.end());
      auto lbl = component_labels(n, e);
      bool ok = true;
      std::string bad;
      for (const auto& [sp, ev] : stage_pairs) {
        if (sp.cls == PairClass::dropped) continue;
        const int root = inst.terminal_vertex(P[sp.blocks[0]].front());
        for (int b : sp.blocks)
          for (int t : P[b])
            if (lbl[inst.terminal_vertex(t)] != lbl[root] && ok) ok = false, bad = "event " + std::to_string(sp.event);
      }
      rep.record("kept pairs connected within their stage", ok, bad, {}, w);
    }
    bad_budget += fc.bad_count[i] * ipow(c, i + 1) / scale;
    goodcost_bound += 3 * fc.bad_count[i] * (ipow(c, i + 1) - ipow(c, i)) / scale;
  }

  fc.f2_cost = total_length(f2_all);
  rep.record("kept pairs acyclic after collapsing classes", acyclic);
  rep.record("classification covers every stage pair once", partition_ok);
  rep.record("good pairs have a D2 leader, bad pairs only D1 leaders", labels_ok);

  std::vector<Edge> both = fc.f1;
  both.insert(both.end(), f2_all.begin(), f2_all.end());
  rep.record("F1 and F2 connect D2", connects_pairs(inst, both, fc.d2));
  rep.record("bad edges within c^(i+1) per bad pair", bad_cost <= bad_budget, bad_cost, bad_budget);
  rep.record("F2 cost at least 3 sum n_b (c^(i+1) - c^i)", fc.f2_cost >= goodcost_bound, fc.f2_cost,
             goodcost_bound);
  const Rational bound = 6 * fc.shares.gamma * fc.d2_share;
  rep.record("F2 cost within 6 gamma times the D2 shares", fc.f2_cost <= bound, fc.f2_cost, bound);
  return out;
}

}  // namespace glutton
