#include "glutton/certificate.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "glutton/greedy.hpp"

namespace glutton {

void CertificateReport::record(const std::string& name, bool ok, const std::string& measured,
                               const std::string& bound, const std::string& witness) {
  for (auto& c : checks_) {
    if (c.name != name) continue;
    ++c.evaluations;
    if (c.skipped) {
      c.skipped = false;
      c.pass = ok;
      c.measured = measured, c.bound = bound, c.witness = witness;
    } else if (!ok && c.pass) {
      c.pass = false;
      c.measured = measured, c.bound = bound, c.witness = witness;
    }
    return;
  }
  checks_.push_back(Check{name, ok, false, measured, bound, witness, 1});
}

void CertificateReport::skip(const std::string& name, const std::string& reason) {
  for (const auto& c : checks_)
    if (c.name == name) return;
  checks_.push_back(Check{name, true, true, {}, {}, reason, 0});
}

void CertificateReport::absorb(const CertificateReport& other, const std::string& prefix) {
  for (const auto& c : other.checks_) {
    if (c.skipped) {
      skip(prefix + c.name, c.witness);
      continue;
    }
    record(prefix + c.name, c.pass, c.measured, c.bound, c.witness);
  }
}

const Check* CertificateReport::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool CertificateReport::pass() const { return failures() == 0; }

int CertificateReport::failures() const {
  return static_cast<int>(std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.pass; }));
}

namespace {

bool in(const std::string& s, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (s == n) return true;
  return false;
}

std::string at(int t) { return "event " + std::to_string(t); }

// Distance from each active supernode to its nearest other active supernode.
std::map<NodeId, Rational> nearest_active(const Clustering& cl, const PuncturedMetric& pm) {
  std::vector<NodeId> act;
  for (NodeId id : cl.ids())
    if (cl.mate_active(id)) act.push_back(id);
  std::map<NodeId, Rational> out;
  for (NodeId a : act)
    for (NodeId b : act) {
      if (a == b) continue;
      Rational d = pm.between(a, b).distance;
      auto it = out.find(a);
      if (it == out.end() || d < it->second) out[a] = d;
    }
  return out;
}

}  // namespace

CertificateReport check_trace(const Instance& inst, const RunTrace& tr) {
  CertificateReport rep("trace");
  const int n = inst.num_vertices();
  rep.record("feasible", connects_all(inst, tr.forest));
  rep.record("acyclic", is_acyclic(tr.forest, n));
  rep.record("recorded cost", total_length(tr.forest) == tr.cost, total_length(tr.forest), tr.cost);

  const std::string& alg = tr.algorithm;
  if (in(alg, {"tpd", "groupstrict-A"})) {
    bool ordered = true;
    for (std::size_t i = 1; i < tr.events.size(); ++i) ordered &= tr.events[i - 1].time <= tr.events[i].time;
    rep.record("event clock nondecreasing", ordered);
    return rep;
  }

  Normalized nz = normalize(inst);
  const Rational scale = nz.scale;
  const bool timed = in(alg, {"timed", "timed-iterative", "unistrict-A"});
  const bool mate = in(alg, {"gluttonous", "contract"});
  const int c = tr.c > 0 ? tr.c : 2;
  const auto levels = terminal_levels(nz.instance, c);
  Clustering cl(nz.instance);
  PuncturedMetric pm(cl);

  Rational total(0);
  std::optional<Rational> prev;
  int prev_stage = -1;
  for (const auto& ev : tr.events) {
    total += ev.distance;
    if (ev.kind == EventKind::tree_connect) continue;
    const std::string w = at(ev.iteration);
    const Rational delta = ev.distance * scale;
    bool present = ev.merged.size() >= 2;
    for (NodeId id : ev.merged) present = present && cl.present(id);
    for (int v : ev.absorbed_vertices) present = present && cl.owner(v) < 0;
    rep.record("replay", present, {}, {}, w);
    if (!present) break;
    const NodeId a = ev.merged[0], b = ev.merged[1];

    // legality of the selected pair
    if (mate) {
      bool ok = cl.mate_active(a) && cl.mate_active(b);
      for (std::size_t i = 2; i < ev.merged.size(); ++i) ok = ok && !cl.mate_active(ev.merged[i]);
      rep.record("no inactive supernode merged", ok, {}, {}, w);
    } else if (timed) {
      bool ok = levels[leader(cl, a, levels)] >= ev.stage && levels[leader(cl, b, levels)] >= ev.stage;
      rep.record("no inactive supernode merged", ok, {}, {}, w);
    } else if (alg == "paired") {
      const Demand& dm = inst.demands()[ev.pair];
      rep.record("pair unconnected when chosen", cl.owner(dm.s) != cl.owner(dm.t), {}, {}, w);
      rep.record("merging distance", pm.distance(dm.s, dm.t) == delta, pm.distance(dm.s, dm.t), delta, w);
    }

    // merging distance is the current punctured distance, and minimal where required
    if (alg == "gluttonous" || alg == "timed-iterative") {
      Rational d = pm.between(a, b).distance;
      rep.record("merging distance", d == delta, d, delta, w);
    }
    if (mate) {
      std::optional<Rational> best;
      auto ids = cl.ids();
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
          if (!cl.mate_active(ids[i]) || !cl.mate_active(ids[j])) continue;
          Rational d = pm.between(ids[i], ids[j]).distance;
          if (!best || d < *best) best = d;
        }
      rep.record("closest active pair", best && *best == delta, best ? *best : Rational(-1), delta, w);
    }
    if (timed) {
      Rational lo = ev.stage == 0 ? Rational(0) : ipow(c, ev.stage), hi = ipow(c, ev.stage + 1);
      rep.record("stage range", lo <= delta && delta < hi, delta, hi, w);
      rep.record("stages in order", ev.stage >= prev_stage, std::to_string(ev.stage), std::to_string(prev_stage), w);
      prev_stage = ev.stage;
    }
    rep.record("bought length within merging distance", total_length(ev.bought) <= ev.distance,
               total_length(ev.bought), ev.distance, w);
    if (mate) {
      rep.record("merging distances nondecreasing", !prev || *prev <= ev.distance, ev.distance,
                 prev ? *prev : Rational(0), w);
      prev = ev.distance;
    }

    std::map<NodeId, Rational> near_before;
    if (alg == "gluttonous") near_before = nearest_active(cl, pm);
    NodeId res = cl.merge(ev.merged, ev.absorbed_vertices);
    rep.record("replay", res == ev.result, std::to_string(res), std::to_string(ev.result), w);
    if (alg == "gluttonous") {
      auto near_after = nearest_active(cl, pm);
      bool ok = true;
      for (const auto& [id, d] : near_after) {
        if (id == res) {
          Rational parents = rmin(near_before.count(a) ? near_before[a] : d, near_before.count(b) ? near_before[b] : d);
          ok = ok && d >= parents;
        } else if (near_before.count(id)) {
          ok = ok && d >= near_before[id];
        }
      }
      rep.record("closest-active distance monotone", ok, {}, {}, w);
    }
  }
  rep.record("cost within total merging distance", tr.cost <= total, tr.cost, total);
  if (alg != "unistrict-A" && alg != "paired")
    rep.record("final clustering", cl.partition() == tr.final_partition);
  return rep;
}

}  // namespace glutton
