// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "glutton/certificate.hpp"
#include "glutton/certifiers.hpp"
#include "glutton/clustering.hpp"
#include "glutton/costshares.hpp"
#include "glutton/exact.hpp"
#include "glutton/forest.hpp"
#include "glutton/generators.hpp"
#include "glutton/greedy.hpp"
#include "glutton/json_io.hpp"
#include "glutton/primal_dual.hpp"
#include "glutton/rng.hpp"
#include "glutton/stochastic.hpp"
#include "harness.hpp"
#include "oracles/brute_force.hpp"

using namespace glutton;

namespace {

constexpr int kSuite = 200;

struct SuiteEntry {
  Instance inst;
  OracleResult opt;
};

std::vector<SuiteEntry> suite;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 12) notes.push_back("FAIL " + why);
  }
  void info(const std::string& s) { notes.push_back(s); }
};

std::string failed_checks(const CertificateReport& rep) {
  std::string out;
  for (const auto& c : rep.checks())
    if (!c.pass) out += (out.empty() ? "" : "; ") + c.name + (c.witness.empty() ? "" : " [" + c.witness + "]");
  return out;
}

// Every check whose name contains `key` passed; false if none was recorded.
bool passed(const CertificateReport& rep, const std::string& key, bool required = true) {
  bool seen = false, ok = true;
  for (const auto& c : rep.checks())
    if (c.name.find(key) != std::string::npos && !c.skipped) seen = true, ok = ok && c.pass;
  return seen ? ok : !required;
}

Instance restrict_pairs(const Instance& inst, const std::vector<int>& pairs) {
  std::vector<Demand> dem;
  for (int k : pairs) dem.push_back(inst.demands()[k]);
  return inst.with_demands(dem);
}

// 1. Ratios against the exact optimum, compared as rationals.
Verdict approximation_bounds() {
  Verdict v;
  const std::vector<std::pair<std::string, Rational>> algs{{"gluttonous", Rational(96)}, {"contract", Rational(96)},
                                                           {"timed", Rational(480)},     {"tpd", Rational(2)},
                                                           {"unistrict-A", Rational(2880)},
                                                           {"groupstrict-A", Rational(96)}};
  int oracle_mismatch = 0;
  for (int i = 0; i < kSuite; ++i) {
    const Rational brute = oracle::steiner_forest(suite[i].inst);
    if (brute != suite[i].opt.cost) {
      ++oracle_mismatch;
      v.fail("instance " + std::to_string(i) + ": exact oracle " + to_string(suite[i].opt.cost) +
             " vs brute force " + to_string(brute));
    }
  }
  for (const auto& [alg, bound] : algs) {
    Rational worst(0);
    for (int i = 0; i < kSuite; ++i) {
      const auto& e = suite[i];
      const RunTrace tr = harness::run_algorithm(e.inst, alg, 2, TieRule::lexicographic());
      if (!connects_all(e.inst, tr.forest)) v.fail(alg + " infeasible on instance " + std::to_string(i));
      if (e.opt.cost == 0) {
        if (tr.cost != 0) v.fail(alg + " positive cost on a zero-cost instance " + std::to_string(i));
        continue;
      }
      const Rational ratio = tr.cost / e.opt.cost;
      worst = rmax(worst, ratio);
      if (ratio > bound) v.fail(alg + " ratio " + to_string(ratio) + " > " + to_string(bound) + " on instance " +
                                std::to_string(i));
    }
    v.info(alg + " max ratio " + to_string(worst) + " (" + std::to_string(to_double(worst)).substr(0, 6) +
           ") bound " + to_string(bound));
  }
  v.info("oracle cross-check against brute force: " + std::to_string(kSuite - oracle_mismatch) + "/" +
         std::to_string(kSuite) + " agree");
  return v;
}

// 2. Trace invariants on every run of criterion 1.
Verdict trace_invariants() {
  Verdict v;
  std::map<std::string, int> evaluated, failing_runs;
  const std::vector<std::string> keys{"merging distances nondecreasing", "stages in order", "event clock nondecreasing",
                                      "cost within total merging distance", "no inactive supernode merged"};
  for (const std::string alg : {"gluttonous", "contract", "timed", "tpd", "unistrict-A", "groupstrict-A"}) {
    for (int i = 0; i < kSuite; ++i) {
      const auto& inst = suite[i].inst;
      const auto rep = check_trace(inst, harness::run_algorithm(inst, alg, 2, TieRule::lexicographic()));
      if (!rep.pass()) v.fail(alg + " instance " + std::to_string(i) + ": " + failed_checks(rep));
      for (const auto& k : keys)
        if (const Check* c = rep.find(k)) {
          evaluated[k] += c->evaluations;
          if (!c->pass) ++failing_runs[k + " (" + alg + ")"];
        }
    }
  }
  for (const auto& k : keys) v.info(k + ": " + std::to_string(evaluated[k]) + " evaluations");
  for (const auto& [k, n] : failing_runs) v.info(k + ": fails on " + std::to_string(n) + " runs");
  return v;
}

// 3. Faithful forest, candidate-forest replay, charge ledger, mutation.
Verdict certifier_suite() {
  Verdict v;
  const std::vector<std::string> required{"potential conservation", "Steiner degree at least 3",
                                          "long edges at least half the active supernodes",
                                          "deleted edges of potential at least delta/6",
                                          "relevant merging cost within 48 cost(T*)"};
  int mutation_failures = 0, phi_failures = 0, case_two = 0, replays = 0;
  for (int i = 0; i < kSuite; ++i) {
    const auto& inst = suite[i].inst;
    const auto& fstar = suite[i].opt.forest;
    const std::string at = "instance " + std::to_string(i) + ": ";
    const RunTrace tr = gluttonous(inst);

    const auto faithful = build_faithful(inst, fstar, tr);
    case_two += faithful.case_two;
    if (!faithful.report.pass()) v.fail(at + "build_faithful " + failed_checks(faithful.report));
    if (!passed(faithful.report, "faithful") || !passed(faithful.report, "cost within twice Fstar"))
      v.fail(at + "faithfulness or the 2 cost(F*) bound not established");

    const auto uf = updateforest_forest(inst, faithful.forest, tr);
    for (const auto& k : required)
      if (!passed(uf, k, false)) v.fail(at + "updateforest " + k + ": " + failed_checks(uf));
    replays += passed(uf, "potential conservation") ? 1 : 0;
    phi_failures += !passed(uf, "potential at least length", false);

    const auto charge = charge_trace(inst, fstar, tr).report;
    if (!passed(charge, "charge invariant")) v.fail(at + "charge_trace " + failed_checks(charge));

    mutation_failures += !updateforest_forest(inst, faithful.forest, tr, DeletionRule::first_edge).pass();
  }
  if (mutation_failures < 1) v.fail("delete-first-edge mutation produced no certificate failure");
  v.info("updateforest replays with a positive-width tree: " + std::to_string(replays));
  v.info("build_faithful augmentations: " + std::to_string(case_two));
  v.info("mutation: " + std::to_string(mutation_failures) + " instances fail");
  v.info("informational: potential-at-least-length fails on " + std::to_string(phi_failures) + " instances");
  return v;
}

// 4. Budget balance, unistrict and nesting for every pair, group strictness.
Verdict cost_shares() {
  Verdict v;
  int unistrict_runs = 0, nesting_runs = 0, bipartitions = 0;
  Rational worst_f2(0);
  Rng rng(4);
  for (int i = 0; i < kSuite; ++i) {
    const auto& inst = suite[i].inst;
    const std::string at = "instance " + std::to_string(i) + ": ";
    for (auto scheme : {ShareScheme::unistrict, ShareScheme::groupstrict}) {
      const auto table = scheme == ShareScheme::unistrict ? chi_unistrict(inst) : chi_groupstrict(inst);
      const auto rep = audit_shares(table, suite[i].opt.cost);
      if (!rep.pass()) v.fail(at + to_string(scheme) + " shares: " + failed_checks(rep));
    }
    for (int k = 0; k < inst.num_pairs(); ++k) {
      const auto uni = verify_unistrict(inst, k);
      ++unistrict_runs;
      if (!uni.pass()) v.fail(at + "unistrict target " + std::to_string(k) + ": " + failed_checks(uni));
      const auto nest = verify_nesting(inst, k);
      ++nesting_runs;
      if (!nest.pass()) v.fail(at + "nesting target " + std::to_string(k) + ": " + failed_checks(nest));
    }
    if (inst.num_pairs() < 2) continue;
    std::vector<int> d2;
    while (d2.empty() || static_cast<int>(d2.size()) == inst.num_pairs()) {
      d2.clear();
      for (int k = 0; k < inst.num_pairs(); ++k)
        if (rng.below(2)) d2.push_back(k);
    }
    const auto gs = verify_groupstrict(inst, d2);
    ++bipartitions;
    if (!gs.report.pass()) v.fail(at + "groupstrict: " + failed_checks(gs.report));
    if (!passed(gs.report, "F1 and F2 connect D2") || !passed(gs.report, "F2 cost within 6 gamma"))
      v.fail(at + "groupstrict feasibility or cost bound missing");
    if (gs.construction.d2_share > 0) worst_f2 = rmax(worst_f2, gs.construction.f2_cost / gs.construction.d2_share);
  }
  if (bipartitions < 50) v.fail("only " + std::to_string(bipartitions) + " bipartitions");
  v.info("unistrict runs " + std::to_string(unistrict_runs) + ", nesting runs " + std::to_string(nesting_runs) +
         ", bipartitions " + std::to_string(bipartitions));
  v.info("max cost(F2) / D2 shares " + to_string(worst_f2) + ", bound 6 gamma = " + to_string(6 * gamma_tg(2)));
  return v;
}

// 5. Ladder: rung demands only, then the reconnection distance of (s, s-bar).
Verdict ladder() {
  Verdict v;
  for (int N : {3, 5, 10}) {
    const Instance full = gen_ladder(N, Rational(1, 10));
    std::vector<int> rungs;
    for (int k = 1; k <= N; ++k) rungs.push_back(k);
    const Instance d1 = restrict_pairs(full, rungs);
    const RunTrace tr = group_strict_A(d1);
    const int comps = static_cast<int>(split_trees(d1, tr.forest).size());
    std::vector<int> groups = component_labels(d1.num_vertices(), tr.forest);
    for (int u = 0; u < d1.num_vertices(); ++u)
      if (groups[u] == u && std::none_of(tr.forest.begin(), tr.forest.end(),
                                         [u](const Edge& e) { return e.u == u || e.v == u; }))
        groups[u] = -1;
    const Rational dist = PuncturedMetric(full, groups).distance(0, 1);
    const Rational want = Rational(2 * N + 2) + Rational(2, 10);
    const std::string tag = "N=" + std::to_string(N) + ": ";
    if (comps != N) v.fail(tag + std::to_string(comps) + " components, expected " + std::to_string(N));
    if (dist != want) v.fail(tag + "reconnection distance " + to_string(dist) + ", expected " + to_string(want));

    std::vector<int> rung_groups(full.num_vertices(), -1);
    for (int i = 1; i <= N; ++i) rung_groups[2 * i] = rung_groups[2 * i + 1] = i;
    const RunTrace pruned = group_strict_A(d1, 2, PruneRule::reverse_delete);
    v.info(tag + "group_strict_A " + std::to_string(comps) + " components, distance " + to_string(dist) +
           "; rungs contracted " + to_string(PuncturedMetric(full, rung_groups).distance(0, 1)) +
           "; reverse-delete pruning " + std::to_string(split_trees(d1, pruned.forest).size()) + " components");
  }
  return v;
}

// 6. Girth instances.
Verdict girth() {
  Verdict v;
  for (const char* name : {"petersen", "heawood"}) {
    const auto spec = make_girth_spec(cubic_graph(name));
    const auto gi = gen_girth_lb(spec);
    const RunTrace tr = paired_greedy(gi.instance);
    bool direct = tr.merges() == gi.instance.num_pairs();
    for (const auto& ev : tr.events) {
      const Demand& dm = gi.instance.demands()[ev.pair];
      direct = direct && ev.bought.size() == 1 &&
               ((ev.bought[0].u == dm.s && ev.bought[0].v == dm.t) || (ev.bought[0].u == dm.t && ev.bought[0].v == dm.s));
    }
    const Rational want = Rational(gi.instance.num_pairs()) * spec.long_edge_length;
    if (!direct) v.fail(std::string(name) + ": paired greedy bought something other than the direct edges");
    if (tr.cost != want) v.fail(std::string(name) + ": paired cost " + to_string(tr.cost) + " != " + to_string(want));
    const Rational glut = gluttonous(gi.instance).cost;
    const Rational cap = Rational(96 * (spec.base.n - 1));
    if (glut > cap) v.fail(std::string(name) + ": gluttonous " + to_string(glut) + " > " + to_string(cap));
    v.info(std::string(name) + ": |M|=" + std::to_string(gi.instance.num_pairs()) + " paired " + to_string(tr.cost) +
           ", gluttonous " + to_string(glut));
  }
  std::optional<Rational> prev;
  int prev_g = 0;
  std::string sweep;
  for (const auto& name : cubic_graph_names()) {
    const auto spec = make_girth_spec(cubic_graph(name));
    const auto gi = gen_girth_lb(spec);
    Rational tree(0);
    for (int id : spec.tree_edges) tree += gi.instance.d(spec.base.edges[id].first, spec.base.edges[id].second);
    const Rational ratio = paired_greedy(gi.instance).cost / tree;
    if (prev && spec.base.girth >= prev_g && ratio < *prev)
      v.fail(name + " ratio " + to_string(ratio) + " below the previous " + to_string(*prev));
    prev = ratio;
    prev_g = spec.base.girth;
    sweep += (sweep.empty() ? "" : ", ") + name + " g=" + std::to_string(spec.base.girth) + " " + to_string(ratio);
  }
  v.info("paired/tree: " + sweep);
  return v;
}

ScenarioDistribution random_explicit(int num_pairs, Rng& rng) {
  ScenarioDistribution pi;
  const int m = rng.range(1, 4);
  std::vector<int> w(m);
  int total = 0;
  for (auto& x : w) total += x = rng.range(1, 6);
  for (int j = 0; j < m; ++j) {
    Scenario s;
    s.p = Rational(w[j], total);
    for (int k = 0; k < num_pairs; ++k)
      if (rng.below(2)) s.pairs.push_back(k);
    pi.support.push_back(std::move(s));
  }
  pi.sigma = Rational(rng.range(3, 8), 2);
  return pi;
}

// 7. Boosted sampling.
Verdict stochastic() {
  Verdict v;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto& inst = suite[seed].inst;
    const auto pi = independent_pairs(inst.num_pairs(), 0.25 + 0.5 * static_cast<double>(seed % 3) / 2, Rational(2));
    const auto plan = boosted_sampling(inst, pi, seed);
    Rng rng = Rng(seed).child(7);
    for (int j = 0; j < 20; ++j) {
      const auto s = pi.sample(rng);
      auto all = plan.e1;
      const auto extra = second_stage_augment(inst, plan.e1, s);
      all.insert(all.end(), extra.begin(), extra.end());
      ++checked;
      if (!connects_pairs(inst, all, s)) v.fail("seed " + std::to_string(seed) + " scenario " + std::to_string(j));
    }
  }
  v.info(std::to_string(checked) + " augmented scenarios feasible");

  int compared = 0, skipped = 0, below = 0;
  Rational worst(0);
  Rng rng(77);
  for (int i = 0; i < kSuite && compared < 30; ++i) {
    const auto& inst = suite[i].inst;
    const auto pi = random_explicit(inst.num_pairs(), rng);
    TwoStageOptimum opt;
    try {
      opt = exact_two_stage(inst, pi);
    } catch (const OracleLimit&) {
      ++skipped;
      continue;
    }
    ++compared;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto plan = boosted_sampling(inst, pi, seed);
      const auto ev = evaluate_plan(inst, pi, plan.e1, 0, seed);
      const std::string at = "instance " + std::to_string(i) + " seed " + std::to_string(seed);
      if (!ev.exact_total || !ev.all_feasible) {
        v.fail(at + ": no exact plan value");
        continue;
      }
      // the oracle enumerates a fixed candidate universe, so a plan may undercut it
      below += *ev.exact_total < opt.cost;
      if (*ev.exact_total > 30 * opt.cost)
        v.fail(at + ": plan " + to_string(*ev.exact_total) + " > 30 x " + to_string(opt.cost));
      if (opt.cost > 0) worst = rmax(worst, *ev.exact_total / opt.cost);
    }
  }
  if (compared < 20) v.fail("only " + std::to_string(compared) + " distributions within the exact limits");
  v.info(std::to_string(compared) + " distributions compared (" + std::to_string(skipped) +
         " past the exact limits), max plan/optimum " + to_string(worst) + " (" +
         std::to_string(to_double(worst)).substr(0, 5) + ")");
  v.info("informational: " + std::to_string(below) + " plans cost less than the universe-restricted optimum");
  return v;
}

// Everything the artifact writes for one instance, serialized.
std::string outputs(int i) {
  const auto& inst = suite[i].inst;
  std::ostringstream out;
  for (const auto& alg : harness::algorithm_tags()) {
    const RunTrace tr = harness::run_algorithm(inst, alg, 2, TieRule::lexicographic());
    write_trace_jsonl(tr, out, suite[i].opt.cost);
    out << to_json(check_trace(inst, tr)).dump() << '\n';
  }
  out << to_json(chi_unistrict(inst)).dump() << '\n' << to_json(chi_groupstrict(inst)).dump() << '\n';
  out << to_json(verify_unistrict(inst, 0)).dump() << '\n';
  const auto gs = verify_groupstrict(inst, {0});
  out << to_json(gs.construction).dump() << to_json(gs.report).dump() << '\n';
  out << to_json(updateforest_forest(inst, build_faithful(inst, suite[i].opt.forest, gluttonous(inst)).forest,
                                     gluttonous(inst)))
             .dump()
      << '\n';
  const auto pi = independent_pairs(inst.num_pairs(), 0.5, Rational(2));
  const auto plan = boosted_sampling(inst, pi, 9);
  out << to_json(plan).dump() << to_json(evaluate_plan(inst, pi, plan.e1, 50, 10)).dump() << '\n';
  return out.str();
}

std::string cli_outputs(int jobs) {
  std::ostringstream out, err;
  harness::RunConfig cfg;
  cfg.instance = "gen:ladder:3:0.1";
  cfg.alg = "timed";
  harness::cmd_solve(cfg, out, err);
  cfg.certifier = "updateforest";
  harness::cmd_certify(cfg, out, err);
  cfg.scheme = "groupstrict";
  harness::cmd_cost_share(cfg, out, err);
  cfg.instances = {"gen:suite:1", "gen:suite:2", "gen:girth:petersen", "gen:rand:pairs:3:5"};
  cfg.algs = harness::algorithm_tags();
  cfg.format = "csv";
  cfg.jobs = jobs;
  harness::cmd_bench(cfg, out, err);
  return out.str() + err.str();
}

// 8. Repeated runs give identical bytes.
Verdict determinism() {
  Verdict v;
  std::size_t bytes = 0;
  for (int i = 0; i < 30; ++i) {
    const std::string a = outputs(i), b = outputs(i);
    bytes += a.size();
    if (a != b) v.fail("instance " + std::to_string(i) + " outputs differ between runs");
  }
  const std::string serial = cli_outputs(1);
  if (serial != cli_outputs(1)) v.fail("command outputs differ between runs");
  if (serial != cli_outputs(4)) v.fail("bench output depends on the job count");
  v.info(std::to_string(bytes) + " bytes of traces, tables and reports compared");
  return v;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  for (int i = 0; i < kSuite; ++i) {
    Instance inst = random_suite_instance(i);
    auto opt = steiner_forest_exact(inst);
    suite.push_back({std::move(inst), std::move(opt)});
  }
  std::printf("oracle suite: %d instances solved exactly in %.1fs\n", kSuite,
              std::chrono::duration<double>(clock::now() - t0).count());

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"approximation bounds against the exact optimum", approximation_bounds},
      {"trace invariants", trace_invariants},
      {"certifier suite", certifier_suite},
      {"cost shares", cost_shares},
      {"ladder forest and reconnection distance", ladder},
      {"girth instances", girth},
      {"stochastic plans", stochastic},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = clock::now();
    const Verdict v = criteria[i].second();
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    std::printf("criterion %zu: %s  %s (%.1fs)\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), secs);
    for (const auto& note : v.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
