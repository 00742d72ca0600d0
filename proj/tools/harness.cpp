#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "glutton/certifiers.hpp"
#include "glutton/costshares.hpp"
#include "glutton/exact.hpp"
#include "glutton/generators.hpp"
#include "glutton/json_io.hpp"
#include "glutton/primal_dual.hpp"
#include "glutton/sfi_io.hpp"
#include "glutton/stochastic.hpp"

namespace glutton::harness {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("bad " + what + ": '" + s + "'");
}

std::uint64_t to_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("bad " + what + ": '" + s + "'");
}

// Runs a command body and maps exceptions onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const OracleLimit& e) {
    err << "oracle limit: " << e.what() << '\n';
    return kOracleLimit;
  } catch (const SfiError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

// Optimum when the oracle is on and the instance is small enough. Throws
// OracleLimit instead of skipping under --require-oracle.
std::optional<OracleResult> maybe_oracle(const Instance& inst, const RunConfig& cfg, std::string& why) {
  if (!cfg.oracle) {
    why = "oracle off";
    if (cfg.require_oracle) throw OracleLimit("oracle disabled but required");
    return std::nullopt;
  }
  if (!within_oracle_limits(inst)) {
    why = "instance exceeds oracle limits";
    if (cfg.require_oracle) throw OracleLimit(why);
    return std::nullopt;
  }
  return steiner_forest_exact(inst);
}

void print_report(const CertificateReport& rep, std::ostream& out) {
  for (const auto& c : rep.checks()) {
    out << (c.skipped ? "SKIP" : c.pass ? "PASS" : "FAIL") << "  " << c.name;
    if (c.skipped) out << "  (" << c.witness << ")";
    if (!c.pass) out << "  measured=" << c.measured << " bound=" << c.bound << " at " << c.witness;
    out << '\n';
  }
  out << (rep.pass() ? "certificate passed" : "certificate FAILED") << " (" << rep.failures() << " failing of "
      << rep.checks().size() << ")\n";
}

std::vector<int> all_pairs(const Instance& inst) {
  std::vector<int> out;
  for (int k = 0; k < inst.num_pairs(); ++k) out.push_back(k);
  return out;
}

}  // namespace

Instance load_instance(const std::string& spec) {
  if (spec.empty()) throw InputError("no instance given");
  if (spec.rfind("gen:", 0) != 0) return load_sfi(spec);
  const auto f = split(spec, ':');
  if (f.size() == 4 && f[1] == "ladder") return gen_ladder(to_int(f[2], "ladder size"), parse_rational(f[3]));
  if (f.size() == 3 && f[1] == "girth") {
    const auto names = cubic_graph_names();
    if (std::find(names.begin(), names.end(), f[2]) == names.end()) throw InputError("unknown graph " + f[2]);
    return gen_girth_lb(make_girth_spec(cubic_graph(f[2]))).instance;
  }
  if (f.size() == 5 && f[1] == "rand" && f[2] == "pairs") {
    RandomSpec rs;
    rs.pairs = to_int(f[3], "pair count");
    rs.seed = to_u64(f[4], "seed");
    if (rs.pairs < 1) throw InputError("pair count must be positive");
    return gen_random(rs);
  }
  if (f.size() == 3 && f[1] == "suite") return random_suite_instance(to_int(f[2], "suite index"));
  throw InputError("unknown generator spec '" + spec + "'");
}

const std::vector<std::string>& algorithm_tags() {
  static const std::vector<std::string> tags{"gluttonous", "timed",         "timed-iterative", "contract",
                                             "paired",     "tpd",           "unistrict-A",     "groupstrict-A"};
  return tags;
}

TieRule load_tie(const std::string& spec) {
  if (spec == "lex") return TieRule::lexicographic();
  if (spec.rfind("custom:", 0) == 0) {
    std::ifstream in(spec.substr(7));
    if (!in) throw InputError("cannot open tie file " + spec.substr(7));
    std::vector<int> pr;
    for (int x; in >> x;) pr.push_back(x);
    if (!in.eof()) throw InputError("tie file must hold whitespace-separated integers");
    return TieRule::priorities(pr);
  }
  throw InputError("tie rule must be lex or custom:<file>");
}

RunTrace run_algorithm(const Instance& inst, const std::string& alg, int c, const TieRule& tie) {
  if (alg == "gluttonous") return gluttonous(inst, tie);
  if (alg == "timed") return timed_gluttonous(inst, c);
  if (alg == "timed-iterative") return timed_gluttonous_iterative(inst, c);
  if (alg == "contract") return gluttonous_contract(inst, tie);
  if (alg == "paired") return paired_greedy(inst);
  if (alg == "tpd") return timed_primal_dual(inst, half_distance_schedule(inst)).trace;
  if (alg == "unistrict-A") return unistrict_A(inst, c);
  if (alg == "groupstrict-A") return group_strict_A(inst, c);
  throw InputError("unknown algorithm '" + alg + "'");
}

std::optional<Rational> ratio_bound(const std::string& alg) {
  if (alg == "gluttonous" || alg == "contract" || alg == "groupstrict-A") return Rational(96);
  if (alg == "timed" || alg == "timed-iterative") return Rational(480);
  if (alg == "tpd") return Rational(2);
  if (alg == "unistrict-A") return Rational(2880);
  return std::nullopt;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = load_instance(cfg.instance);
    const RunTrace tr = run_algorithm(inst, cfg.alg, cfg.c, load_tie(cfg.tie));
    std::string why;
    const auto opt = maybe_oracle(inst, cfg, why);
    out << "algorithm " << tr.algorithm << "\ncost " << to_string(tr.cost) << "\nmerges " << tr.merges() << '\n';
    if (opt) {
      out << "opt " << to_string(opt->cost) << '\n';
      if (opt->cost > 0) out << "ratio " << to_string(tr.cost / opt->cost) << '\n';
    } else {
      out << "opt skipped (" << why << ")\n";
    }
    if (!cfg.out.empty()) {
      std::ostringstream s;
      write_trace_jsonl(tr, s, opt ? std::optional<Rational>(opt->cost) : std::nullopt);
      write_text(cfg.out, s.str());
    }
    return static_cast<int>(kPass);
  });
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Instance inst = load_instance(cfg.instance);
    const TieRule tie = load_tie(cfg.tie);
    const std::string& name = cfg.certifier;
    if (!cfg.mutate.empty() && name != "updateforest") throw InputError("--mutate applies to updateforest only");
    DeletionRule rule = DeletionRule::highest_potential;
    if (cfg.mutate == "first-edge") rule = DeletionRule::first_edge;
    else if (!cfg.mutate.empty() && cfg.mutate != "highest-potential")
      throw InputError("unknown mutation '" + cfg.mutate + "'");

    auto trace_for = [&](const std::string& alg) {
      if (cfg.trace.empty()) return run_algorithm(inst, alg, cfg.c, tie);
      std::ifstream in(cfg.trace);
      if (!in) throw InputError("cannot open trace " + cfg.trace);
      return read_trace_jsonl(in);
    };
    auto targets = [&] {
      if (cfg.target < 0) return all_pairs(inst);
      if (cfg.target >= inst.num_pairs()) throw InputError("target is not a demand pair");
      return std::vector<int>{cfg.target};
    };

    CertificateReport rep(name);
    std::string why;
    auto oracle_forest = [&]() -> std::optional<std::vector<Edge>> {
      auto opt = maybe_oracle(inst, cfg, why);
      if (!opt) return std::nullopt;
      return opt->forest;
    };

    if (name == "trace") {
      rep = check_trace(inst, trace_for(cfg.alg));
    } else if (name == "faithful" || name == "updateforest" || name == "delta" || name == "charge") {
      const auto fstar = oracle_forest();
      if (!fstar) {
        rep.skip("optimal forest", why);
      } else if (name == "faithful") {
        rep = build_faithful(inst, *fstar, trace_for("gluttonous")).report;
      } else if (name == "updateforest") {
        const auto tr = trace_for("gluttonous");
        const auto faithful = build_faithful(inst, *fstar, tr);
        rep.absorb(faithful.report);
        rep.absorb(updateforest_forest(inst, faithful.forest, tr, rule));
      } else if (name == "delta") {
        rep = delta_accounting(inst, *fstar, trace_for(cfg.alg)).report;
      } else {
        rep = charge_trace(inst, *fstar, trace_for(cfg.alg)).report;
      }
    } else if (name == "unistrict") {
      for (int k : targets()) rep.absorb(verify_unistrict(inst, k, cfg.c));
    } else if (name == "nesting") {
      for (int k : targets()) rep.absorb(verify_nesting(inst, k, cfg.c));
    } else if (name == "groupstrict") {
      std::vector<int> d1, d2 = cfg.d2;
      if (!cfg.parts.empty()) {
        std::ifstream in(cfg.parts);
        if (!in) throw InputError("cannot open parts file " + cfg.parts);
        const Json j = Json::parse(in);
        d1 = j.at("d1").get<std::vector<int>>();
        d2 = j.at("d2").get<std::vector<int>>();
      } else {
        for (int k = 0; k < inst.num_pairs(); ++k)
          if (std::find(d2.begin(), d2.end(), k) == d2.end()) d1.push_back(k);
      }
      std::vector<int> seen(inst.num_pairs(), 0);
      for (const auto* part : {&d1, &d2})
        for (int k : *part) {
          if (k < 0 || k >= inst.num_pairs()) throw InputError("part names an unknown demand pair");
          if (seen[k]++) throw InputError("D1 and D2 overlap at pair " + std::to_string(k));
        }
      // pairs named in neither part are dropped from D
      std::vector<Demand> dem;
      std::vector<int> d2_local;
      for (int k = 0; k < inst.num_pairs(); ++k) {
        if (!seen[k]) continue;
        if (std::find(d2.begin(), d2.end(), k) != d2.end()) d2_local.push_back(static_cast<int>(dem.size()));
        dem.push_back(inst.demands()[k]);
      }
      inst = inst.with_demands(dem);
      auto res = verify_groupstrict(inst, d2_local, cfg.c);
      rep = res.report;
      if (!cfg.out.empty()) {
        Json j{{"report", to_json(rep)}, {"construction", to_json(res.construction)}};
        write_text(cfg.out, j.dump(2) + "\n");
      }
      print_report(rep, out);
      return rep.pass() ? static_cast<int>(kPass) : static_cast<int>(kCertificateFailure);
    } else if (name == "shares") {
      const auto table = cfg.scheme == "groupstrict" ? chi_groupstrict(inst, cfg.c) : chi_unistrict(inst, cfg.c);
      const auto opt = maybe_oracle(inst, cfg, why);
      rep = audit_shares(table, opt ? std::optional<Rational>(opt->cost) : std::nullopt);
    } else {
      throw InputError("unknown certifier '" + name +
                       "' (trace, faithful, updateforest, delta, charge, unistrict, nesting, groupstrict, shares)");
    }
    if (!cfg.out.empty()) write_text(cfg.out, to_json(rep).dump(2) + "\n");
    print_report(rep, out);
    return rep.pass() ? static_cast<int>(kPass) : static_cast<int>(kCertificateFailure);
  });
}

int cmd_cost_share(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = load_instance(cfg.instance);
    if (cfg.scheme != "unistrict" && cfg.scheme != "groupstrict")
      throw InputError("scheme must be unistrict or groupstrict");
    const auto table = cfg.scheme == "groupstrict" ? chi_groupstrict(inst, cfg.c) : chi_unistrict(inst, cfg.c);
    std::string why;
    const auto opt = maybe_oracle(inst, cfg, why);
    const auto audit = audit_shares(table, opt ? std::optional<Rational>(opt->cost) : std::nullopt);
    for (int k = 0; k < inst.num_pairs(); ++k) out << "pair " << k << "  " << to_string(table.shares[k]) << '\n';
    out << "total " << to_string(table.total());
    if (opt) out << "  opt " << to_string(opt->cost);
    out << '\n';
    if (!cfg.out.empty()) {
      Json j{{"shares", to_json(table)}, {"audit", to_json(audit)}};
      write_text(cfg.out, j.dump(2) + "\n");
    }
    return audit.pass() ? static_cast<int>(kPass) : static_cast<int>(kCertificateFailure);
  });
}

int cmd_stochastic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = load_instance(cfg.instance);
    if (cfg.dist.empty()) throw InputError("--dist is required");
    const auto pi = load_distribution(cfg.dist, inst);
    if (cfg.samples < 0) throw InputError("sample count must be nonnegative");
    const Rng master(cfg.seed);
    const auto plan = boosted_sampling(inst, pi, master.child(0).next(), cfg.c);
    const auto ev = evaluate_plan(inst, pi, plan.e1, cfg.samples, master.child(1).next(), cfg.c);
    Json j{{"plan", to_json(plan)}, {"evaluation", to_json(ev)}, {"optimum", nullptr}, {"ratio", nullptr}};
    out << "first stage cost " << to_string(plan.first_cost) << '\n';
    if (ev.exact_total) out << "expected two-stage cost " << to_string(*ev.exact_total) << '\n';
    char line[128];
    std::snprintf(line, sizeof line, "monte carlo estimate %.6f +- %.6f over %d samples\n", ev.estimate,
                  ev.half_width, ev.samples);
    out << line;
    if (cfg.oracle) {
      try {
        const auto opt = exact_two_stage(inst, pi);
        j["optimum"] = to_json(opt);
        out << "two-stage optimum " << to_string(opt.cost) << '\n';
        if (ev.exact_total && opt.cost > 0) j["ratio"] = rational_json(*ev.exact_total / opt.cost);
      } catch (const OracleLimit& e) {
        if (cfg.require_oracle) throw;
        out << "two-stage optimum skipped (" << e.what() << ")\n";
      }
    } else if (cfg.require_oracle) {
      throw OracleLimit("oracle disabled but required");
    }
    if (!cfg.out.empty()) write_text(cfg.out, j.dump(2) + "\n");
    if (!ev.all_feasible) {
      out << "augmentation left a realized scenario disconnected\n";
      return static_cast<int>(kCertificateFailure);
    }
    return static_cast<int>(kPass);
  });
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Instance inst = load_instance(cfg.instance);
    std::ostringstream s;
    write_sfi(inst, s);
    if (cfg.out.empty())
      out << s.str();
    else
      write_text(cfg.out, s.str());
    return static_cast<int>(kPass);
  });
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.algs.empty()) throw InputError("no algorithms given");
    if (cfg.instances.empty()) throw InputError("no instances given");
    for (const auto& a : cfg.algs)
      if (std::find(algorithm_tags().begin(), algorithm_tags().end(), a) == algorithm_tags().end())
        throw InputError("unknown algorithm '" + a + "'");
    const TieRule tie = load_tie(cfg.tie);
    std::vector<Instance> insts;
    std::vector<std::optional<Rational>> opts;
    for (const auto& spec : cfg.instances) {
      insts.push_back(load_instance(spec));
      std::string why;
      auto opt = maybe_oracle(insts.back(), cfg, why);
      opts.push_back(opt ? std::optional<Rational>(opt->cost) : std::nullopt);
    }

    struct Cell {
      std::string row;
    };
    const int n_alg = static_cast<int>(cfg.algs.size());
    const int cells = static_cast<int>(insts.size()) * n_alg;
    std::vector<Cell> rows(cells);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
      for (int i; (i = next++) < cells;) try {
        const int ii = i / n_alg;
        const std::string& alg = cfg.algs[i % n_alg];
        const auto t0 = std::chrono::steady_clock::now();
        const RunTrace tr = run_algorithm(insts[ii], alg, cfg.c, tie);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream r;
        r << cfg.instances[ii] << ',' << alg << ',' << to_string(tr.cost) << ',';
        if (opts[ii]) r << to_string(*opts[ii]);
        r << ',';
        if (opts[ii] && *opts[ii] > 0) r << to_string(tr.cost / *opts[ii]);
        r << ',' << tr.merges() << ',';
        if (cfg.timing) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.3f", ms);
          r << buf;
        }
        rows[i].row = r.str();
      } catch (...) {
        std::lock_guard<std::mutex> hold(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < std::max(cfg.jobs, 1); ++j) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::ostringstream csv;
    csv << "instance,algorithm,cost,opt,ratio,merges,wall_time\n";
    for (const auto& r : rows) csv << r.row << '\n';
    if (cfg.out.empty())
      out << csv.str();
    else
      write_text(cfg.out, csv.str());
    return static_cast<int>(kPass);
  });
}

}  // namespace glutton::harness
