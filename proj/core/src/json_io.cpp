#include "glutton/json_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace glutton {

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

Json to_json(const Edge& e) { return Json::array({e.u, e.v, rational_json(e.length)}); }

namespace {

Json edges_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back(to_json(e));
  return out;
}

std::vector<Edge> edges_from(const Json& j) {
  std::vector<Edge> out;
  for (const auto& e : j) out.push_back({e.at(0).get<int>(), e.at(1).get<int>(), rational_from(e.at(2))});
  return out;
}

EventKind kind_from(const std::string& s) {
  for (EventKind k : {EventKind::merge, EventKind::contract, EventKind::pair_connect, EventKind::tree_connect,
                      EventKind::moat_meet})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown event kind " + s);
}

}  // namespace

Json to_json(const MergeEvent& ev) {
  Json j;
  j["type"] = "event";
  j["iteration"] = ev.iteration;
  j["kind"] = to_string(ev.kind);
  if (ev.stage >= 0) j["stage"] = ev.stage;
  j["merged"] = ev.merged;
  if (!ev.absorbed_vertices.empty()) j["absorbed"] = ev.absorbed_vertices;
  j["result"] = ev.result;
  if (ev.leaders[0] >= 0) j["leaders"] = {ev.leaders[0], ev.leaders[1]};
  if (ev.pair >= 0) j["pair"] = ev.pair;
  j["distance"] = rational_json(ev.distance);
  if (ev.kind == EventKind::moat_meet) j["time"] = rational_json(ev.time);
  j["bought"] = edges_json(ev.bought);
  return j;
}

void write_trace_jsonl(const RunTrace& trace, std::ostream& out, const std::optional<Rational>& opt) {
  for (const auto& ev : trace.events) out << to_json(ev).dump() << '\n';
  Json s;
  s["type"] = "summary";
  s["algorithm"] = trace.algorithm;
  if (trace.c > 0) s["c"] = trace.c;
  s["tie"] = trace.tie;
  s["scale"] = rational_json(trace.scale);
  s["cost"] = rational_json(trace.cost);
  s["merges"] = trace.merges();
  s["forest"] = edges_json(trace.forest);
  if (!trace.stage_partitions.empty()) s["stage_partitions"] = trace.stage_partitions;
  s["final_partition"] = trace.final_partition;
  s["opt"] = opt ? Json(rational_json(*opt)) : Json(nullptr);
  s["ratio"] = opt && *opt > 0 ? Json(rational_json(trace.cost / *opt)) : Json(nullptr);
  out << s.dump() << '\n';
}

RunTrace read_trace_jsonl(std::istream& in) {
  RunTrace tr;
  std::string line;
  bool summary = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    if (j.at("type") == "event") {
      MergeEvent ev;
      ev.iteration = j.at("iteration").get<int>();
      ev.kind = kind_from(j.at("kind").get<std::string>());
      ev.stage = j.value("stage", -1);
      ev.merged = j.at("merged").get<std::vector<NodeId>>();
      if (j.contains("absorbed")) ev.absorbed_vertices = j["absorbed"].get<std::vector<int>>();
      ev.result = j.at("result").get<int>();
      if (j.contains("leaders")) ev.leaders[0] = j["leaders"][0], ev.leaders[1] = j["leaders"][1];
      ev.pair = j.value("pair", -1);
      ev.distance = rational_from(j.at("distance"));
      if (j.contains("time")) ev.time = rational_from(j["time"]);
      ev.bought = edges_from(j.at("bought"));
      tr.events.push_back(std::move(ev));
    } else if (j.at("type") == "summary") {
      summary = true;
      tr.algorithm = j.at("algorithm").get<std::string>();
      tr.c = j.value("c", 0);
      tr.tie = j.value("tie", std::string("lex"));
      tr.scale = rational_from(j.at("scale"));
      tr.cost = rational_from(j.at("cost"));
      tr.forest = edges_from(j.at("forest"));
      if (j.contains("stage_partitions"))
        tr.stage_partitions = j["stage_partitions"].get<std::vector<std::vector<std::vector<int>>>>();
      tr.final_partition = j.at("final_partition").get<std::vector<std::vector<int>>>();
    } else {
      throw std::invalid_argument("unknown trace record " + j.at("type").dump());
    }
  }
  if (!summary) throw std::invalid_argument("trace has no summary record");
  return tr;
}

Json to_json(const MoatEvent& ev) {
  return {{"time", rational_json(ev.time)},
          {"merged", {ev.comp_a, ev.comp_b}},
          {"result", ev.result},
          {"bought", edges_json({ev.edge})}};
}

void write_moats_jsonl(const MoatHistory& history, std::ostream& out) {
  for (const auto& ev : history.events) out << to_json(ev).dump() << '\n';
}

Json to_json(const CertificateReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks()) {
    Json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    if (c.skipped) j["skipped"] = true;
    j["measured"] = c.measured;
    j["bound"] = c.bound;
    j["witness"] = c.witness;
    j["evaluations"] = c.evaluations;
    checks.push_back(std::move(j));
  }
  return {{"certifier", rep.certifier()}, {"pass", rep.pass()}, {"checks", std::move(checks)}};
}

Json to_json(const CostShareTable& t) {
  Json j;
  j["scheme"] = to_string(t.scheme);
  j["c"] = t.c;
  j["gamma"] = rational_json(t.gamma);
  j["scale"] = rational_json(t.scale);
  j["total"] = rational_json(t.total());
  Json shares = Json::array();
  for (const auto& s : t.shares) shares.push_back(rational_json(s));
  j["shares"] = std::move(shares);
  if (!t.last_stage.empty()) j["last_stage"] = t.last_stage;
  Json prov = Json::array();
  for (const auto& p : t.provenance)
    prov.push_back({{"pair", p.pair},
                    {"terminal", p.terminal},
                    {"event", p.event},
                    {"stage", p.stage},
                    {"amount", rational_json(p.amount)}});
  j["provenance"] = std::move(prov);
  return j;
}

Json to_json(const F2Construction& fc) {
  Json j;
  j["d1"] = fc.d1;
  j["d2"] = fc.d2;
  j["f1"] = edges_json(fc.f1);
  Json pairs = Json::array();
  for (const auto& p : fc.pairs)
    pairs.push_back({{"stage", p.stage},
                     {"event", p.event},
                     {"leaders", {p.leaders[0], p.leaders[1]}},
                     {"blocks", {p.blocks[0], p.blocks[1]}},
                     {"class", to_string(p.cls)}});
  j["pairs"] = std::move(pairs);
  j["classes"] = fc.classes;
  Json f2 = Json::array();
  for (const auto& e : fc.f2) f2.push_back({{"edge", to_json(e.edge)}, {"stage", e.stage}, {"good", e.good}});
  j["f2"] = std::move(f2);
  j["bad_count"] = fc.bad_count;
  j["f2_cost"] = rational_json(fc.f2_cost);
  j["d2_share"] = rational_json(fc.d2_share);
  j["shares"] = to_json(fc.shares);
  return j;
}

Json to_json(const OracleResult& res) {
  return {{"cost", rational_json(res.cost)},
          {"forest", edges_json(res.forest)},
          {"partition", res.partition},
          {"search_nodes", res.search_nodes}};
}

Json to_json(const TwoStagePlan& plan) {
  return {{"e1", edges_json(plan.e1)},
          {"first_cost", rational_json(plan.first_cost)},
          {"draws", plan.draws},
          {"union", plan.sampled_union}};
}

Json to_json(const PlanEvaluation& ev) {
  Json j;
  j["first_cost"] = rational_json(ev.first_cost);
  j["exact_total"] = ev.exact_total ? Json(rational_json(*ev.exact_total)) : Json(nullptr);
  j["samples"] = ev.samples;
  j["mean_augment"] = ev.mean_augment;
  j["estimate"] = ev.estimate;
  j["half_width"] = ev.half_width;
  j["all_feasible"] = ev.all_feasible;
  return j;
}

Json to_json(const TwoStageOptimum& opt) {
  return {{"e1", edges_json(opt.e1)},
          {"cost", rational_json(opt.cost)},
          {"universe", edges_json(opt.universe)},
          {"evaluated", opt.evaluated}};
}

ScenarioDistribution distribution_from_json(const Json& j, const Instance& inst) {
  ScenarioDistribution pi;
  pi.sigma = rational_from(j.at("sigma"));
  for (const auto& s : j.at("scenarios")) {
    Scenario sc;
    sc.p = rational_from(s.at("p"));
    for (const auto& uv : s.at("pairs")) {
      const int u = uv.at(0).get<int>(), v = uv.at(1).get<int>();
      int found = -1;
      for (int k = 0; k < inst.num_pairs(); ++k) {
        const Demand& d = inst.demands()[k];
        if ((d.s == u && d.t == v) || (d.s == v && d.t == u)) found = k;
      }
      if (found < 0)
        throw std::invalid_argument("scenario pair [" + std::to_string(u) + "," + std::to_string(v) +
                                    "] is not a demand of the instance");
      sc.pairs.push_back(found);
    }
    std::sort(sc.pairs.begin(), sc.pairs.end());
    sc.pairs.erase(std::unique(sc.pairs.begin(), sc.pairs.end()), sc.pairs.end());
    pi.support.push_back(std::move(sc));
  }
  validate(pi, inst);
  return pi;
}

ScenarioDistribution load_distribution(const std::string& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return distribution_from_json(j, inst);
}

}  // namespace glutton
