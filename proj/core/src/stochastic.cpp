#include "glutton/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "glutton/clustering.hpp"
#include "glutton/exact.hpp"
#include "glutton/greedy.hpp"

namespace glutton {

std::vector<int> ScenarioDistribution::sample(Rng& rng) const {
  if (sampler) return sampler(rng);
  std::int64_t den = 1;
  for (const auto& s : support) den = std::lcm(den, s.p.denominator());
  const std::int64_t x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den)));
  std::int64_t acc = 0;
  for (const auto& s : support) {
    acc += s.p.numerator() * (den / s.p.denominator());
    if (x < acc) return s.pairs;
  }
  return support.empty() ? std::vector<int>{} : support.back().pairs;
}

void validate(const ScenarioDistribution& pi, const Instance& inst) {
  if (pi.sigma <= 1) throw std::invalid_argument("sigma must exceed 1");
  if (!pi.is_explicit()) return;
  if (pi.support.empty()) throw std::invalid_argument("distribution has no scenarios");
  Rational total(0);
  for (const auto& s : pi.support) {
    if (s.p < 0) throw std::invalid_argument("negative scenario probability");
    total += s.p;
    for (int k : s.pairs)
      if (k < 0 || k >= inst.num_pairs()) throw std::invalid_argument("scenario names an unknown demand pair");
  }
  if (total != 1) throw std::invalid_argument("scenario probabilities sum to " + to_string(total));
}

ScenarioDistribution independent_pairs(int num_pairs, double q, const Rational& sigma) {
  ScenarioDistribution pi;
  pi.sigma = sigma;
  pi.sampler = [num_pairs, q](Rng& rng) {
    std::vector<int> out;
    for (int k = 0; k < num_pairs; ++k)
      if (rng.uniform() < q) out.push_back(k);
    return out;
  };
  return pi;
}

namespace {

Instance restrict_to(const Instance& inst, const std::vector<int>& pairs) {
  std::vector<Demand> dem;
  for (int k : pairs) dem.push_back(inst.demands().at(k));
  return inst.with_demands(std::move(dem));
}

std::vector<int> e1_groups(int n, const std::vector<Edge>& e1) {
  auto label = component_labels(n, e1);
  std::vector<int> groups(n, -1);
  for (const auto& e : e1) groups[e.u] = label[e.u], groups[e.v] = label[e.v];
  return groups;
}

std::int64_t ceil_sigma(const Rational& sigma) {
  return (sigma.numerator() + sigma.denominator() - 1) / sigma.denominator();
}

}  // namespace

TwoStagePlan boosted_sampling(const Instance& inst, const ScenarioDistribution& pi, std::uint64_t seed, int c) {
  validate(pi, inst);
  TwoStagePlan plan;
  Rng rng(seed);
  for (std::int64_t j = 0; j < ceil_sigma(pi.sigma); ++j) {
    plan.draws.push_back(pi.sample(rng));
    plan.sampled_union.insert(plan.sampled_union.end(), plan.draws.back().begin(), plan.draws.back().end());
  }
  auto& u = plan.sampled_union;
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  if (!u.empty()) plan.e1 = timed_gluttonous(restrict_to(inst, u), c).forest;
  plan.first_cost = total_length(plan.e1);
  return plan;
}

std::vector<Edge> second_stage_augment(const Instance& inst, const std::vector<Edge>& e1,
                                       const std::vector<int>& scenario, int c) {
  if (!is_acyclic(e1, inst.num_vertices())) throw std::invalid_argument("first-stage edges contain a cycle");
  if (scenario.empty()) return {};
  const Instance sub = restrict_to(inst, scenario);
  const auto tr = timed_gluttonous(contract_edges(sub, e1), c);
  PuncturedMetric pm(inst, e1_groups(inst.num_vertices(), e1));
  std::vector<Edge> aug;
  for (const auto& e : tr.forest)
    for (const auto& x : pm.crossing_edges(pm.path(e.u, e.v))) aug.push_back(x);
  // keep only what the first stage does not already provide
  std::vector<Edge> all = e1;
  all.insert(all.end(), aug.begin(), aug.end());
  all = maximal_acyclic(all, inst.num_vertices());
  return std::vector<Edge>(all.begin() + static_cast<std::ptrdiff_t>(e1.size()), all.end());
}

PlanEvaluation evaluate_plan(const Instance& inst, const ScenarioDistribution& pi, const std::vector<Edge>& e1,
                             int samples, std::uint64_t seed, int c) {
  validate(pi, inst);
  PlanEvaluation ev;
  ev.first_cost = total_length(e1);
  auto cost_of = [&](const std::vector<int>& s) {
    auto aug = second_stage_augment(inst, e1, s, c);
    std::vector<Edge> all = e1;
    all.insert(all.end(), aug.begin(), aug.end());
    ev.all_feasible = ev.all_feasible && connects_pairs(inst, all, s);
    return total_length(aug);
  };
  if (pi.is_explicit()) {
    Rational expect(0);
    for (const auto& s : pi.support) expect += s.p * cost_of(s.pairs);
    ev.exact_total = ev.first_cost + pi.sigma * expect;
  }
  const Rng master(seed);
  ev.samples = samples;
  double sum = 0, sq = 0;
  for (int j = 0; j < samples; ++j) {
    Rng r = master.child(static_cast<std::uint64_t>(j));
    const double x = to_double(cost_of(pi.sample(r)));
    ev.augment_costs.push_back(x);
    sum += x;
    sq += x * x;
  }
  const double sig = to_double(pi.sigma);
  if (samples > 0) {
    ev.mean_augment = sum / samples;
    const double var = samples > 1 ? std::max(0.0, (sq - samples * ev.mean_augment * ev.mean_augment) / (samples - 1)) : 0;
    ev.half_width = 1.96 * sig * std::sqrt(var / samples);
  }
  ev.estimate = to_double(ev.first_cost) + sig * ev.mean_augment;
  return ev;
}

namespace {

// Expected optimal second-stage cost, memoized on the components of E1.
class SecondStage {
 public:
  SecondStage(const Instance& inst, const ScenarioDistribution& pi) : inst_(inst), pi_(pi) {}

  Rational expected(const std::vector<Edge>& e1) {
    auto key = component_labels(inst_.num_vertices(), e1);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Rational total(0);
    for (const auto& s : pi_.support) {
      if (s.pairs.empty() || s.p == 0) continue;
      total += s.p * steiner_forest_exact(contract_edges(restrict_to(inst_, s.pairs), e1)).cost;
    }
    return memo_[key] = total;
  }

 private:
  const Instance& inst_;
  const ScenarioDistribution& pi_;
  std::map<std::vector<int>, Rational> memo_;
};

}  // namespace

Rational two_stage_value(const Instance& inst, const ScenarioDistribution& pi, const std::vector<Edge>& e1) {
  validate(pi, inst);
  if (!pi.is_explicit()) throw std::invalid_argument("two-stage value needs an explicit distribution");
  SecondStage second(inst, pi);
  return total_length(e1) + pi.sigma * second.expected(e1);
}

TwoStageOptimum exact_two_stage(const Instance& inst, const ScenarioDistribution& pi) {
  validate(pi, inst);
  if (!pi.is_explicit()) throw std::invalid_argument("exact two-stage oracle needs an explicit distribution");
  if (static_cast<int>(pi.support.size()) > kMaxScenarios)
    throw OracleLimit("more than " + std::to_string(kMaxScenarios) + " scenarios");
  TwoStageOptimum out;
  auto add = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    if (u == v) return;
    for (const auto& e : out.universe)
      if (e.u == u && e.v == v) return;
    out.universe.push_back({u, v, inst.d(u, v)});
  };
  for (const auto& s : pi.support) {
    if (s.pairs.empty()) continue;
    for (const auto& e : steiner_forest_exact(restrict_to(inst, s.pairs)).forest) add(e.u, e.v);
    for (int k : s.pairs) add(inst.demands()[k].s, inst.demands()[k].t);
  }
  const int m = static_cast<int>(out.universe.size());
  if (m > kMaxUniverseEdges)
    throw OracleLimit("candidate universe has " + std::to_string(m) + " edges (limit " +
                      std::to_string(kMaxUniverseEdges) + ")");
  SecondStage second(inst, pi);
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<Edge> e1;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1u) e1.push_back(out.universe[i]);
    // a cycle edge can always be dropped without changing the second stage
    if (!is_acyclic(e1, inst.num_vertices())) continue;
    ++out.evaluated;
    const Rational value = total_length(e1) + pi.sigma * second.expected(e1);
    if (!found || value < out.cost) {
      found = true;
      out.cost = value;
      out.e1 = std::move(e1);
    }
  }
  return out;
}

}  // namespace glutton
