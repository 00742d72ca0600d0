#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "glutton/forest.hpp"
#include "glutton/rng.hpp"

namespace glutton {

struct Scenario {
  Rational p;
  std::vector<int> pairs;  // demand indices, ascending
};

// Either an explicit support or an opaque seeded sampler.
struct ScenarioDistribution {
  std::vector<Scenario> support;
  std::function<std::vector<int>(Rng&)> sampler;
  Rational sigma{2};

  bool is_explicit() const { return !sampler; }
  std::vector<int> sample(Rng& rng) const;
};

// Checks probabilities (nonnegative, summing to 1), pair indices and sigma > 1.
void validate(const ScenarioDistribution& pi, const Instance& inst);

// Every pair realized independently with probability q.
ScenarioDistribution independent_pairs(int num_pairs, double q, const Rational& sigma);

struct TwoStagePlan {
  std::vector<Edge> e1;
  Rational first_cost;
  std::vector<std::vector<int>> draws;  // the ceil(sigma) sampled scenarios
  std::vector<int> sampled_union;
};

// ceil(sigma) draws, union of their pairs, timed gluttonous on the union.
TwoStagePlan boosted_sampling(const Instance& inst, const ScenarioDistribution& pi, std::uint64_t seed, int c = 2);

// Timed gluttonous on the realized pairs in M/E1, mapped back to edges of M.
std::vector<Edge> second_stage_augment(const Instance& inst, const std::vector<Edge>& e1,
                                       const std::vector<int>& scenario, int c = 2);

struct PlanEvaluation {
  Rational first_cost;
  // Explicit distributions: cost(E1) + sigma * sum_S p_S aug(S), exact.
  std::optional<Rational> exact_total;
  // Monte Carlo over `samples` draws.
  int samples = 0;
  double mean_augment = 0;
  double estimate = 0;     // cost(E1) + sigma * mean
  double half_width = 0;   // 95% normal interval on the estimate
  std::vector<double> augment_costs;
  bool all_feasible = true;
};

PlanEvaluation evaluate_plan(const Instance& inst, const ScenarioDistribution& pi, const std::vector<Edge>& e1,
                             int samples, std::uint64_t seed, int c = 2);

constexpr int kMaxScenarios = 4;
constexpr int kMaxUniverseEdges = 16;

struct TwoStageOptimum {
  std::vector<Edge> e1;
  Rational cost;                 // cost(E1) + sigma * sum_S p_S OPT_{M/E1}(S)
  std::vector<Edge> universe;    // candidate first-stage edges
  std::int64_t evaluated = 0;    // acyclic subsets tried
};

// Enumerates first-stage subsets of the candidate universe. Throws
// OracleLimit beyond kMaxScenarios scenarios or kMaxUniverseEdges edges.
TwoStageOptimum exact_two_stage(const Instance& inst, const ScenarioDistribution& pi);

// cost(E1) + sigma * sum_S p_S OPT_{M/E1}(S) for a given first stage.
Rational two_stage_value(const Instance& inst, const ScenarioDistribution& pi, const std::vector<Edge>& e1);

}  // namespace glutton
