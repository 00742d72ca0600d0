#include <doctest.h>

#include <map>

#include "glutton/exact.hpp"
#include "glutton/generators.hpp"
#include "glutton/greedy.hpp"
#include "glutton/stochastic.hpp"
#include "helpers.hpp"
#include "oracles/brute_force.hpp"

using namespace glutton;
using testing_helpers::on_line;
using testing_helpers::R;

namespace {

ScenarioDistribution explicit_pi(std::vector<Scenario> support, const Rational& sigma) {
  ScenarioDistribution pi;
  pi.support = std::move(support);
  pi.sigma = sigma;
  return pi;
}

Instance restrict_pairs(const Instance& inst, const std::vector<int>& pairs) {
  std::vector<Demand> dem;
  for (int k : pairs) dem.push_back(inst.demands()[k]);
  return inst.with_demands(dem);
}

// Two-stage value of a first stage, computed with the brute-force oracle in
// the metric where E1's components are collapsed.
Rational brute_value(const Instance& inst, const ScenarioDistribution& pi, const std::vector<Edge>& e1,
                     std::map<std::vector<int>, Rational>& memo) {
  const int n = inst.num_vertices();
  std::vector<int> group(n);
  for (int v = 0; v < n; ++v) group[v] = v;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : e1) {
      const int g = std::min(group[e.u], group[e.v]);
      for (int v = 0; v < n; ++v)
        if ((group[v] == group[e.u] || group[v] == group[e.v]) && group[v] != g) group[v] = g, changed = true;
    }
  }
  Rational first(0);
  for (const auto& e : e1) first += e.length;
  auto it = memo.find(group);
  if (it == memo.end()) {
    Matrix m(n, std::vector<Rational>(n));
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) m[u][v] = oracle::punctured(inst, group, u, v);
    Rational second(0);
    for (const auto& s : pi.support)
      if (!s.pairs.empty()) second += s.p * oracle::steiner_forest(restrict_pairs(Instance(m, inst.demands()), s.pairs));
    it = memo.emplace(group, second).first;
  }
  return first + pi.sigma * it->second;
}

}  // namespace

TEST_CASE("distribution validation") {
  auto inst = on_line({0, 2, 5, 9}, {{0, 1}, {2, 3}});
  CHECK_THROWS(validate(explicit_pi({{R("1/2"), {0}}}, R("2")), inst));
  CHECK_THROWS(validate(explicit_pi({{R("1"), {0}}}, R("1")), inst));
  CHECK_THROWS(validate(explicit_pi({{R("1"), {2}}}, R("2")), inst));
  CHECK_THROWS(validate(explicit_pi({{R("3/2"), {0}}, {R("-1/2"), {1}}}, R("2")), inst));
  CHECK_NOTHROW(validate(explicit_pi({{R("1/3"), {0}}, {R("2/3"), {0, 1}}}, R("2")), inst));
}

TEST_CASE("explicit sampling follows the probabilities") {
  auto pi = explicit_pi({{R("1/4"), {0}}, {R("3/4"), {1}}}, R("2"));
  Rng rng(7);
  int first = 0;
  for (int i = 0; i < 4000; ++i) first += pi.sample(rng) == std::vector<int>{0};
  CHECK(first > 850);
  CHECK(first < 1150);
}

TEST_CASE("a concentrated distribution gives the timed forest of its scenario") {
  auto inst = random_suite_instance(5);
  std::vector<int> s0;
  for (int k = 0; k < inst.num_pairs(); k += 2) s0.push_back(k);
  auto plan = boosted_sampling(inst, explicit_pi({{Rational(1), s0}}, R("3/2")), 11);
  CHECK(plan.draws.size() == 2);
  CHECK(plan.sampled_union == s0);
  CHECK(plan.e1 == timed_gluttonous(restrict_pairs(inst, s0)).forest);
}

TEST_CASE("boosted sampling replays and grows with sigma") {
  auto inst = random_suite_instance(9);
  auto pi = explicit_pi({{R("1/2"), {}}, {R("1/2"), {0}}}, R("2"));
  auto a = boosted_sampling(inst, pi, 42), b = boosted_sampling(inst, pi, 42);
  CHECK(a.draws == b.draws);
  CHECK(a.e1 == b.e1);

  auto wide = independent_pairs(inst.num_pairs(), 0.3, R("2"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto small = boosted_sampling(inst, wide, seed);
    wide.sigma = R("7/2");
    auto big = boosted_sampling(inst, wide, seed);
    wide.sigma = R("2");
    REQUIRE(big.draws.size() == 4);
    CHECK(std::equal(small.draws.begin(), small.draws.end(), big.draws.begin()));
    CHECK(std::includes(big.sampled_union.begin(), big.sampled_union.end(), small.sampled_union.begin(),
                        small.sampled_union.end()));
  }
}

TEST_CASE("empty samples give an empty first stage") {
  auto inst = random_suite_instance(3);
  auto plan = boosted_sampling(inst, explicit_pi({{Rational(1), {}}}, R("5/2")), 1);
  CHECK(plan.e1.empty());
  CHECK(plan.first_cost == 0);
}

TEST_CASE("second stage") {
  auto inst = on_line({0, 3, 10, 14}, {{0, 1}, {2, 3}});
  std::vector<Edge> e1{{0, 1, Rational(3)}};
  CHECK(second_stage_augment(inst, e1, {0}).empty());
  auto aug = second_stage_augment(inst, {}, {1});
  CHECK(total_length(aug) == timed_gluttonous(restrict_pairs(inst, {1})).cost);
  CHECK_THROWS(second_stage_augment(inst, {{0, 1, Rational(3)}, {1, 2, Rational(7)}, {0, 2, Rational(10)}}, {0}));

  for (int i = 0; i < 40; ++i) {
    auto r = random_suite_instance(i);
    auto pi = independent_pairs(r.num_pairs(), 0.5, R("2"));
    auto plan = boosted_sampling(r, pi, static_cast<std::uint64_t>(i));
    Rng rng(1000 + static_cast<std::uint64_t>(i));
    for (int j = 0; j < 5; ++j) {
      auto s = pi.sample(rng);
      auto extra = second_stage_augment(r, plan.e1, s);
      auto all = plan.e1;
      all.insert(all.end(), extra.begin(), extra.end());
      CHECK(connects_pairs(r, all, s));
      CHECK(is_acyclic(all, r.num_vertices()));
    }
  }
}

TEST_CASE("exact two-stage with one scenario buys everything first") {
  auto inst = random_suite_instance(2);
  std::vector<int> all;
  for (int k = 0; k < std::min(inst.num_pairs(), 3); ++k) all.push_back(k);
  auto pi = explicit_pi({{Rational(1), all}}, R("2"));
  auto opt = exact_two_stage(inst, pi);
  const Rational best = steiner_forest_exact(restrict_pairs(inst, all)).cost;
  CHECK(opt.cost == best);
  CHECK(total_length(opt.e1) == best);
}

TEST_CASE("exact two-stage with a huge inflation covers both scenarios") {
  auto inst = on_line({0, 4, 20, 23, 40}, {{0, 1}, {2, 3}});
  auto pi = explicit_pi({{R("1/2"), {0}}, {R("1/2"), {1}}}, Rational(1000000));
  auto opt = exact_two_stage(inst, pi);
  CHECK(connects_all(inst, opt.e1));
  CHECK(opt.cost == 7);
}

TEST_CASE("exact two-stage beats random first stages") {
  RandomSpec spec;
  spec.pairs = 3;
  spec.steiner = 1;
  spec.seed = 77;
  spec.family = RandomFamily::graph;
  auto inst = gen_random(spec);
  auto pi = explicit_pi({{R("1/3"), {0, 1}}, {R("2/3"), {1, 2}}}, R("3/2"));
  auto opt = exact_two_stage(inst, pi);
  std::map<std::vector<int>, Rational> memo;
  CHECK(brute_value(inst, pi, opt.e1, memo) == opt.cost);
  CHECK(two_stage_value(inst, pi, opt.e1) == opt.cost);

  const int n = inst.num_vertices();
  Rng rng(5);
  int cheaper = 0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<Edge> e1;
    const int want = rng.range(0, n - 1);
    for (int j = 0; j < want; ++j) {
      int u = rng.range(0, n - 1), v = rng.range(0, n - 1);
      if (u != v) e1.push_back({u, v, inst.d(u, v)});
    }
    cheaper += brute_value(inst, pi, e1, memo) < opt.cost;
  }
  CHECK(cheaper == 0);
}

TEST_CASE("boosted sampling stays within the regression envelope") {
  int compared = 0;
  for (std::uint64_t inst_seed = 1; inst_seed <= 6; ++inst_seed) {
    RandomSpec spec;
    spec.pairs = 4;
    spec.steiner = 1;
    spec.seed = inst_seed;
    auto inst = gen_random(spec);
    auto pi = explicit_pi({{R("1/2"), {0, 1}}, {R("1/3"), {1, 2}}, {R("1/6"), {2, 3}}}, R("2"));
    TwoStageOptimum opt;
    try {
      opt = exact_two_stage(inst, pi);
    } catch (const OracleLimit&) {
      continue;
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto plan = boosted_sampling(inst, pi, seed);
      auto ev = evaluate_plan(inst, pi, plan.e1, 0, seed);
      REQUIRE(ev.exact_total);
      CHECK(ev.all_feasible);
      CHECK(*ev.exact_total >= opt.cost);
      CHECK(*ev.exact_total <= 30 * opt.cost);
    }
    ++compared;
  }
  CHECK(compared >= 3);
}

TEST_CASE("Monte Carlo estimate agrees with the exact expectation") {
  auto inst = random_suite_instance(14);
  auto pi = explicit_pi({{R("1/2"), {0}}, {R("1/4"), {}}, {R("1/4"), {0, inst.num_pairs() - 1}}}, R("5/2"));
  auto plan = boosted_sampling(inst, pi, 3);
  auto ev = evaluate_plan(inst, pi, plan.e1, 2000, 99);
  REQUIRE(ev.exact_total);
  CHECK(ev.all_feasible);
  CHECK(ev.half_width > 0);
  CHECK(std::abs(ev.estimate - to_double(*ev.exact_total)) <= 4 * ev.half_width);
}
