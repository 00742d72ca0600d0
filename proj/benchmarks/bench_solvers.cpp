#include <benchmark/benchmark.h>

#include "glutton/certifiers.hpp"
#include "glutton/costshares.hpp"
#include "glutton/exact.hpp"
#include "glutton/generators.hpp"
#include "glutton/greedy.hpp"
#include "glutton/primal_dual.hpp"

using namespace glutton;

namespace {

Instance random_instance(int pairs, int steiner) {
  RandomSpec spec;
  spec.pairs = pairs;
  spec.steiner = steiner;
  spec.seed = 1000 + static_cast<std::uint64_t>(pairs);
  return gen_random(spec);
}

template <class Solve>
void solver(benchmark::State& state, Solve solve) {
  const auto inst = random_instance(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst));
  state.counters["pairs"] = static_cast<double>(inst.num_pairs());
}

void BM_gluttonous(benchmark::State& s) { solver(s, [](const Instance& i) { return gluttonous(i); }); }
void BM_gluttonous_contract(benchmark::State& s) { solver(s, [](const Instance& i) { return gluttonous_contract(i); }); }
void BM_timed_gluttonous(benchmark::State& s) { solver(s, [](const Instance& i) { return timed_gluttonous(i); }); }
void BM_paired_greedy(benchmark::State& s) { solver(s, [](const Instance& i) { return paired_greedy(i); }); }
void BM_timed_primal_dual(benchmark::State& s) {
  solver(s, [](const Instance& i) { return timed_primal_dual(i, half_distance_schedule(i)); });
}
void BM_unistrict_A(benchmark::State& s) { solver(s, [](const Instance& i) { return unistrict_A(i); }); }

BENCHMARK(BM_gluttonous)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_gluttonous_contract)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_timed_gluttonous)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_paired_greedy)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_timed_primal_dual)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_unistrict_A)->RangeMultiplier(2)->Range(2, 16);

void BM_exact_forest(benchmark::State& state) {
  const auto inst = random_instance(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(steiner_forest_exact(inst));
}
BENCHMARK(BM_exact_forest)->DenseRange(2, 6);

void BM_punctured_metric(benchmark::State& state) {
  const auto inst = random_instance(static_cast<int>(state.range(0)), 8);
  std::vector<int> groups(inst.num_vertices(), -1);
  for (int k = 0; k < inst.num_pairs(); ++k) groups[inst.demands()[k].s] = groups[inst.demands()[k].t] = k;
  for (auto _ : state) {
    PuncturedMetric pm(inst, groups);
    benchmark::DoNotOptimize(pm.distance(0, inst.num_vertices() - 1));
  }
}
BENCHMARK(BM_punctured_metric)->RangeMultiplier(2)->Range(4, 64);

void BM_updateforest(benchmark::State& state) {
  const auto inst = random_suite_instance(static_cast<int>(state.range(0)));
  const auto fstar = steiner_forest_exact(inst).forest;
  const auto tr = gluttonous(inst);
  const auto faithful = build_faithful(inst, fstar, tr).forest;
  for (auto _ : state) benchmark::DoNotOptimize(updateforest_forest(inst, faithful, tr));
}
BENCHMARK(BM_updateforest)->Arg(5)->Arg(11)->Arg(23);

void BM_verify_groupstrict(benchmark::State& state) {
  const auto inst = gen_ladder(static_cast<int>(state.range(0)), Rational(1, 10));
  for (auto _ : state) benchmark::DoNotOptimize(verify_groupstrict(inst, {0}));
}
BENCHMARK(BM_verify_groupstrict)->Arg(3)->Arg(5)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
