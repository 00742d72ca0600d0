#include <doctest.h>

#include "glutton/certificate.hpp"
#include "glutton/exact.hpp"
#include "glutton/generators.hpp"
#include "glutton/greedy.hpp"
#include "helpers.hpp"

using namespace glutton;
using testing_helpers::on_line;
using testing_helpers::R;

namespace {

void require_clean(const Instance& inst, const RunTrace& tr) {
  auto rep = check_trace(inst, tr);
  for (const auto& c : rep.checks()) {
    CAPTURE(tr.algorithm);
    CAPTURE(c.name);
    CAPTURE(c.witness);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("single pair") {
  auto inst = on_line({0, 5}, {{0, 1}});
  for (auto tr : {gluttonous(inst), gluttonous_contract(inst), paired_greedy(inst)}) {
    CHECK(tr.merges() == 1);
    CHECK(tr.events[0].distance == 5);
    CHECK(tr.cost == 5);
    CHECK(tr.forest.size() == 1);
    require_clean(inst, tr);
  }
  auto a = gluttonous(inst), b = gluttonous_contract(inst);
  CHECK(a.events[0].merged == b.events[0].merged);
  CHECK(a.forest == b.forest);
}

TEST_CASE("timed gluttonous stage placement") {
  auto unit = on_line({0, 1}, {{0, 1}});
  auto tr = timed_gluttonous(unit);
  CHECK(tr.merges() == 1);
  CHECK(tr.events[0].stage == 0);
  CHECK(tr.cost == 1);

  auto five = on_line({0, 5}, {{0, 1}});
  CHECK(terminal_levels(five, 2)[0] == 3);
  tr = timed_gluttonous(five);
  CHECK(tr.merges() == 1);
  CHECK(tr.events[0].stage == 2);
  CHECK(tr.cost == 5);
  require_clean(five, tr);
  CHECK_THROWS(timed_gluttonous(five, 1));
}

TEST_CASE("contraction absorbs an inactive supernode on the path") {
  // pair (1,2) merges first at distance 1; pair (0,3) then routes through it
  auto inst = on_line({-3, 0, 1, 4}, {{1, 2}, {0, 3}});
  auto tr = gluttonous_contract(inst);
  REQUIRE(tr.merges() == 2);
  CHECK(tr.events[1].merged.size() >= 3);
  CHECK(tr.events[1].distance == 6);
  CHECK(tr.cost == 7);
  require_clean(inst, tr);
  auto plain = gluttonous(inst);
  CHECK(plain.events[1].merged.size() == 2);
  CHECK(plain.cost == 7);
}

TEST_CASE("paired greedy on girth instances buys the direct edges") {
  for (const char* name : {"petersen", "heawood"}) {
    CAPTURE(name);
    auto gi = gen_girth_lb(make_girth_spec(cubic_graph(name)));
    auto tr = paired_greedy(gi.instance);
    const Rational half = make_girth_spec(cubic_graph(name)).long_edge_length;
    CHECK(tr.merges() == gi.instance.num_pairs());
    for (const auto& ev : tr.events) {
      const Demand& dm = gi.instance.demands()[ev.pair];
      REQUIRE(ev.bought.size() == 1);
      CHECK(((ev.bought[0].u == dm.s && ev.bought[0].v == dm.t) || (ev.bought[0].u == dm.t && ev.bought[0].v == dm.s)));
      CHECK(ev.distance == half);
    }
    CHECK(tr.cost == half * gi.instance.num_pairs());
    require_clean(gi.instance, tr);
  }
}

TEST_CASE("ladder under the lexicographic rule") {
  auto inst = gen_ladder(3, R("0.1"));
  auto tr = gluttonous(inst);
  require_clean(inst, tr);
  // rungs and rails are all at distance 2; the lexicographic rule picks (s_1, s-bar_1) first
  CHECK(tr.events[0].distance == 2);
  auto opt = steiner_forest_exact(inst);
  CHECK(tr.cost <= 96 * opt.cost);
}

TEST_CASE("random suite: invariants, determinism, twin timed forms, ratios") {
  for (int i = 0; i < 48; ++i) {
    CAPTURE(i);
    auto inst = random_suite_instance(i);
    auto opt = steiner_forest_exact(inst).cost;
    auto g = gluttonous(inst);
    auto k = gluttonous_contract(inst);
    auto t = timed_gluttonous(inst);
    auto ti = timed_gluttonous_iterative(inst);
    auto p = paired_greedy(inst);
    for (const auto* tr : {&g, &k, &t, &ti, &p}) {
      require_clean(inst, *tr);
      CHECK(tr->cost >= opt);
    }
    CHECK(g.cost <= 96 * opt);
    CHECK(k.cost <= 96 * opt);
    CHECK(t.cost <= 480 * opt);
    CHECK(t.stage_partitions == ti.stage_partitions);
    CHECK(t.merges() == ti.merges());
    auto again = gluttonous(inst);
    CHECK(again.forest == g.forest);
    CHECK(again.merges() == g.merges());
    CHECK(g.merges() <= inst.num_terminals() - 1);
  }
}

TEST_CASE("custom tie rule") {
  auto inst = gen_ladder(3, R("0.1"));
  std::vector<int> rev(inst.num_terminals());
  for (int i = 0; i < inst.num_terminals(); ++i) rev[i] = inst.num_terminals() - 1 - i;
  auto tie = TieRule::priorities(rev);
  auto a = gluttonous(inst, tie), b = gluttonous(inst, tie);
  CHECK(a.forest == b.forest);
  CHECK(a.tie == "custom");
  require_clean(inst, a);
  CHECK_THROWS(TieRule::priorities({0, 0, 1}));
}

TEST_CASE("distances below one are rescaled and reported in original units") {
  Matrix m{{Rational(0), Rational(1, 4)}, {Rational(1, 4), Rational(0)}};
  Instance inst(m, {{0, 1}});
  auto tr = gluttonous(inst);
  CHECK(tr.cost == Rational(1, 4));
  CHECK(tr.scale == 4);
  auto t = timed_gluttonous(inst);
  CHECK(t.cost == Rational(1, 4));
  CHECK(t.events[0].stage == 0);
  require_clean(inst, t);
}
