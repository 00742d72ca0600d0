#include <doctest.h>

#include "glutton/clustering.hpp"
#include "glutton/generators.hpp"
#include "glutton/rng.hpp"
#include "helpers.hpp"
#include "oracles/brute_force.hpp"

using namespace glutton;
using testing_helpers::R;

TEST_CASE("trivial clustering leaves the metric alone") {
  auto inst = random_suite_instance(5);
  Clustering cl(inst);
  CHECK(cl.size() == inst.num_terminals());
  for (NodeId id : cl.ids()) CHECK(cl.mate_active(id));
  PuncturedMetric pm(cl);
  for (int u = 0; u < inst.num_vertices(); ++u)
    for (int v = 0; v < inst.num_vertices(); ++v) CHECK(pm.distance(u, v) == inst.d(u, v));
  CHECK_THROWS_AS(pm.distance(0, inst.num_vertices()), std::out_of_range);
}

TEST_CASE("full contraction") {
  auto inst = random_suite_instance(11);
  Clustering cl(inst);
  while (cl.size() > 1) {
    auto ids = cl.ids();
    cl.merge(ids[0], ids[1]);
  }
  PuncturedMetric pm(cl);
  for (int a = 0; a < inst.num_terminals(); ++a)
    for (int b = 0; b < inst.num_terminals(); ++b)
      CHECK(pm.distance(inst.terminal_vertex(a), inst.terminal_vertex(b)) == 0);
}

TEST_CASE("ladder with contracted rungs") {
  auto inst = gen_ladder(3, R("0.1"));
  Clustering cl(inst);
  for (int i = 1; i <= 3; ++i) cl.merge(cl.node_of_terminal(2 * i), cl.node_of_terminal(2 * i + 1));
  PuncturedMetric pm(cl);
  CHECK(pm.distance(0, 1) == R("8.2"));
  CHECK(pm.between(cl.node_of_terminal(0), cl.node_of_terminal(1)).distance == R("8.2"));
}

TEST_CASE("merge bookkeeping") {
  auto inst = random_suite_instance(3);
  Clustering cl(inst);
  const int before = cl.size();
  NodeId s = cl.node_of_terminal(0), sb = cl.node_of_terminal(1);
  int gen = cl.generation();
  NodeId m = cl.merge(s, sb);
  CHECK(cl.size() == before - 1);
  CHECK(cl.generation() == gen + 1);
  CHECK(m == before);
  CHECK_FALSE(cl.mate_active(m));
  CHECK_THROWS(cl.merge(s, m));
  auto self = PuncturedMetric(cl).between(m, m);
  CHECK(self.degenerate);
  CHECK(self.distance == 0);
}

TEST_CASE("zero-distance pairs start merged") {
  Matrix m{{Rational(0), Rational(0), Rational(3)}, {Rational(0), Rational(0), Rational(3)},
           {Rational(3), Rational(3), Rational(0)}};
  Instance inst(m, {{0, 1}});
  Clustering cl(inst);
  CHECK(cl.size() == 1);
  CHECK_FALSE(cl.mate_active(cl.ids()[0]));
}

TEST_CASE("punctured distances agree with brute force and only shrink") {
  for (int i = 0; i < 30; ++i) {
    auto inst = random_suite_instance(i);
    Rng rng(i);
    Clustering cl(inst);
    PuncturedMetric pm(cl);
    const int n = inst.num_vertices();
    std::vector<std::vector<Rational>> prev(n, std::vector<Rational>(n));
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) prev[u][v] = pm.distance(u, v);
    auto before_partition = cl.partition();
    while (cl.size() > 1) {
      auto ids = cl.ids();
      NodeId a = ids[rng.below(ids.size())], b = a;
      while (b == a) b = ids[rng.below(ids.size())];
      cl.merge(a, b);
      std::vector<int> groups = cl.owners();
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          Rational d = pm.distance(u, v);
          CHECK(d == oracle::punctured(inst, groups, u, v));
          CHECK(d <= prev[u][v]);
          prev[u][v] = d;
        }
      // refinement: every earlier supernode sits inside one current supernode
      for (const auto& part : before_partition) {
        NodeId owner = cl.node_of_terminal(part.front());
        for (int term : part) CHECK(cl.node_of_terminal(term) == owner);
      }
      before_partition = cl.partition();
      // supernode distance is the min over members
      auto now = cl.ids();
      for (std::size_t x = 0; x < now.size(); ++x)
        for (std::size_t y = x + 1; y < now.size(); ++y) {
          auto np = pm.between(now[x], now[y]);
          Rational brute(-1);
          for (int u : cl.vertices(now[x]))
            for (int v : cl.vertices(now[y])) {
              Rational d = oracle::punctured(inst, groups, u, v);
              if (brute < 0 || d < brute) brute = d;
            }
          CHECK(np.distance == brute);
          Rational along(0);
          for (const auto& e : pm.crossing_edges(np.path)) along += e.length;
          CHECK(along == np.distance);
        }
    }
  }
}
