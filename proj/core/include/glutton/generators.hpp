#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "glutton/instance.hpp"

namespace glutton {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  Rational length;
};

// Shortest-path metric of a connected weighted graph. Throws if disconnected.
Matrix graph_metric(int n, const std::vector<WeightedEdge>& edges);

// Ladder: vertex 0 = s, 1 = s-bar, then s_i = 2i, s-bar_i = 2i+1 for i = 1..N.
// Demand 0 is (s, s-bar), demand i is the i-th rung.
Instance gen_ladder(int N, const Rational& eps);

struct CubicGraph {
  std::string name;
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // edge id = position
  int girth = 0;                           // recorded value, cross-checked by BFS
};

CubicGraph cubic_graph(const std::string& name);  // petersen, heawood, mcgee, tutte-coxeter, k4, k33
std::vector<std::string> cubic_graph_names();      // ordered by girth
int bfs_girth(int n, const std::vector<std::pair<int, int>>& edges);

struct GirthInstanceSpec {
  CubicGraph base;
  std::vector<int> tree_edges;  // edge ids of a BFS spanning tree rooted at 0
  Rational long_edge_length;    // girth / 2
};

GirthInstanceSpec make_girth_spec(const CubicGraph& g);

struct GirthInstance {
  Instance instance;
  std::vector<int> non_tree_edges;
  std::vector<int> matching;  // edge ids used as demands, demand k = matching[k]
};

GirthInstance gen_girth_lb(const GirthInstanceSpec& spec);

enum class RandomFamily { euclidean, graph };

struct RandomSpec {
  int pairs = 3;
  int steiner = 2;  // extra non-terminal vertices
  std::uint64_t seed = 1;
  RandomFamily family = RandomFamily::euclidean;
};

// Euclidean: integer points in a 20x20 grid, distances rounded up, closed.
// Graph: random connected graph with integer weights 1..9, shortest paths.
Instance gen_random(const RandomSpec& spec);

// Member i of the standard random suite (alternates families, K in 1..6,
// at most 14 vertices).
Instance random_suite_instance(int i, std::uint64_t base_seed = 20240601);

}  // namespace glutton
