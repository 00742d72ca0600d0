#pragma once

#include <string>
#include <vector>

#include "glutton/clustering.hpp"
#include "glutton/forest.hpp"

namespace glutton {

enum class EventKind {
  merge,         // two supernodes
  contract,      // shortest path contracted, may absorb inactive supernodes
  pair_connect,  // paired greedy round
  tree_connect,  // extra connection step of the uni-strict solver
  moat_meet,     // primal-dual tight edge
};

const char* to_string(EventKind k);

struct MergeEvent {
  int iteration = 0;  // 1-based
  int stage = -1;     // timed runs only
  EventKind kind = EventKind::merge;
  // merged[0], merged[1] are the selected pair; further entries were absorbed.
  std::vector<NodeId> merged;
  std::vector<int> absorbed_vertices;  // free vertices swallowed by a contraction
  NodeId result = -1;
  int leaders[2] = {-1, -1};  // terminal leaders of merged[0], merged[1] (timed runs)
  int pair = -1;              // paired greedy: demand served
  Rational distance;          // merging distance
  Rational time;              // primal-dual: event clock
  std::vector<Edge> bought;
};

struct RunTrace {
  std::string algorithm;
  int c = 0;  // timed runs
  std::string tie = "lex";
  std::vector<MergeEvent> events;
  // Timed runs: clustering at the start of stage i, and after the last stage.
  std::vector<std::vector<std::vector<int>>> stage_partitions;
  std::vector<std::vector<int>> final_partition;
  std::vector<Edge> forest;
  Rational cost;
  Rational scale{1};  // instance was multiplied by this before solving
  int merges() const { return static_cast<int>(events.size()); }
};

// Sum of merging distances.
Rational total_merging_distance(const RunTrace& trace);

}  // namespace glutton
