#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "glutton/forest.hpp"

namespace glutton {

class OracleLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  Rational cost;
  std::vector<Edge> forest;
  std::vector<std::vector<int>> partition;  // demand indices per tree
  std::int64_t search_nodes = 0;
};

constexpr int kMaxTreeTerminals = 12;
constexpr int kMaxForestPairs = 7;

// Minimum Steiner tree over the given vertices; every instance vertex may be
// a Steiner point.
OracleResult steiner_tree_exact(const Instance& inst, const std::vector<int>& terminals);

// Minimum Steiner forest: best partition of the demands into trees, ties
// broken toward more trees.
OracleResult steiner_forest_exact(const Instance& inst);

bool within_oracle_limits(const Instance& inst);

}  // namespace glutton
