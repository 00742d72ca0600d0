#pragma once

#include <vector>

#include "glutton/trace.hpp"

namespace glutton {

// Orders candidate supernode pairs with equal distance. The default compares
// (min id, max id); a custom rule ranks supernodes by the best priority of
// their terminals instead.
class TieRule {
 public:
  static TieRule lexicographic() { return TieRule(); }
  // priority[term] = rank, smaller wins. Must be a permutation of 0..2K-1.
  static TieRule priorities(std::vector<int> priority);

  bool is_lex() const { return priority_.empty(); }
  std::string name() const { return is_lex() ? "lex" : "custom"; }
  int key(const Clustering& cl, NodeId id) const;
  // Strict "a before b" for unordered pairs of supernodes.
  bool before(const Clustering& cl, NodeId a1, NodeId a2, NodeId b1, NodeId b2) const;

 private:
  std::vector<int> priority_;
};

// level(s) = ceil(log_c d(s, mate)); -1 for a pair at distance 0.
std::vector<int> terminal_levels(const Instance& inst, int c);
// Highest-level terminal, smallest index among ties.
int leader(const Clustering& cl, NodeId id, const std::vector<int>& levels);

// Nonzero distances below 1 are rescaled first; the trace is in original units.
RunTrace gluttonous(const Instance& inst, const TieRule& tie = TieRule::lexicographic());
RunTrace timed_gluttonous(const Instance& inst, int c = 2);
// Same clusterings as timed_gluttonous, one merge per iteration.
RunTrace timed_gluttonous_iterative(const Instance& inst, int c = 2);
RunTrace gluttonous_contract(const Instance& inst, const TieRule& tie = TieRule::lexicographic());
RunTrace paired_greedy(const Instance& inst);

// Multiplies every length in the trace by factor.
void rescale_trace(RunTrace& trace, const Rational& factor);

}  // namespace glutton
