#pragma once

#include <vector>

#include "glutton/trace.hpp"

namespace glutton {

// tau[term]: the terminal keeps its moat growing while clock < tau.
using ActivitySchedule = std::vector<Rational>;

ActivitySchedule half_distance_schedule(const Instance& inst);
ActivitySchedule group_strict_schedule(const Instance& inst, int c = 2);
ActivitySchedule scale_schedule(ActivitySchedule tau, const Rational& factor);

enum class PruneRule {
  // Keep a tight edge iff it separates two terminals still active when it went tight.
  timed,
  // Reverse-delete down to a minimal feasible forest.
  reverse_delete,
  none,
};

struct MoatEvent {
  Rational time;
  int comp_a = -1, comp_b = -1;  // component ids before the merge
  int result = -1;
  Edge edge;
};

struct MoatHistory {
  int n = 0;
  std::vector<MoatEvent> events;
  std::vector<Edge> unpruned;  // in tightening order
  std::vector<Rational> tight_time;  // parallel to unpruned
  Rational lower_bound;  // dual growth of moats that separate a demand pair
  Rational total_dual;   // all dual growth
  Rational final_time;
  bool dual_feasible = true;

  // Moats just before the clock reaches `time` (events at exactly `time`
  // are not applied). Label = smallest vertex of the moat.
  std::vector<int> moats_before(const Rational& time) const;
};

struct PrimalDualResult {
  RunTrace trace;
  MoatHistory history;
};

PrimalDualResult timed_primal_dual(const Instance& inst, const ActivitySchedule& tau,
                                   PruneRule prune = PruneRule::timed);

RunTrace group_strict_A(const Instance& inst, int c = 2, PruneRule prune = PruneRule::timed);
PrimalDualResult group_strict_A_history(const Instance& inst, int c = 2, PruneRule prune = PruneRule::timed);

// Timed gluttonous, then join trees that are close relative to their widths.
RunTrace unistrict_A(const Instance& inst, int c = 2);

}  // namespace glutton
