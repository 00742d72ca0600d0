#pragma once

#include <optional>
#include <vector>

#include "glutton/certificate.hpp"
#include "glutton/forest.hpp"
#include "glutton/trace.hpp"

namespace glutton {

// Replays a gluttonous trace and augments `fstar` until it is faithful to
// every clustering along the way (Case II joins trees with the event path).
struct FaithfulResult {
  std::vector<Edge> forest;
  CertificateReport report{"build_faithful"};
  int case_two = 0;  // events that forced an augmentation
  Rational added;    // total length of the added edges
};

FaithfulResult build_faithful(const Instance& inst, const std::vector<Edge>& fstar, const RunTrace& trace);

enum class DeletionRule {
  highest_potential,  // the analysed rule
  first_edge,         // mutation: oldest edge on the cycle
};

const char* to_string(DeletionRule rule);

// Candidate-forest replay for one tree of a faithful solution.
CertificateReport updateforest_trace(const Instance& inst, const std::vector<Edge>& tstar, const RunTrace& trace,
                                     DeletionRule rule = DeletionRule::highest_potential);

// Runs updateforest_trace on every tree of a faithful forest and folds the
// reports. Trees without a demand pair of positive width are dropped.
CertificateReport updateforest_forest(const Instance& inst, const std::vector<Edge>& forest, const RunTrace& trace,
                                      DeletionRule rule = DeletionRule::highest_potential);

// One merge seen through the projected clusterings of the trees of Fstar.
struct ProjectedStep {
  int iteration = 0;
  std::optional<Rational> delta;                 // min over trees; empty = infinite
  std::vector<std::optional<Rational>> delta_r;  // per tree
  std::vector<int> both_alive;                   // trees alive on both merged sides
  NodeId result = -1;
  Rational charge;  // charge of the new supernode
  int n_alive = 0;  // trees in which the new supernode is still active
};

struct AccountingResult {
  CertificateReport report;
  std::vector<ProjectedStep> steps;
};

// Per tree r of Fstar: the merges with r alive on both sides cost at most
// 48 cost(T_r) in delta_{t,r} terms; delta sequences ascend.
AccountingResult delta_accounting(const Instance& inst, const std::vector<Edge>& fstar, const RunTrace& trace);

// Charge ledger over the projected clusterings; the invariant must hold at
// every iteration and the merging cost ends below 96 cost(Fstar).
AccountingResult charge_trace(const Instance& inst, const std::vector<Edge>& fstar, const RunTrace& trace);

}  // namespace glutton
