#pragma once

#include <optional>
#include <vector>

#include "glutton/certificate.hpp"
#include "glutton/trace.hpp"

namespace glutton {

enum class ShareScheme { unistrict, groupstrict };

const char* to_string(ShareScheme s);

// gamma_TG(c) = 96 (c^2 + 1); 480 at c = 2.
Rational gamma_tg(int c);

struct ShareContribution {
  int pair = -1;
  int terminal = -1;  // leader credited by the event
  int event = 0;      // iteration of the timed merge event
  int stage = -1;
  Rational amount;
};

struct CostShareTable {
  ShareScheme scheme = ShareScheme::unistrict;
  int c = 2;
  Rational gamma;
  Rational scale{1};                          // normalization factor of the timed run
  std::vector<Rational> shares;               // per demand pair
  std::vector<ShareContribution> provenance;  // every increment, in event order
  // Unistrict only: last stage in which the terminal led a merging supernode, -1 if never.
  std::vector<int> last_stage;

  Rational total() const;
  Rational total(const std::vector<int>& pairs) const;
};

// Shares read off a timed gluttonous trace of `inst`.
CostShareTable shares_from_trace(const Instance& inst, const RunTrace& timed, ShareScheme scheme);

CostShareTable chi_unistrict(const Instance& inst, int c = 2);
CostShareTable chi_groupstrict(const Instance& inst, int c = 2);

// Nonnegativity, provenance sums and, when opt is given, sum of shares <= opt.
CertificateReport audit_shares(const CostShareTable& table, const std::optional<Rational>& opt);

// Removes demand `target`, runs unistrict_A on the rest and checks the
// reconnection distance of the removed pair in M/F' against
// 4 (c^{l_s+1} + c^{l_sbar+1}) and 16 gamma_TG chi.
CertificateReport verify_unistrict(const Instance& inst, int target, int c = 2);

// Timed gluttonous on D and on D minus `target`, compared stage by stage up
// to level(s): refinement structure of the two clusterings and the distance
// bounds in the punctured metric of the reduced run.
CertificateReport verify_nesting(const Instance& inst, int target, int c = 2);

enum class PairClass { good, bad, dropped };

const char* to_string(PairClass p);

struct StagePair {
  int stage = -1;
  int event = 0;              // iteration in the timed run on D
  int leaders[2] = {-1, -1};  // terminals of D
  int blocks[2] = {-1, -1};   // indices into the stage-start partition
  PairClass cls = PairClass::dropped;
};

struct F2Edge {
  Edge edge;
  int stage = -1;
  bool good = false;
};

struct F2Construction {
  std::vector<int> d1, d2;  // demand indices of D
  std::vector<Edge> f1;     // group_strict_A on D1, vertices of the shared metric
  std::vector<StagePair> pairs;
  // Per stage: equivalence class per stage-start block (the smallest block index in it).
  std::vector<std::vector<int>> classes;
  std::vector<F2Edge> f2;
  std::vector<int> bad_count;  // per stage
  Rational f2_cost;
  Rational d2_share;  // sum of group-strict shares over D2
  CostShareTable shares;
};

struct GroupStrictResult {
  F2Construction construction;
  CertificateReport report{"verify_groupstrict"};
};

// Moats of the D1 run are read at stage boundaries boundary * c^i (in
// normalized units); the analysis uses 6.
GroupStrictResult verify_groupstrict(const Instance& inst, const std::vector<int>& d2, int c = 2,
                                     int boundary = 6);

}  // namespace glutton
