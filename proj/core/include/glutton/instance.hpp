#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glutton/rational.hpp"

namespace glutton {

using Matrix = std::vector<std::vector<Rational>>;

struct Demand {
  int s = 0;
  int t = 0;
  friend bool operator==(const Demand&, const Demand&) = default;
};

// A finite metric plus disjoint demand pairs. Terminal ids are positional:
// terminal 2k is the first endpoint of demand k, 2k+1 the second.
class Instance {
 public:
  Instance() = default;
  Instance(Matrix dist, std::vector<Demand> demands);

  int num_vertices() const { return static_cast<int>(dist_.size()); }
  int num_pairs() const { return static_cast<int>(demands_.size()); }
  int num_terminals() const { return 2 * num_pairs(); }

  const Rational& d(int u, int v) const { return dist_[u][v]; }
  const Matrix& dist() const { return dist_; }
  const std::vector<Demand>& demands() const { return demands_; }

  int terminal_vertex(int term) const {
    const Demand& dm = demands_[term / 2];
    return (term & 1) ? dm.t : dm.s;
  }
  // -1 when the vertex is not a terminal.
  int terminal_at(int vertex) const { return term_of_vertex_[vertex]; }
  bool is_terminal(int vertex) const { return term_of_vertex_[vertex] >= 0; }

  static int mate(int term) { return term ^ 1; }
  static int pair_of(int term) { return term / 2; }

  // Distance between a terminal and its mate.
  const Rational& pair_distance(int k) const { return dist_[demands_[k].s][demands_[k].t]; }

  // Distances as integers over a common denominator: d(u,v) = int_dist()[u][v] / denominator().
  std::int64_t denominator() const { return den_; }
  const std::vector<std::vector<std::int64_t>>& int_dist() const { return int_dist_; }

  Instance with_demands(std::vector<Demand> demands) const { return Instance(dist_, std::move(demands)); }
  Instance scaled(const Rational& factor) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.dist_ == b.dist_ && a.demands_ == b.demands_;
  }

 private:
  Matrix dist_;
  std::vector<Demand> demands_;
  std::vector<int> term_of_vertex_;
  std::int64_t den_ = 1;
  std::vector<std::vector<std::int64_t>> int_dist_;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

// Checks metric axioms and demand disjointness. With allow_rescale the
// "nonzero distances are at least 1" rule is skipped (see normalize).
ValidationReport validate(const Instance& inst, bool allow_rescale = false);

struct Normalized {
  Instance instance;
  Rational scale{1};  // normalized = original * scale
};

// Rescales so the minimum nonzero distance is 1 when it is below 1.
Normalized normalize(const Instance& inst);

// In-place shortest-path closure.
void metric_closure(Matrix& m);

}  // namespace glutton
