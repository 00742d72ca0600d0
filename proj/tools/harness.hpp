#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "glutton/greedy.hpp"
#include "glutton/instance.hpp"

namespace glutton::harness {

enum ExitCode { kPass = 0, kCertificateFailure = 1, kInputError = 2, kOracleLimit = 3 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string instance;  // .sfi path or generator spec
  std::string alg = "gluttonous";
  int c = 2;
  std::string tie = "lex";  // lex | custom:<file>
  std::uint64_t seed = 1;
  bool oracle = true;
  bool require_oracle = false;
  std::string mutate;  // certify updateforest: first-edge
  std::string out;
  std::string format = "json";

  std::string certifier;  // certify
  std::string trace;      // certify: replay this JSONL trace instead of solving
  int target = -1;        // unistrict / nesting; -1 = every pair
  std::string parts;      // groupstrict: JSON file {"d1": [...], "d2": [...]}
  std::vector<int> d2;    // groupstrict: D2 demand indices when no parts file
  std::string scheme = "unistrict";

  std::string dist;  // stochastic distribution file
  int samples = 200;

  std::vector<std::string> instances;  // bench
  std::vector<std::string> algs;       // bench
  bool timing = false;                 // bench: fill wall_time
  int jobs = 1;
};

// gen:ladder:N:eps, gen:girth:<name>, gen:rand:pairs:K:seed, gen:suite:i, or an .sfi path.
Instance load_instance(const std::string& spec);

const std::vector<std::string>& algorithm_tags();
TieRule load_tie(const std::string& spec);
RunTrace run_algorithm(const Instance& inst, const std::string& alg, int c, const TieRule& tie);

// Bound each algorithm is held to against the optimum; empty when none.
std::optional<Rational> ratio_bound(const std::string& alg);

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cost_share(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_stochastic(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace glutton::harness
