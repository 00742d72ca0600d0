#include <iostream>

#include <CLI11.hpp>

#include "harness.hpp"

using namespace glutton::harness;

namespace {

void common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--instance,-i", cfg.instance, "instance file (.sfi) or generator spec");
  sub->add_option("--c", cfg.c, "base of the timed stages")->check(CLI::Range(2, 64));
  sub->add_option("--tie", cfg.tie, "tie rule: lex or custom:<file>");
  sub->add_option("--seed", cfg.seed, "master seed");
  sub->add_option("--oracle", cfg.oracle, "exact oracle on|off")
      ->transform(CLI::CheckedTransformer(std::map<std::string, bool>{{"on", true}, {"off", false}}));
  sub->add_flag("--require-oracle", cfg.require_oracle, "fail with exit 3 when the oracle cannot run");
  sub->add_option("--out,-o", cfg.out, "output path");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner forest gluttonous-algorithm toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* solve = app.add_subcommand("solve", "run one algorithm and write its trace");
  common(solve, cfg);
  solve->add_option("--alg", cfg.alg, "algorithm tag");

  auto* certify = app.add_subcommand("certify", "run a certifier and write its report");
  common(certify, cfg);
  certify->add_option("certifier", cfg.certifier,
                      "trace | faithful | updateforest | delta | charge | unistrict | nesting | groupstrict | shares")
      ->required();
  certify->add_option("--alg", cfg.alg, "algorithm whose trace is certified");
  certify->add_option("--trace", cfg.trace, "certify this JSONL trace instead of solving");
  certify->add_option("--mutate", cfg.mutate, "updateforest deletion rule: first-edge");
  certify->add_option("--target", cfg.target, "demand pair for unistrict/nesting (default: all)");
  certify->add_option("--parts", cfg.parts, "groupstrict D1/D2 file {\"d1\": [...], \"d2\": [...]}");
  certify->add_option("--d2", cfg.d2, "groupstrict D2 demand indices")->delimiter(',');
  certify->add_option("--scheme", cfg.scheme, "cost-share scheme for the shares audit");

  auto* share = app.add_subcommand("cost-share", "compute a cost-share table");
  common(share, cfg);
  share->add_option("--scheme", cfg.scheme, "unistrict | groupstrict");

  auto* stoch = app.add_subcommand("stochastic", "boosted sampling on an explicit scenario distribution");
  common(stoch, cfg);
  stoch->add_option("--dist", cfg.dist, "distribution JSON")->required();
  stoch->add_option("--samples", cfg.samples, "Monte Carlo samples");

  auto* gen = app.add_subcommand("generate", "write a generated instance as .sfi");
  common(gen, cfg);

  auto* bench = app.add_subcommand("bench", "cost table over instances x algorithms");
  common(bench, cfg);
  bench->add_option("--instances", cfg.instances, "instance specs")->delimiter(',');
  bench->add_option("--algs", cfg.algs, "algorithm tags")->delimiter(',');
  bench->add_flag("--timing", cfg.timing, "fill the wall_time column");
  bench->add_option("--jobs,-j", cfg.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  if (solve->parsed()) return cmd_solve(cfg, std::cout, std::cerr);
  if (certify->parsed()) return cmd_certify(cfg, std::cout, std::cerr);
  if (share->parsed()) return cmd_cost_share(cfg, std::cout, std::cerr);
  if (stoch->parsed()) return cmd_stochastic(cfg, std::cout, std::cerr);
  if (gen->parsed()) return cmd_generate(cfg, std::cout, std::cerr);
  return cmd_bench(cfg, std::cout, std::cerr);
}
