#include <CLI11.hpp>

#include <iostream>
#include <vector>

#include "interpolse/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"interpolse: symbolic execution with interpolation-based pruning"};
  app.require_subcommand(1);

  interpolse::cli::RunOpts run;
  long long bound_flag = 0;
  std::vector<CLI::Option*> run_bound_opts;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("program", run.program_path, "program file")->required();
    cmd->add_option("--mode", run.mode, "dsei or vanilla")
        ->check(CLI::IsMember({"dsei", "vanilla"}));
    cmd->add_option("--strategy", run.strategy, "dfs or random")
        ->check(CLI::IsMember({"dfs", "random"}));
    cmd->add_option("--seed", run.seed, "rng seed for the random strategy");
    cmd->add_option("--loop-bound", run.loop_bound, "per-loop iteration bound");
    cmd->add_option("--timeout", run.timeout_s, "wall-clock budget in seconds");
    cmd->add_option("--stats-out", run.stats_out, "write a JSON run record here");
    run_bound_opts.push_back(cmd->add_option("--bound", bound_flag, "bind the named constant BOUND"));
    cmd->add_flag("--quiet", run.quiet, "verdict only");
  };

  CLI::App* verify = app.add_subcommand("verify", "prove the targets reachable or unreachable");
  add_run_flags(verify);

  CLI::App* compare = app.add_subcommand("compare", "run dsei and vanilla side by side");
  add_run_flags(compare);

  interpolse::cli::GenOpts gen;
  long long gen_bound_flag = 0;
  CLI::App* gsp = app.add_subcommand("gen-shortest-path", "emit a shortest-path benchmark");
  gsp->add_option("-n,--nodes", gen.n, "node count")->required();
  gsp->add_option("--matrix", gen.matrix,
                  "rows 'w,w;w' with - for no edge, or layered-random:SEED");
  CLI::Option* gen_bound_opt =
      gsp->add_option("--bound", gen_bound_flag, "assert threshold; omit to emit BOUND");
  gsp->add_option("-o,--out", gen.out_path, "output file (default stdout)");

  CLI::App* gbs = app.add_subcommand("gen-bitsum", "emit a bit-sum benchmark");
  gbs->add_option("-n,--bits", gen.n, "bit count")->required();
  gbs->add_option("-o,--out", gen.out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  for (const CLI::Option* o : run_bound_opts)
    if (o->count() > 0) run.bound = bound_flag;
  if (gen_bound_opt->count() > 0) gen.bound = gen_bound_flag;

  if (verify->parsed()) return interpolse::cli::cmd_verify(run, std::cout, std::cerr);
  if (compare->parsed()) return interpolse::cli::cmd_compare(run, std::cout, std::cerr);
  if (gsp->parsed()) return interpolse::cli::cmd_gen_shortest_path(gen, std::cout, std::cerr);
  if (gbs->parsed()) return interpolse::cli::cmd_gen_bitsum(gen, std::cout, std::cerr);
  return 3;
}
