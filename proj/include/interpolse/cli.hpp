#ifndef INTERPOLSE_CLI_HPP
#define INTERPOLSE_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "interpolse/run_record.hpp"

namespace interpolse::cli {

struct RunOpts {
  std::string program_path;
  std::string mode = "dsei";      // dsei | vanilla
  std::string strategy = "dfs";   // dfs | random
  std::uint64_t seed = 0;
  int loop_bound = 64;
  double timeout_s = 60.0;
  std::optional<long long> bound;  // binds the named constant BOUND
  std::string stats_out;
  bool quiet = false;
};

/// Exit codes: 0 unreachable, 1 reachable, 2 timeout, 3 usage/parse/internal.
int cmd_verify(const RunOpts& opts, std::ostream& out, std::ostream& err);

/// Runs dsei and vanilla back to back and reports both plus the node-count
/// and time ratios.  Exit code follows the dsei verdict.
int cmd_compare(const RunOpts& opts, std::ostream& out, std::ostream& err);

struct GenOpts {
  int n = 4;
  std::string matrix;              // "a,b;c" rows, or "layered-random:SEED"
  std::optional<long long> bound;  // absent: emit the BOUND placeholder
  std::string out_path;            // empty: stdout
};

int cmd_gen_shortest_path(const GenOpts& opts, std::ostream& out, std::ostream& err);
int cmd_gen_bitsum(const GenOpts& opts, std::ostream& out, std::ostream& err);

}  // namespace interpolse::cli

#endif
