#ifndef INTERPOLSE_RUN_RECORD_HPP
#define INTERPOLSE_RUN_RECORD_HPP

#include <map>
#include <optional>
#include <string>

#include "interpolse/engine.hpp"

namespace interpolse {

inline constexpr const char* kToolVersion = "0.1.0";

/// One verification run, serializable to a single JSON document.
struct RunRecord {
  std::string program_path;
  std::string mode;      // "dsei" | "vanilla"
  std::string strategy;  // "dfs" | "random"
  std::uint64_t seed = 0;
  int loop_bound = 64;
  double timeout_s = 60.0;
  std::string verdict;  // "reachable" | "unreachable" | "timeout"
  std::optional<std::map<std::string, long long>> witness;
  engine::ExplorationStats stats;
  std::string tool_version = kToolVersion;

  bool operator==(const RunRecord& o) const;
};

RunRecord make_run_record(const std::string& program_path, const std::string& mode,
                          const engine::VerifyConfig& config, const engine::VerifyResult& result);

std::string to_json(const RunRecord& r);
RunRecord run_record_from_json(const std::string& text);

/// Exit code is a function of the verdict alone.
int verdict_exit_code(const std::string& verdict);

}  // namespace interpolse

#endif
