#include "interpolse/run_record.hpp"

#include <json.hpp>

namespace interpolse {

using nlohmann::json;

bool RunRecord::operator==(const RunRecord& o) const {
  auto stats_tuple = [](const engine::ExplorationStats& s) {
    return std::tuple(s.nodes_created, s.nodes_subsumed, s.infeasible_nodes, s.solver_calls,
                      s.interpolants_stored, s.max_depth, s.depth_cuts, s.wall_time);
  };
  return program_path == o.program_path && mode == o.mode && strategy == o.strategy &&
         seed == o.seed && loop_bound == o.loop_bound && timeout_s == o.timeout_s &&
         verdict == o.verdict && witness == o.witness &&
         stats_tuple(stats) == stats_tuple(o.stats) && tool_version == o.tool_version;
}

RunRecord make_run_record(const std::string& program_path, const std::string& mode,
                          const engine::VerifyConfig& config,
                          const engine::VerifyResult& result) {
  RunRecord r;
  r.program_path = program_path;
  r.mode = mode;
  r.strategy = config.strategy == engine::Strategy::dfs ? "dfs" : "random";
  r.seed = config.seed;
  r.loop_bound = config.loop_bound;
  r.timeout_s = config.timeout_s;
  switch (result.verdict.kind) {
    case engine::Verdict::Kind::reachable: r.verdict = "reachable"; break;
    case engine::Verdict::Kind::unreachable: r.verdict = "unreachable"; break;
    case engine::Verdict::Kind::timeout: r.verdict = "timeout"; break;
  }
  if (result.verdict.witness) {
    std::map<std::string, long long> w;
    for (const auto& [name, value] : result.verdict.witness->model)
      w[name] = static_cast<long long>(value);
    r.witness = std::move(w);
  }
  r.stats = result.stats;
  return r;
}

namespace {

json stats_to_json(const engine::ExplorationStats& s) {
  return json{{"nodes_created", s.nodes_created},
              {"nodes_subsumed", s.nodes_subsumed},
              {"infeasible_nodes", s.infeasible_nodes},
              {"solver_calls", s.solver_calls},
              {"interpolants_stored", s.interpolants_stored},
              {"max_depth", s.max_depth},
              {"depth_cuts", s.depth_cuts},
              {"wall_time", s.wall_time}};
}

engine::ExplorationStats stats_from_json(const json& j) {
  engine::ExplorationStats s;
  s.nodes_created = j.at("nodes_created").get<std::uint64_t>();
  s.nodes_subsumed = j.at("nodes_subsumed").get<std::uint64_t>();
  s.infeasible_nodes = j.at("infeasible_nodes").get<std::uint64_t>();
  s.solver_calls = j.at("solver_calls").get<std::uint64_t>();
  s.interpolants_stored = j.at("interpolants_stored").get<std::uint64_t>();
  s.max_depth = j.at("max_depth").get<std::uint64_t>();
  s.depth_cuts = j.at("depth_cuts").get<std::uint64_t>();
  s.wall_time = j.at("wall_time").get<double>();
  return s;
}

}  // namespace

std::string to_json(const RunRecord& r) {
  json j{{"program_path", r.program_path},
         {"mode", r.mode},
         {"strategy", r.strategy},
         {"seed", r.seed},
         {"loop_bound", r.loop_bound},
         {"timeout_s", r.timeout_s},
         {"verdict", r.verdict},
         {"stats", stats_to_json(r.stats)},
         {"tool_version", r.tool_version}};
  if (r.witness)
    j["witness"] = *r.witness;
  else
    j["witness"] = nullptr;
  return j.dump(2);
}

RunRecord run_record_from_json(const std::string& text) {
  json j = json::parse(text);
  RunRecord r;
  r.program_path = j.at("program_path").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  r.strategy = j.at("strategy").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.loop_bound = j.at("loop_bound").get<int>();
  r.timeout_s = j.at("timeout_s").get<double>();
  r.verdict = j.at("verdict").get<std::string>();
  if (!j.at("witness").is_null())
    r.witness = j.at("witness").get<std::map<std::string, long long>>();
  r.stats = stats_from_json(j.at("stats"));
  r.tool_version = j.at("tool_version").get<std::string>();
  return r;
}

int verdict_exit_code(const std::string& verdict) {
  if (verdict == "unreachable") return 0;
  if (verdict == "reachable") return 1;
  if (verdict == "timeout") return 2;
  return 3;
}

}  // namespace interpolse
