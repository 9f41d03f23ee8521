#include "interpolse/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "interpolse/generators.hpp"

namespace interpolse::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

engine::VerifyConfig config_from(const RunOpts& opts) {
  engine::VerifyConfig c;
  c.strategy = opts.strategy == "random" ? engine::Strategy::random : engine::Strategy::dfs;
  c.seed = opts.seed;
  c.loop_bound = opts.loop_bound;
  c.timeout_s = opts.timeout_s;
  return c;
}

lang::Program load_program(const RunOpts& opts) {
  std::map<std::string, Int> defines;
  if (opts.bound) defines["BOUND"] = Int(*opts.bound);
  return lang::parse_program(read_file(opts.program_path), defines);
}

engine::VerifyResult run_one(const lang::Program& p, const RunOpts& opts,
                             const std::string& mode) {
  engine::VerifyConfig c = config_from(opts);
  return mode == "vanilla" ? engine::run_vanilla(p, c) : engine::verify(p, c);
}

void print_result(std::ostream& out, const RunOpts& opts, const engine::VerifyResult& r) {
  const engine::Verdict& v = r.verdict;
  std::string word = v.kind == engine::Verdict::Kind::reachable    ? "REACHABLE"
                     : v.kind == engine::Verdict::Kind::unreachable ? "UNREACHABLE"
                                                                    : "TIMEOUT";
  if (v.kind == engine::Verdict::Kind::unreachable && v.bounded) word += " (bounded)";
  out << word << "\n";
  if (opts.quiet) return;
  if (v.witness) {
    out << "witness:";
    for (const auto& [name, value] : v.witness->model) out << " " << name << "=" << value;
    out << "\n";
  }
  if (v.root_interpolant) out << "root interpolant: " << v.root_interpolant->str() << "\n";
  const auto& s = r.stats;
  out << "nodes " << s.nodes_created << "  subsumed " << s.nodes_subsumed << "  infeasible "
      << s.infeasible_nodes << "  solver calls " << s.solver_calls << "  interpolants "
      << s.interpolants_stored << "  max depth " << s.max_depth << "  time " << s.wall_time
      << "s\n";
}

int failure(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  return 3;
}

}  // namespace

int cmd_verify(const RunOpts& opts, std::ostream& out, std::ostream& err) {
  try {
    lang::Program p = load_program(opts);
    engine::VerifyResult r = run_one(p, opts, opts.mode);
    print_result(out, opts, r);
    if (!opts.stats_out.empty()) {
      RunRecord rec = make_run_record(opts.program_path, opts.mode, config_from(opts), r);
      write_file(opts.stats_out, to_json(rec) + "\n");
    }
    return verdict_exit_code(make_run_record("", opts.mode, config_from(opts), r).verdict);
  } catch (const std::exception& e) {
    return failure(err, e);
  }
}

int cmd_compare(const RunOpts& opts, std::ostream& out, std::ostream& err) {
  try {
    lang::Program p = load_program(opts);
    engine::VerifyResult dsei_r = run_one(p, opts, "dsei");
    engine::VerifyResult van_r = run_one(p, opts, "vanilla");
    RunRecord a = make_run_record(opts.program_path, "dsei", config_from(opts), dsei_r);
    RunRecord b = make_run_record(opts.program_path, "vanilla", config_from(opts), van_r);
    double node_ratio = dsei_r.stats.nodes_created == 0
                            ? 0.0
                            : static_cast<double>(van_r.stats.nodes_created) /
                                  static_cast<double>(dsei_r.stats.nodes_created);
    double time_ratio =
        dsei_r.stats.wall_time <= 0 ? 0.0 : van_r.stats.wall_time / dsei_r.stats.wall_time;
    if (!opts.quiet) {
      out << "dsei:    " << a.verdict << "  nodes " << a.stats.nodes_created << "  subsumed "
          << a.stats.nodes_subsumed << "  time " << a.stats.wall_time << "s\n";
      out << "vanilla: " << b.verdict << "  nodes " << b.stats.nodes_created << "  time "
          << b.stats.wall_time << "s\n";
      out << "node ratio (vanilla/dsei): " << node_ratio << "\n";
      out << "speedup (vanilla/dsei): " << time_ratio << "\n";
    } else {
      out << a.verdict << " " << b.verdict << " " << node_ratio << "\n";
    }
    if (!opts.stats_out.empty()) {
      nlohmann::json j{{"dsei", nlohmann::json::parse(to_json(a))},
                       {"vanilla", nlohmann::json::parse(to_json(b))},
                       {"node_ratio", node_ratio},
                       {"time_ratio", time_ratio}};
      write_file(opts.stats_out, j.dump(2) + "\n");
    }
    return verdict_exit_code(a.verdict);
  } catch (const std::exception& e) {
    return failure(err, e);
  }
}

namespace {

int emit_program(const std::string& text, const GenOpts& opts, std::ostream& out) {
  if (opts.out_path.empty())
    out << text;
  else
    write_file(opts.out_path, text);
  return 0;
}

}  // namespace

int cmd_gen_shortest_path(const GenOpts& opts, std::ostream& out, std::ostream& err) {
  try {
    gen::AdjMatrix m;
    if (opts.matrix.rfind("layered-random:", 0) == 0) {
      std::uint64_t seed = std::stoull(opts.matrix.substr(15));
      m = gen::layered_random(opts.n, seed);
    } else if (opts.matrix.empty()) {
      if (opts.n != 4) throw InvalidMatrix("no matrix given (only n=4 has a default)");
      m = gen::example_matrix();
    } else {
      m = gen::parse_matrix(opts.n, opts.matrix);
    }
    return emit_program(gen::gen_shortest_path(m, opts.bound), opts, out);
  } catch (const std::exception& e) {
    return failure(err, e);
  }
}

int cmd_gen_bitsum(const GenOpts& opts, std::ostream& out, std::ostream& err) {
  try {
    return emit_program(gen::gen_bitsum(opts.n), opts, out);
  } catch (const std::exception& e) {
    return failure(err, e);
  }
}

}  // namespace interpolse::cli
