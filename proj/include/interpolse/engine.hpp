#ifndef INTERPOLSE_ENGINE_HPP
#define INTERPOLSE_ENGINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "interpolse/interp.hpp"
#include "interpolse/lang.hpp"
#include "interpolse/solver.hpp"

namespace interpolse::engine {

enum class Strategy { dfs, random };

struct VerifyConfig {
  Strategy strategy = Strategy::dfs;
  std::uint64_t seed = 0;
  int loop_bound = 64;
  double timeout_s = 60.0;
  bool record_trace = false;
  bool trace_paths = false;  // include root paths in node_created events
  solver::SolverLimits solver_limits;
};

struct ExplorationStats {
  std::uint64_t nodes_created = 0;
  std::uint64_t nodes_subsumed = 0;
  std::uint64_t infeasible_nodes = 0;
  std::uint64_t solver_calls = 0;
  std::uint64_t interpolants_stored = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t depth_cuts = 0;  // loop-bound truncations; verdict is "bounded" if > 0
  double wall_time = 0.0;        // seconds
};

/// A symbolic state: program point, symbolic store for the program variables
/// (expressions over the symbolic inputs), and the path condition over the
/// symbolic inputs.  The evaluated context of the state is
///   pc  &&  (v == store[v]  for every program variable v).
struct SymbolicState {
  lang::PointId point = 0;
  std::vector<LinExpr> store;  // indexed like Program::program_vars
  Formula pc;
  std::vector<std::uint32_t> path;  // transition ids from the root
  std::map<lang::PointId, int> loop_counts;
};

SymbolicState initial_state(const lang::Program& p);

/// The evaluated constraint store of a state, over program and symbolic
/// variables: store equalities in declaration order, then path-condition
/// atoms in path order.
Formula eval_context(const lang::Program& p, const SymbolicState& s);

/// Successor state along one transition (no feasibility check).
SymbolicState step(const lang::Program& p, const SymbolicState& s, const lang::Transition& t);

/// Per-point store of learned interpolants; scanned most-recent-first.
struct SubsumptionTable {
  std::map<lang::PointId, std::vector<Formula>> entries;

  void store(lang::PointId p, Formula f) { entries[p].push_back(std::move(f)); }
  const std::vector<Formula>* at(lang::PointId p) const {
    auto it = entries.find(p);
    return it == entries.end() ? nullptr : &it->second;
  }
};

struct DseiResult {
  enum class Kind { interpolant, false_marker, error_found };
  Kind kind = Kind::interpolant;
  Formula interpolant;
  std::optional<SymbolicState> witness_state;  // error_found
  bool tainted = false;                        // subtree contains a depth cut
};

struct DseiOutcome {
  std::optional<DseiResult> result;  // empty on timeout / inconclusive solver
  bool timed_out = false;
  bool inconclusive = false;
};

struct TraceEvent {
  enum class Kind {
    node_created,
    infeasible,
    subsumed,
    stored,
    backprop,
    halt_leaf,
    error_leaf,
    depth_cut
  };
  Kind kind;
  lang::PointId point = 0;
  std::uint64_t node = 0;
  Formula formula;
  std::vector<std::uint32_t> path;  // node_created with trace_paths only
};

/// The DSEI traversal over the subtree rooted at `state`, reusing and
/// extending `table`.  Infeasible root: false_marker.  Error reached:
/// error_found with the witness state.  Otherwise the tree interpolant,
/// the conjunction of the propagated child interpolants.
DseiOutcome dsei(const lang::Program& p, const SymbolicState& state, SubsumptionTable& table,
                 const VerifyConfig& config, ExplorationStats* stats = nullptr,
                 std::vector<TraceEvent>* trace = nullptr);

struct Witness {
  Model model;                             // symbolic inputs
  std::vector<std::uint32_t> replay_path;  // transitions taken by the replay
  lang::PointId target = 0;
  Model final_store;                       // store at the target point
};

struct Verdict {
  enum class Kind { reachable, unreachable, timeout };
  Kind kind = Kind::unreachable;
  std::optional<Witness> witness;           // reachable
  std::optional<Formula> root_interpolant;  // unreachable under dsei
  bool bounded = false;  // some path was truncated at the loop bound
};

struct VerifyResult {
  Verdict verdict;
  ExplorationStats stats;
  SubsumptionTable table;
  std::vector<TraceEvent> trace;
};

/// Interpolation-based verification.  Reachable verdicts carry a model that
/// has been replayed concretely to the target before returning.
VerifyResult verify(const lang::Program& p, const VerifyConfig& config = {});

/// The non-pruning baseline: identical traversal with subsumption and
/// interpolation disabled.
VerifyResult run_vanilla(const lang::Program& p, const VerifyConfig& config = {});

/// View of one frontier entry for strategy decisions.
struct FrontierView {
  lang::PointId point = 0;
  std::uint32_t depth = 0;
  std::uint64_t point_visits = 0;  // states created at this point so far
  bool siblings_complete = false;  // every sibling subtree is resolved
};

/// Picks the next frontier index.  DFS: the most recently created state.
/// RANDOM: round-robin (by `pick_counter`) over a uniform pick, a
/// coverage-weighted pick (weight 1/(1+visits)), and the deepest state whose
/// siblings are all complete.  Deterministic for a fixed rng state.
std::size_t choose_next(const std::vector<FrontierView>& frontier, Strategy strategy,
                        std::mt19937_64& rng, std::uint64_t pick_counter);

}  // namespace interpolse::engine

#endif
