#include "interpolse/engine.hpp"

#include <algorithm>
#include <chrono>
#include <memory>

namespace interpolse::engine {

using lang::PointId;
using lang::PointKind;
using lang::Program;
using lang::StmtKind;
using lang::Transition;

SymbolicState initial_state(const Program& p) {
  SymbolicState s;
  s.point = p.system.start;
  s.store.reserve(p.program_vars.size());
  for (const auto& d : p.program_vars) s.store.push_back(LinExpr::constant(d.init));
  if (p.system.point(s.point).loop_head) s.loop_counts[s.point] = 1;
  return s;
}

namespace {

LinExpr through_store(const Program& p, const std::vector<LinExpr>& store, const LinExpr& e) {
  LinExpr r = e;
  for (std::size_t i = 0; i < p.program_vars.size(); ++i)
    if (r.coeff(p.program_vars[i].name) != 0) r = r.substituted(p.program_vars[i].name, store[i]);
  return r;
}

LinAtom through_store(const Program& p, const std::vector<LinExpr>& store, const LinAtom& a) {
  LinAtom r = a;
  for (std::size_t i = 0; i < p.program_vars.size(); ++i)
    if (r.lhs().coeff(p.program_vars[i].name) != 0)
      r = r.substituted(p.program_vars[i].name, store[i]);
  return r;
}

Formula through_store(const Program& p, const std::vector<LinExpr>& store, const Formula& f) {
  Formula r;
  for (const LinAtom& a : f.atoms()) r.add(through_store(p, store, a));
  return r;
}

}  // namespace

Formula eval_context(const Program& p, const SymbolicState& s) {
  Formula ctx;
  for (std::size_t i = 0; i < p.program_vars.size(); ++i)
    ctx.add(LinAtom(LinExpr::variable(p.program_vars[i].name), Cmp::eq, s.store[i]));
  ctx.add_all(s.pc);
  return ctx;
}

SymbolicState step(const Program& p, const SymbolicState& s, const Transition& t) {
  SymbolicState n = s;
  n.point = t.to;
  n.path.push_back(t.id);
  switch (t.stmt.kind) {
    case StmtKind::assign: {
      LinExpr rhs = through_store(p, s.store, t.stmt.rhs);
      for (std::size_t i = 0; i < p.program_vars.size(); ++i)
        if (p.program_vars[i].name == t.stmt.var) n.store[i] = std::move(rhs);
      break;
    }
    case StmtKind::assume:
      n.pc.add(through_store(p, s.store, t.stmt.guard));
      break;
    case StmtKind::halt:
    case StmtKind::error:
      break;
  }
  if (p.system.point(t.to).loop_head) ++n.loop_counts[t.to];
  return n;
}

std::size_t choose_next(const std::vector<FrontierView>& frontier, Strategy strategy,
                        std::mt19937_64& rng, std::uint64_t pick_counter) {
  if (frontier.empty()) throw InternalError("choose_next on empty frontier");
  if (frontier.size() == 1 || strategy == Strategy::dfs) return frontier.size() - 1;

  auto uniform = [&]() { return static_cast<std::size_t>(rng() % frontier.size()); };
  switch (pick_counter % 3) {
    case 0:
      return uniform();
    case 1: {
      // weight 1/(1+visits); sampled with an explicit cumulative scan so the
      // pick sequence is identical across platforms
      double total = 0;
      for (const auto& v : frontier) total += 1.0 / (1.0 + static_cast<double>(v.point_visits));
      double r = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0) * total;
      double acc = 0;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        acc += 1.0 / (1.0 + static_cast<double>(frontier[i].point_visits));
        if (r < acc) return i;
      }
      return frontier.size() - 1;
    }
    default: {
      // interpolant-closing pick: completing this subtree completes its
      // parent's tree interpolant
      std::size_t best = frontier.size();
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        if (!frontier[i].siblings_complete) continue;
        if (best == frontier.size() || frontier[i].depth > frontier[best].depth) best = i;
      }
      return best == frontier.size() ? uniform() : best;
    }
  }
}

namespace {

struct Node {
  PointId point = 0;
  std::int64_t parent = -1;
  std::uint32_t in_transition = 0;
  std::uint32_t depth = 0;
  std::int8_t guard_const = 1;  // 1: pc unchanged, 0: pc extended, -1: guard false
  bool unknown_feasible = false;
  bool expanded = false;
  bool complete = false;
  bool tainted = false;
  bool false_marker = false;
  std::uint32_t pending = 0;
  // heap-allocated so the pointee survives nodes-vector reallocation and can
  // be dropped once the node no longer needs it
  std::unique_ptr<SymbolicState> st;
  std::vector<std::optional<Formula>> contributions;
  std::optional<Formula> result;
};

class Explorer {
 public:
  Explorer(const Program& p, const VerifyConfig& config, bool interpolating,
           SubsumptionTable& table, ExplorationStats& stats, std::vector<TraceEvent>* trace)
      : p_(p),
        config_(config),
        interpolating_(interpolating),
        table_(table),
        stats_(stats),
        trace_(trace),
        rng_(config.seed) {}

  DseiOutcome run(const SymbolicState& root) {
    auto t0 = std::chrono::steady_clock::now();
    Node n;
    n.point = root.point;
    n.guard_const = root.pc.is_true() ? 1 : 0;
    n.st = std::make_unique<SymbolicState>(root);
    n.st->path.clear();
    root_path_ = root.path;
    nodes_.push_back(std::move(n));
    frontier_.push_back(0);
    ++point_visits_[root.point];
    ++stats_.nodes_created;
    trace_created(0);

    DseiOutcome out;
    while (!frontier_.empty()) {
      double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (elapsed > config_.timeout_s) {
        out.timed_out = true;
        return out;
      }
      std::size_t idx = pick();
      std::size_t id = frontier_[idx];
      frontier_[idx] = frontier_.back();
      frontier_.pop_back();
      Expanded e = expand(id);
      if (e == Expanded::error) {
        DseiResult r;
        r.kind = DseiResult::Kind::error_found;
        r.witness_state = *nodes_[id].st;
        r.witness_state->path = path_of(id);
        out.result = std::move(r);
        return out;
      }
      if (e == Expanded::inconclusive) {
        out.inconclusive = true;
        return out;
      }
    }
    if (!nodes_[0].complete) throw InternalError("exploration ended with unresolved root");
    DseiResult r;
    if (nodes_[0].false_marker) {
      r.kind = DseiResult::Kind::false_marker;
      r.interpolant = Formula(LinAtom::truth(false));
    } else {
      r.kind = DseiResult::Kind::interpolant;
      r.interpolant = *nodes_[0].result;
    }
    r.tainted = nodes_[0].tainted;
    out.result = std::move(r);
    return out;
  }

 private:
  enum class Expanded { ok, error, inconclusive };

  std::size_t pick() {
    if (config_.strategy == Strategy::dfs || frontier_.size() == 1)
      return frontier_.size() - 1;
    std::vector<FrontierView> views;
    views.reserve(frontier_.size());
    for (std::size_t id : frontier_) {
      const Node& n = nodes_[id];
      bool sibs = n.parent < 0 || nodes_[static_cast<std::size_t>(n.parent)].pending == 1;
      views.push_back({n.point, n.depth, point_visits_[n.point], sibs});
    }
    return choose_next(views, config_.strategy, rng_, pick_counter_++);
  }

  std::vector<std::uint32_t> path_of(std::size_t id) const {
    std::vector<std::uint32_t> tail;
    for (std::size_t i = id; nodes_[i].parent >= 0; i = static_cast<std::size_t>(nodes_[i].parent))
      tail.push_back(nodes_[i].in_transition);
    std::vector<std::uint32_t> path = root_path_;
    path.insert(path.end(), tail.rbegin(), tail.rend());
    return path;
  }

  void emit(TraceEvent::Kind kind, std::size_t id, Formula f = {}) {
    if (!trace_) return;
    TraceEvent ev;
    ev.kind = kind;
    ev.point = nodes_[id].point;
    ev.node = id;
    ev.formula = std::move(f);
    trace_->push_back(std::move(ev));
  }

  void trace_created(std::size_t id) {
    if (!trace_) return;
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::node_created;
    ev.point = nodes_[id].point;
    ev.node = id;
    if (config_.trace_paths) ev.path = path_of(id);
    trace_->push_back(std::move(ev));
  }

  Expanded expand(std::size_t id) {
    Node& n = nodes_[id];
    const SymbolicState& st = *n.st;

    // feasibility (line <1>); assignments and constant-true guards keep the
    // path condition unchanged, so only genuinely extended contexts hit the
    // solver
    if (n.guard_const == -1) {
      ++stats_.infeasible_nodes;
      emit(TraceEvent::Kind::infeasible, id);
      resolve(id, /*false_marker=*/true, Formula(), n.tainted);
      return Expanded::ok;
    }
    if (n.guard_const == 0) {
      auto r = solver::is_sat(st.pc, config_.solver_limits, &stats_.solver_calls);
      if (r.is_unsat()) {
        ++stats_.infeasible_nodes;
        emit(TraceEvent::Kind::infeasible, id);
        resolve(id, /*false_marker=*/true, Formula(), n.tainted);
        return Expanded::ok;
      }
      if (r.is_unknown()) n.unknown_feasible = true;
    }

    // subsumption (line <2>)
    if (interpolating_) {
      if (const auto* stored = table_.at(n.point)) {
        for (auto it = stored->rbegin(); it != stored->rend(); ++it) {
          Formula sub = through_store(p_, st.store, *it);
          if (solver::entails(st.pc, sub, config_.solver_limits, &stats_.solver_calls)) {
            if (debug_asserts_enabled() &&
                !solver::entails(eval_context(p_, st), *it, config_.solver_limits,
                                 &stats_.solver_calls))
              throw InternalError("subsumption fired without context entailment");
            ++stats_.nodes_subsumed;
            emit(TraceEvent::Kind::subsumed, id, *it);
            resolve(id, /*false_marker=*/false, *it, n.tainted);
            return Expanded::ok;
          }
        }
      }
    }

    // terminals (lines <3>-<6>)
    PointKind pk = p_.system.point(n.point).kind;
    if (pk == PointKind::error) {
      if (n.unknown_feasible) {
        auto limits = config_.solver_limits;
        limits.branch_depth *= 4;
        auto r = solver::is_sat(st.pc, limits, &stats_.solver_calls);
        if (r.is_unknown()) return Expanded::inconclusive;
        if (r.is_unsat()) {
          ++stats_.infeasible_nodes;
          emit(TraceEvent::Kind::infeasible, id);
          resolve(id, /*false_marker=*/true, Formula(), n.tainted);
          return Expanded::ok;
        }
      }
      emit(TraceEvent::Kind::error_leaf, id);
      return Expanded::error;
    }
    if (pk == PointKind::halt) {
      bool safe = p_.safety.is_true() ||
                  solver::entails(st.pc, through_store(p_, st.store, p_.safety),
                                  config_.solver_limits, &stats_.solver_calls);
      if (!safe) {
        if (n.unknown_feasible) return Expanded::inconclusive;
        emit(TraceEvent::Kind::error_leaf, id);
        return Expanded::error;
      }
      emit(TraceEvent::Kind::halt_leaf, id);
      resolve(id, /*false_marker=*/false, p_.safety, n.tainted);
      return Expanded::ok;
    }

    // loop bound: truncate as a safe leaf, taint so nothing learned from the
    // truncated subtree ever enters the table
    if (p_.system.point(n.point).loop_head) {
      auto it = st.loop_counts.find(n.point);
      if (it != st.loop_counts.end() && it->second > config_.loop_bound) {
        ++stats_.depth_cuts;
        emit(TraceEvent::Kind::depth_cut, id);
        resolve(id, /*false_marker=*/false, Formula(), /*tainted=*/true);
        return Expanded::ok;
      }
    }

    // expand children (lines <8>-<17>), then-branch first under DFS
    const auto& outs = p_.system.out[n.point];
    if (outs.empty()) throw InternalError("plain point with no successors");
    n.expanded = true;
    n.pending = static_cast<std::uint32_t>(outs.size());
    if (interpolating_) n.contributions.resize(outs.size());
    // pushing children may reallocate nodes_, so no Node references (only the
    // heap-held state) survive past this point
    const std::uint32_t parent_depth = n.depth;
    const bool parent_unknown = n.unknown_feasible;
    for (std::size_t i = outs.size(); i-- > 0;) {
      const Transition& t = p_.system.transitions[outs[i]];
      Node c;
      c.point = t.to;
      c.parent = static_cast<std::int64_t>(id);
      c.in_transition = t.id;
      c.depth = parent_depth + 1;
      c.unknown_feasible = parent_unknown;
      SymbolicState cs;
      cs.point = t.to;
      cs.store = st.store;
      cs.pc = st.pc;
      cs.loop_counts = st.loop_counts;
      switch (t.stmt.kind) {
        case StmtKind::assign: {
          LinExpr rhs = through_store(p_, st.store, t.stmt.rhs);
          for (std::size_t v = 0; v < p_.program_vars.size(); ++v)
            if (p_.program_vars[v].name == t.stmt.var) cs.store[v] = std::move(rhs);
          c.guard_const = 1;
          break;
        }
        case StmtKind::assume: {
          LinAtom g = through_store(p_, st.store, t.stmt.guard);
          if (g.is_const_true()) {
            c.guard_const = 1;
          } else if (g.is_const_false()) {
            c.guard_const = -1;
          } else {
            cs.pc.add(g);
            c.guard_const = 0;
          }
          break;
        }
        case StmtKind::halt:
        case StmtKind::error:
          c.guard_const = 1;
          break;
      }
      if (p_.system.point(t.to).loop_head) ++cs.loop_counts[t.to];
      c.st = std::make_unique<SymbolicState>(std::move(cs));
      std::size_t cid = nodes_.size();
      nodes_.push_back(std::move(c));
      frontier_.push_back(cid);
      ++point_visits_[nodes_[cid].point];
      ++stats_.nodes_created;
      stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, nodes_[cid].depth);
      trace_created(cid);
    }
    if (!interpolating_) nodes_[id].st.reset();
    return Expanded::ok;
  }

  // Resolution cascade: propagate a finished child into its parent's
  // contribution slot; when a parent's last child resolves, its tree
  // interpolant is the conjunction of the slots (line <18>) and is stored.
  void resolve(std::size_t id, bool false_marker, Formula result, bool tainted) {
    std::size_t cur = id;
    bool cur_false = false_marker;
    Formula cur_result = std::move(result);
    bool cur_taint = tainted;
    while (true) {
      Node& n = nodes_[cur];
      n.complete = true;
      n.false_marker = cur_false;
      n.tainted = n.tainted || cur_taint;
      if (!cur_false) n.result = cur_result;
      if (interpolating_ && n.expanded && !n.false_marker && !n.tainted) {
        table_.store(n.point, cur_result);
        ++stats_.interpolants_stored;
        emit(TraceEvent::Kind::stored, cur, cur_result);
      }
      if (n.parent < 0) return;
      std::size_t pid = static_cast<std::size_t>(n.parent);
      Node& parent = nodes_[pid];
      parent.tainted = parent.tainted || n.tainted;
      if (interpolating_) {
        const Transition& t = p_.system.transitions[n.in_transition];
        interp::PropagationInput in;
        in.stmt = t.stmt;
        if (!cur_false) {
          in.post = interp::Interpolant{cur_result};
          if (t.stmt.kind == StmtKind::assume) in.context = eval_context(p_, *parent.st);
        }
        Formula contrib =
            interp::backprop(in, config_.solver_limits, &stats_.solver_calls).formula;
        emit(TraceEvent::Kind::backprop, pid, contrib);
        const auto& outs = p_.system.out[parent.point];
        for (std::size_t slot = 0; slot < outs.size(); ++slot)
          if (outs[slot] == n.in_transition) parent.contributions[slot] = std::move(contrib);
      }
      n.st.reset();
      if (--parent.pending > 0) return;
      Formula conj;
      if (interpolating_)
        for (const auto& slot : parent.contributions)
          if (slot) conj.add_all(*slot);
      cur = pid;
      cur_false = false;
      cur_result = std::move(conj);
      cur_taint = parent.tainted;
    }
  }

  const Program& p_;
  const VerifyConfig& config_;
  bool interpolating_;
  SubsumptionTable& table_;
  ExplorationStats& stats_;
  std::vector<TraceEvent>* trace_;
  std::mt19937_64 rng_;
  std::uint64_t pick_counter_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::size_t> frontier_;
  std::map<PointId, std::uint64_t> point_visits_;
  std::vector<std::uint32_t> root_path_;
};

Model witness_model(const Program& p, const SymbolicState& ws, const VerifyConfig& config,
                    ExplorationStats& stats) {
  auto r = solver::is_sat(ws.pc, config.solver_limits, &stats.solver_calls);
  if (!r.is_sat()) throw InternalError("error state without a satisfiable context");
  Model m = r.model;
  for (const auto& d : p.symbolic_vars) {
    if (m.count(d.name)) continue;
    m[d.name] = d.bounds ? d.bounds->first : Int(0);
  }
  // keep only the symbolic inputs
  Model input;
  for (const auto& d : p.symbolic_vars) input[d.name] = m[d.name];
  return input;
}

VerifyResult run_mode(const Program& p, const VerifyConfig& config, bool interpolating) {
  VerifyResult res;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<TraceEvent>* trace = config.record_trace ? &res.trace : nullptr;
  Explorer ex(p, config, interpolating, res.table, res.stats, trace);
  DseiOutcome out = ex.run(initial_state(p));
  if (out.timed_out || out.inconclusive) {
    res.verdict.kind = Verdict::Kind::timeout;
  } else if (out.result->kind == DseiResult::Kind::error_found) {
    const SymbolicState& ws = *out.result->witness_state;
    Witness w;
    w.model = witness_model(p, ws, config, res.stats);
    w.target = ws.point;
    auto replay = lang::execute_concrete(p, w.model);
    bool is_error_target = p.system.point(ws.point).kind == PointKind::error;
    bool ok = replay.point == ws.point && replay.path == ws.path &&
              replay.kind == (is_error_target ? lang::ConcreteOutcome::Kind::hit_error
                                              : lang::ConcreteOutcome::Kind::hit_halt);
    if (!ok) throw InternalError("witness replay diverged from the symbolic path");
    w.replay_path = replay.path;
    w.final_store = replay.store;
    res.verdict.kind = Verdict::Kind::reachable;
    res.verdict.witness = std::move(w);
  } else {
    res.verdict.kind = Verdict::Kind::unreachable;
    if (interpolating) res.verdict.root_interpolant = out.result->interpolant;
    res.verdict.bounded = res.stats.depth_cuts > 0;
  }
  res.stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace

DseiOutcome dsei(const Program& p, const SymbolicState& state, SubsumptionTable& table,
                 const VerifyConfig& config, ExplorationStats* stats,
                 std::vector<TraceEvent>* trace) {
  ExplorationStats local;
  Explorer ex(p, config, /*interpolating=*/true, table, stats ? *stats : local, trace);
  return ex.run(state);
}

VerifyResult verify(const Program& p, const VerifyConfig& config) {
  return run_mode(p, config, /*interpolating=*/true);
}

VerifyResult run_vanilla(const Program& p, const VerifyConfig& config) {
  return run_mode(p, config, /*interpolating=*/false);
}

}  // namespace interpolse::engine
