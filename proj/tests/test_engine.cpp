#include <doctest.h>

#include <set>

#include "interpolse/engine.hpp"
#include "interpolse/generators.hpp"
#include "progen.hpp"
#include "testutil.hpp"

using namespace interpolse;
using namespace interpolse::engine;
using lang::PointId;
using lang::Program;
using testutil::atom;
using testutil::fml;

namespace {

bool equivalent(const Formula& a, const Formula& b) {
  return solver::entails(a, b) && solver::entails(b, a);
}

// branch point whose then-guard is the given atom
PointId branch_point(const Program& p, const LinAtom& guard) {
  for (const auto& outs : p.system.out) {
    if (outs.size() != 2) continue;
    const auto& t = p.system.transitions[outs[0]];
    if (t.stmt.kind == lang::StmtKind::assume && t.stmt.guard == guard) return t.from;
  }
  throw Error("no branch with guard " + guard.str());
}

// source point of the unique assignment var := rhs
PointId assign_point(const Program& p, const std::string& var, const std::string& rhs) {
  LinAtom want = parse_atom(rhs + " == 0");  // reuse the atom parser + canonicalizer
  for (const auto& t : p.system.transitions)
    if (t.stmt.kind == lang::StmtKind::assign && t.stmt.var == var &&
        LinAtom(t.stmt.rhs, Cmp::eq, LinExpr::constant(0)) == want)
      return t.from;
  throw Error("no assignment " + var + " = " + rhs);
}

std::optional<Formula> first_stored_at(const VerifyResult& r, PointId point) {
  for (const auto& ev : r.trace)
    if (ev.kind == TraceEvent::Kind::stored && ev.point == point) return ev.formula;
  return std::nullopt;
}

const char* kExample51 = R"(
sym t;
sym x in [0, 1];
var y = 0;
var z = 1;
var w = 0;
if (t > 3) {
} else {
  y = 1;
  z = 2;
}
if (x > 0) {
  w = x + 1;
  z = z + 33;
} else {
  w = x + 3;
  y = 2*z - y - 2;
}
assert(w > -3);
assert(w < 6);
assert(y < z);
halt;
)";

}  // namespace

TEST_CASE("trivial program yields a true interpolant and no subsumption") {
  Program p = lang::parse_program("sym x in [0, 1]; halt;");
  auto r = verify(p);
  CHECK(r.verdict.kind == Verdict::Kind::unreachable);
  CHECK(r.verdict.root_interpolant->is_true());
  CHECK(r.stats.nodes_subsumed == 0);
}

TEST_CASE("minimal branch is reachable with a replayed witness") {
  Program p = lang::parse_program("sym x; if (x > 0) { error; } halt;");
  auto r = verify(p);
  REQUIRE(r.verdict.kind == Verdict::Kind::reachable);
  const Witness& w = *r.verdict.witness;
  CHECK(w.model.at("x") > 0);
  auto replay = lang::execute_concrete(p, w.model);
  CHECK(replay.kind == lang::ConcreteOutcome::Kind::hit_error);
  CHECK(replay.path == w.replay_path);
}

TEST_CASE("shortest-path walk-through: interpolants, pruning, root") {
  Program p = lang::parse_program(gen::gen_shortest_path(gen::example_matrix(), 90));
  VerifyConfig cfg;
  cfg.record_trace = true;
  auto r = verify(p, cfg);

  CHECK(r.verdict.kind == Verdict::Kind::unreachable);
  CHECK(r.stats.nodes_subsumed >= 1);

  // the interpolant learned at the entry of node 3's block after the first
  // path is exactly d >= 30
  PointId p3 = assign_point(p, "d", "d + 60");
  auto stored = first_stored_at(r, p3);
  REQUIRE(stored.has_value());
  CHECK(equivalent(*stored, fml("d >= 30")));

  // the interpolant learned at node 2's block entry is d >= 0
  PointId p2 = branch_point(p, atom("c2 == 3"));
  auto stored2 = first_stored_at(r, p2);
  REQUIRE(stored2.has_value());
  CHECK(equivalent(*stored2, fml("d >= 0")));

  // root interpolant entails d >= -5
  REQUIRE(r.verdict.root_interpolant.has_value());
  CHECK(solver::entails(*r.verdict.root_interpolant, fml("d >= -5")));

  // vanilla run never subsumes
  auto v = run_vanilla(p);
  CHECK(v.stats.nodes_subsumed == 0);
  CHECK(v.verdict.kind == Verdict::Kind::unreachable);
}

TEST_CASE("shortest-path bounds 95 and 96 bracket the shortest distance") {
  auto m = gen::example_matrix();
  Program safe = lang::parse_program(gen::gen_shortest_path(m, 95));
  CHECK(verify(safe).verdict.kind == Verdict::Kind::unreachable);

  Program unsafe = lang::parse_program(gen::gen_shortest_path(m, 96));
  auto r = verify(unsafe);
  REQUIRE(r.verdict.kind == Verdict::Kind::reachable);
  CHECK(r.verdict.witness->final_store.at("d") == 95);
}

TEST_CASE("example with interpolation: abduction-backed pruning") {
  Program p = lang::parse_program(kExample51);
  VerifyConfig cfg;
  cfg.record_trace = true;
  auto r = verify(p, cfg);
  CHECK(r.verdict.kind == Verdict::Kind::unreachable);

  PointId p2 = branch_point(p, atom("x > 0"));
  auto stored = first_stored_at(r, p2);
  REQUIRE(stored.has_value());
  CHECK(equivalent(*stored, fml("x > -1 && x < 2 && y < z + 33 && y > z - 2")));

  // the second visit of the branch point is pruned by that interpolant
  bool pruned = false;
  for (const auto& ev : r.trace)
    if (ev.kind == TraceEvent::Kind::subsumed && ev.point == p2) pruned = true;
  CHECK(pruned);

  // the plain context core would not have subsumed it
  Formula ctx_2b = fml("x >= 0 && x <= 1 && t <= 3 && y == 1 && z == 2 && w == 0");
  CHECK(!solver::entails(ctx_2b, fml("x > -1 && x < 2 && y == 0 && z == 1")));
  CHECK(solver::entails(ctx_2b, *stored));
}

TEST_CASE("bitsum: perfect subsumption keeps the tree linear") {
  Program p = lang::parse_program(gen::gen_bitsum(8));
  VerifyConfig cfg;
  cfg.record_trace = true;
  auto r = verify(p, cfg);
  CHECK(r.verdict.kind == Verdict::Kind::unreachable);
  CHECK(r.stats.nodes_subsumed == 8);  // one per level plus the final merge

  // level interpolant with j bits assigned: -j <= k1+...+kj <= j
  for (int j : {1, 4, 7}) {
    PointId lvl = branch_point(p, atom("b" + std::to_string(j + 1) + " == 1"));
    auto stored = first_stored_at(r, lvl);
    REQUIRE(stored.has_value());
    std::string sum;
    for (int i = 1; i <= j; ++i) sum += (i > 1 ? " + k" : "k") + std::to_string(i);
    Formula expect = fml(sum + " >= -" + std::to_string(j) + " && " + sum +
                         " <= " + std::to_string(j));
    CHECK(equivalent(*stored, expect));
  }
}

TEST_CASE("vanilla explores the full tree") {
  Program p = lang::parse_program(gen::gen_bitsum(12));
  auto r = run_vanilla(p);
  CHECK(r.verdict.kind == Verdict::Kind::unreachable);
  CHECK(r.stats.nodes_created >= (1u << 12));
  CHECK(r.stats.interpolants_stored == 0);

  Program sp = lang::parse_program(gen::gen_shortest_path(gen::example_matrix(), 90));
  VerifyConfig cfg;
  cfg.record_trace = true;
  auto rs = run_vanilla(sp, cfg);
  CHECK(rs.verdict.kind == Verdict::Kind::unreachable);
  int halt_leaves = 0;
  for (const auto& ev : rs.trace)
    if (ev.kind == TraceEvent::Kind::halt_leaf) ++halt_leaves;
  CHECK(halt_leaves == 4);  // the four monotone graph paths
}

TEST_CASE("witness distances come from the store") {
  Program p = lang::parse_program(gen::gen_shortest_path(gen::example_matrix(), 1000));
  auto r = verify(p);
  REQUIRE(r.verdict.kind == Verdict::Kind::reachable);
  long long d = static_cast<long long>(r.verdict.witness->final_store.at("d"));
  CHECK(d < 1000);
  CHECK(d >= 95);
}

TEST_CASE("loop bound cuts taint the table and mark the verdict bounded") {
  Program p = lang::parse_program(
      "sym n in [0, 9]; var i = 0; while (i < n) { i = i + 1; } assert(i <= 20); halt;");
  VerifyConfig cfg;
  cfg.loop_bound = 3;
  auto r = verify(p, cfg);
  CHECK(r.verdict.kind == Verdict::Kind::unreachable);
  CHECK(r.verdict.bounded);
  CHECK(r.stats.depth_cuts > 0);
  // every loop-head subtree reaches the cut, so nothing is learned there
  PointId head = 0;
  for (const auto& pt : p.system.points)
    if (pt.loop_head) head = pt.id;
  CHECK(r.table.entries.count(head) == 0);

  VerifyConfig full;
  auto r2 = verify(p, full);
  CHECK(r2.verdict.kind == Verdict::Kind::unreachable);
  CHECK(!r2.verdict.bounded);
}

TEST_CASE("soundness cross-check on random programs") {
  progen::SmallPrograms gen(42);
  for (int i = 0; i < 60; ++i) {
    std::string src = gen.next();
    CAPTURE(src);
    Program p = lang::parse_program(src);
    auto inputs = gen.all_inputs(p);
    bool concrete = progen::any_input_errors(p, inputs);
    auto d = verify(p);
    auto v = run_vanilla(p);
    REQUIRE(d.verdict.kind != Verdict::Kind::timeout);
    REQUIRE(v.verdict.kind != Verdict::Kind::timeout);
    CHECK((d.verdict.kind == Verdict::Kind::reachable) == concrete);
    CHECK((v.verdict.kind == Verdict::Kind::reachable) == concrete);
  }
}

TEST_CASE("feasible symbolic paths replay concretely along the same route") {
  progen::SmallPrograms gen(77);
  for (int i = 0; i < 20; ++i) {
    Program p = lang::parse_program(gen.next());
    VerifyConfig cfg;
    cfg.record_trace = true;
    cfg.trace_paths = true;
    auto r = run_vanilla(p, cfg);
    int checked = 0;
    for (const auto& ev : r.trace) {
      if (ev.kind != TraceEvent::Kind::halt_leaf) continue;
      // rebuild the state's path condition by walking its recorded path
      for (const auto& created : r.trace) {
        if (created.kind != TraceEvent::Kind::node_created || created.node != ev.node) continue;
        SymbolicState s = initial_state(p);
        for (std::uint32_t tid : created.path) s = step(p, s, p.system.transitions[tid]);
        auto sat = solver::is_sat(s.pc);
        REQUIRE(sat.is_sat());
        Model input = sat.model;
        for (const auto& d : p.symbolic_vars)
          if (!input.count(d.name)) input[d.name] = d.bounds ? d.bounds->first : Int(0);
        auto replay = lang::execute_concrete(p, input);
        CHECK(replay.path == created.path);
        ++checked;
      }
      if (checked > 3) break;
    }
  }
}

TEST_CASE("dsei exploration is a truncation of the vanilla tree") {
  progen::SmallPrograms gen(99);
  for (int i = 0; i < 25; ++i) {
    Program p = lang::parse_program(gen.next());
    VerifyConfig cfg;
    cfg.record_trace = true;
    cfg.trace_paths = true;
    auto d = verify(p, cfg);
    auto v = run_vanilla(p, cfg);
    if (d.verdict.kind == Verdict::Kind::reachable) continue;  // vanilla stops early too
    std::set<std::vector<std::uint32_t>> vanilla_paths;
    for (const auto& ev : v.trace)
      if (ev.kind == TraceEvent::Kind::node_created) vanilla_paths.insert(ev.path);
    for (const auto& ev : d.trace)
      if (ev.kind == TraceEvent::Kind::node_created) CHECK(vanilla_paths.count(ev.path) == 1);
  }
}

TEST_CASE("identical configuration gives identical runs") {
  progen::SmallPrograms gen(1234);
  std::string src = gen.next();
  Program p = lang::parse_program(src);
  for (Strategy strat : {Strategy::dfs, Strategy::random}) {
    VerifyConfig cfg;
    cfg.strategy = strat;
    cfg.seed = 42;
    auto a = verify(p, cfg);
    auto b = verify(p, cfg);
    CHECK(a.verdict.kind == b.verdict.kind);
    CHECK(a.stats.nodes_created == b.stats.nodes_created);
    CHECK(a.stats.nodes_subsumed == b.stats.nodes_subsumed);
    CHECK(a.stats.infeasible_nodes == b.stats.infeasible_nodes);
    CHECK(a.stats.solver_calls == b.stats.solver_calls);
    CHECK(a.stats.interpolants_stored == b.stats.interpolants_stored);
    CHECK(a.stats.max_depth == b.stats.max_depth);
  }
}

TEST_CASE("random strategy agrees with dfs on verdicts") {
  progen::SmallPrograms gen(555);
  for (int i = 0; i < 25; ++i) {
    Program p = lang::parse_program(gen.next());
    auto d = verify(p);
    VerifyConfig cfg;
    cfg.strategy = Strategy::random;
    cfg.seed = 7 + i;
    auto r = verify(p, cfg);
    CHECK(d.verdict.kind == r.verdict.kind);
  }
}

TEST_CASE("choose_next strategies") {
  std::mt19937_64 rng(42);
  std::vector<FrontierView> one{{0, 3, 1, true}};
  CHECK(choose_next(one, Strategy::dfs, rng, 0) == 0);
  CHECK(choose_next(one, Strategy::random, rng, 0) == 0);

  std::vector<FrontierView> many{{0, 1, 5, false}, {1, 2, 1, true}, {2, 5, 1, true}};
  // dfs picks the most recently created state
  CHECK(choose_next(many, Strategy::dfs, rng, 0) == 2);
  // the interpolant-closing picker takes the deepest completable state
  CHECK(choose_next(many, Strategy::random, rng, 2) == 2);

  // reproducibility for a fixed seed
  std::mt19937_64 r1(42), r2(42);
  for (std::uint64_t i = 0; i < 50; ++i)
    CHECK(choose_next(many, Strategy::random, r1, i) == choose_next(many, Strategy::random, r2, i));
}

TEST_CASE("dsei on a given state extends a shared table") {
  Program p = lang::parse_program(gen::gen_bitsum(3));
  SubsumptionTable table;
  VerifyConfig cfg;
  auto out = dsei(p, initial_state(p), table, cfg);
  REQUIRE(out.result.has_value());
  CHECK(out.result->kind == DseiResult::Kind::interpolant);
  CHECK(!table.entries.empty());

  // a second traversal over the same root is subsumed immediately at depth 1
  ExplorationStats stats;
  auto again = dsei(p, initial_state(p), table, cfg, &stats);
  CHECK(again.result->kind == DseiResult::Kind::interpolant);
  CHECK(stats.nodes_subsumed >= 1);
}

TEST_CASE("contradictory bounds make the target unreachable") {
  Program p = lang::parse_program("sym x in [5, 2]; error;");
  auto r = verify(p);
  CHECK(r.verdict.kind == Verdict::Kind::unreachable);
  CHECK(r.verdict.root_interpolant->has_const_false() == false);  // root itself is feasible
  Program q = lang::parse_program("sym x in [5, 2]; if (x >= 5) { error; } halt;");
  CHECK(verify(q).verdict.kind == Verdict::Kind::unreachable);
}
