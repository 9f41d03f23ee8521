#include <doctest.h>

#include "interpolse/generators.hpp"
#include "interpolse/lang.hpp"
#include "testutil.hpp"

using namespace interpolse;
using namespace interpolse::lang;
using testutil::fml;

namespace {

const char* kMinimalBranch = "sym x; if (x > 0) { error; } halt;";

int count_branch_points(const TransitionSystem& ts) {
  int n = 0;
  for (const auto& outs : ts.out)
    if (outs.size() == 2) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse minimal branch program") {
  Program p = parse_program(kMinimalBranch);
  CHECK(p.symbolic_vars.size() == 1);
  CHECK(p.targets.size() == 1);
  CHECK(count_branch_points(p.system) == 1);
  CHECK(p.system.point(p.targets[0]).kind == PointKind::error);
}

TEST_CASE("non-linear expressions are rejected") {
  CHECK_THROWS_AS(parse_program("sym x; var y = 0; y = x * x; halt;"), NonLinearExpression);
}

TEST_CASE("parser error cases") {
  CHECK_THROWS_AS(parse_program("var y = 0; y = z + 1;"), UndeclaredVariable);
  CHECK_THROWS_AS(parse_program("sym x; x = 3;"), SyntaxError);          // symbolic target
  CHECK_THROWS_AS(parse_program("sym x; sym x;"), SyntaxError);          // duplicate
  CHECK_THROWS_AS(parse_program("var y = 0; if (y) { halt; }"), SyntaxError);
  CHECK_THROWS_AS(parse_program("var y = 0; halt; y = 1;"), SyntaxError);  // unreachable
  CHECK_THROWS_AS(parse_program("var y = ;"), SyntaxError);
}

TEST_CASE("named constants resolve at parse time") {
  std::map<std::string, Int> defines{{"BOUND", 90}};
  Program p = parse_program("var d = 0; assert(d >= BOUND); halt;", defines);
  CHECK(p.targets.size() == 1);
  CHECK_THROWS_AS(parse_program("var d = 0; assert(d >= BOUND); halt;"), UndeclaredVariable);
}

TEST_CASE("if/else lowers to two complementary transitions") {
  Program p = parse_program("sym x; var y = 0; if (x > 0) { y = 1; } else { y = 2; } halt;");
  const auto& ts = p.system;
  bool found = false;
  for (const auto& outs : ts.out) {
    if (outs.size() != 2) continue;
    found = true;
    const Stmt& a = ts.transitions[outs[0]].stmt;
    const Stmt& b = ts.transitions[outs[1]].stmt;
    CHECK(a.kind == StmtKind::assume);
    CHECK(a.guard == testutil::atom("x > 0"));
    CHECK(b.guard == a.guard.negated());
  }
  CHECK(found);
}

TEST_CASE("straight-line assignments become a chain") {
  Program p = parse_program("var a = 0; a = 1; a = 2; a = 3; halt;");
  int assigns = 0;
  for (const auto& t : p.system.transitions)
    if (t.stmt.kind == StmtKind::assign) ++assigns;
  CHECK(assigns == 3);
  // a chain: every point has at most one successor
  for (const auto& outs : p.system.out) CHECK(outs.size() <= 1);
}

TEST_CASE("while lowers to a back-edge onto a stable loop head") {
  Program p = parse_program("sym n in [0, 3]; var i = 0; while (i < n) { i = i + 1; } halt;");
  const auto& ts = p.system;
  PointId head = 0;
  bool found = false;
  for (const auto& pt : ts.points)
    if (pt.loop_head) {
      head = pt.id;
      found = true;
    }
  REQUIRE(found);
  bool back_edge = false;
  for (const auto& t : ts.transitions)
    if (t.to == head && t.from > head) back_edge = true;
  CHECK(back_edge);
}

TEST_CASE("branch totality: the two guards are complements") {
  auto m = gen::example_matrix();
  Program p = parse_program(gen::gen_shortest_path(m, 90));
  const auto& ts = p.system;
  testutil::RandomAtoms r(5);
  for (const auto& outs : ts.out) {
    if (outs.size() != 2) continue;
    const LinAtom& a = ts.transitions[outs[0]].stmt.guard;
    const LinAtom& b = ts.transitions[outs[1]].stmt.guard;
    Formula both(a);
    both.add(b);
    CHECK(solver::is_sat(both).is_unsat());
    // disjunction is valid: checked on sampled assignments
    auto vars = both.free_vars();
    for (int i = 0; i < 50; ++i) {
      Model mm;
      for (const auto& v : vars) mm[v] = r.pick(-100, 100);
      CHECK((a.eval(mm) || b.eval(mm)));
    }
  }
}

TEST_CASE("pretty-print round-trips to an identical transition system") {
  std::vector<std::string> sources = {
      kMinimalBranch,
      "sym x in [0, 1];\nvar y = 0;\nif (x > 0) { y = y + 2; } else { }\nassert(y <= 2);\nhalt;",
      "sym n in [0, 3]; var i = 0; var s = 0; while (i < n) { i = i + 1; s = s + i; } halt;",
      gen::gen_bitsum(3),
      gen::gen_shortest_path(gen::example_matrix(), 90),
  };
  for (const auto& src : sources) {
    Program p1 = parse_program(src);
    Program p2 = parse_program(pretty_print(p1));
    CHECK(p1.system.structurally_equal(p2.system));
    CHECK(p1.targets == p2.targets);
  }
}

TEST_CASE("execute_concrete on the minimal branch") {
  Program p = parse_program(kMinimalBranch);
  auto hit = execute_concrete(p, Model{{"x", 1}});
  CHECK(hit.kind == ConcreteOutcome::Kind::hit_error);
  auto miss = execute_concrete(p, Model{{"x", 0}});
  CHECK(miss.kind == ConcreteOutcome::Kind::hit_halt);
}

TEST_CASE("execute_concrete walks the shortest-path program") {
  Program p = parse_program(gen::gen_shortest_path(gen::example_matrix(), 90));
  // choices: node 1 -> 2, node 2 -> 3 (node 3 has a single successor)
  auto out = execute_concrete(p, Model{{"c1", 2}, {"c2", 3}});
  CHECK(out.kind == ConcreteOutcome::Kind::hit_halt);
  CHECK(out.store.at("d") == 120);
  CHECK(out.store.at("node") == 4);
}

TEST_CASE("execute_concrete requires a complete input") {
  Program p = parse_program(kMinimalBranch);
  CHECK_THROWS_AS(execute_concrete(p, Model{}), UnboundVariable);
}

TEST_CASE("execute_concrete reports budget exhaustion") {
  Program p = parse_program("var i = 0; while (0 < 1) { i = i + 1; } halt;");
  auto out = execute_concrete(p, Model{}, 100);
  CHECK(out.kind == ConcreteOutcome::Kind::budget_exhausted);
}

TEST_CASE("standalone assume blocks violating runs") {
  Program p = parse_program("sym x in [0, 5]; assume(x >= 3); halt;");
  CHECK(execute_concrete(p, Model{{"x", 4}}).kind == ConcreteOutcome::Kind::hit_halt);
  CHECK(execute_concrete(p, Model{{"x", 1}}).kind == ConcreteOutcome::Kind::assume_blocked);
}

TEST_CASE("to_transition_system exposes the lowering") {
  Program p = parse_program(kMinimalBranch);
  CHECK(&to_transition_system(p) == &p.system);
}
