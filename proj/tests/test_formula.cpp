#include <doctest.h>

#include "testutil.hpp"

using namespace interpolse;
using testutil::atom;
using testutil::fml;

TEST_CASE("strict inequalities are absorbed") {
  CHECK(atom("x < 7") == atom("x <= 6"));
  CHECK(atom("x > 0") == atom("-x <= -1"));
  CHECK(atom("x >= 3") == atom("-x <= -3"));
}

TEST_CASE("equality sign normalization") {
  CHECK(atom("-x + y == 1") == atom("x - y == -1"));
  CHECK(atom("-x != 2") == atom("x != -2"));
}

TEST_CASE("gcd reduction tightens integer bounds") {
  CHECK(atom("2*x <= 3") == atom("x <= 1"));
  CHECK(atom("2*x == 3").is_const_false());
  CHECK(atom("2*x != 3").is_const_true());
  CHECK(atom("2*x == 4") == atom("x == 2"));
}

TEST_CASE("constant atoms collapse") {
  CHECK(atom("1 <= 2").is_const_true());
  CHECK(atom("3 <= 2").is_const_false());
  CHECK(atom("0*x + y == 1") == atom("y == 1"));
  auto vars = solver::free_vars(fml("0*x + y == 1"));
  CHECK(vars == std::set<std::string>{"y"});
}

TEST_CASE("negation is exact over the integers") {
  CHECK(atom("x <= 3").negated() == atom("x >= 4"));
  CHECK(atom("x == 3").negated() == atom("x != 3"));
  CHECK(atom("x != 3").negated() == atom("x == 3"));
  testutil::RandomAtoms r(11);
  for (int i = 0; i < 200; ++i) {
    LinAtom a = r.atom();
    CHECK(a.negated().negated() == a);
  }
}

TEST_CASE("canonicalization is idempotent") {
  testutil::RandomAtoms r(7);
  for (int i = 0; i < 300; ++i) {
    LinAtom a = r.atom();
    LinAtom again(a.lhs(), a.rel(), a.bound());
    CHECK(a == again);
  }
}

TEST_CASE("substitution examples") {
  // (x < 7)[x / x+5]  ->  x < 2
  Formula f = fml("x < 7");
  LinExpr e = LinExpr::variable("x") + LinExpr::constant(5);
  CHECK(solver::substitute(f, "x", e) == fml("x <= 1"));

  // variable absent: unchanged
  CHECK(solver::substitute(fml("y == 3"), "x", e) == fml("y == 3"));

  // (2x + y <= 4)[y / x-1]  ->  3x <= 5
  Formula g = fml("2*x + y <= 4");
  LinExpr xm1 = LinExpr::variable("x") + LinExpr::constant(-1);
  Formula got = solver::substitute(g, "y", xm1);
  CHECK(got == fml("3*x <= 5"));
  // cross-check by evaluation over x in [-10, 10]
  for (long long x = -10; x <= 10; ++x) {
    Model m{{"x", Int(x)}, {"y", Int(x - 1)}};
    Model mg{{"x", Int(x)}};
    CHECK(solver::eval_formula(got, mg) == solver::eval_formula(g, m));
  }
}

TEST_CASE("substitution semantics on random formulas") {
  testutil::RandomAtoms r(23, {"x", "y"});
  for (int i = 0; i < 100; ++i) {
    Formula f = r.formula(3, 2);
    LinExpr e = LinExpr::variable("y", r.pick(-2, 2)) + LinExpr::constant(r.pick(-3, 3));
    Formula sub = solver::substitute(f, "x", e);
    for (long long x = -4; x <= 4; ++x)
      for (long long y = -4; y <= 4; ++y) {
        Model m{{"x", Int(x)}, {"y", Int(y)}};
        Model replaced = m;
        replaced["x"] = e.eval(m);
        CHECK(solver::eval_formula(sub, m) == solver::eval_formula(f, replaced));
      }
  }
}

TEST_CASE("formula dedupes and drops trivial atoms") {
  Formula f = fml("x <= 1 && 1 <= 1 && x <= 1 && x < 2");
  CHECK(f.size() == 1);
  CHECK(f == fml("x <= 1"));
  CHECK(Formula().is_true());
}

TEST_CASE("printing is canonical and parseable") {
  Formula f = fml("y + 0*x <= 3 && 2*z - 4 == 0");
  std::string s = f.str();
  CHECK(parse_formula(s) == f);
  CHECK(f.str() == parse_formula(f.str()).str());
  CHECK(Formula().str() == "true");
}

TEST_CASE("bool expr evaluation") {
  BoolExpr imp = BoolExpr::implies(BoolExpr::atom(atom("x > 0")), BoolExpr::atom(atom("y > 5")));
  CHECK(solver::eval_formula(imp, Model{{"x", 0}, {"y", 0}}));  // vacuous
  CHECK(!solver::eval_formula(imp, Model{{"x", 1}, {"y", 0}}));
  CHECK(solver::eval_formula(imp, Model{{"x", 1}, {"y", 6}}));
  BoolExpr dis = BoolExpr::disj(BoolExpr::atom(atom("x <= -1")), BoolExpr::atom(atom("x >= 1")));
  CHECK(!solver::eval_formula(dis, Model{{"x", 0}}));
  CHECK(solver::eval_formula(BoolExpr::negation(dis), Model{{"x", 0}}));
}

TEST_CASE("evaluation rejects unbound variables") {
  CHECK_THROWS_AS(solver::eval_formula(fml("x + y <= 0"), Model{{"x", 1}}), UnboundVariable);
}
