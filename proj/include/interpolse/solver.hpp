#ifndef INTERPOLSE_SOLVER_HPP
#define INTERPOLSE_SOLVER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "interpolse/formula.hpp"

namespace interpolse::solver {

struct SolverLimits {
  // Branch-and-bound / disequality-split depth.  Exhausting it yields an
  // inconclusive result, never Unsat, so UNREACHABLE verdicts stay sound.
  int branch_depth = 64;
  std::size_t max_rows = 100000;
};

struct SatResult {
  enum class Kind { sat, unsat, unknown };
  Kind kind;
  Model model;  // verified integer model when kind == sat

  bool is_sat() const { return kind == Kind::sat; }
  bool is_unsat() const { return kind == Kind::unsat; }
  bool is_unknown() const { return kind == Kind::unknown; }
};

/// Exact satisfiability over conjunctions of linear integer atoms.
/// Fourier-Motzkin elimination over the rationals with gcd tightening,
/// integer models by back-substitution, branch-and-bound on fractional
/// variables, and model-guided splitting for disequalities.
/// `calls`, when given, is incremented once per top-level invocation.
SatResult is_sat(const Formula& f, const SolverLimits& limits = {}, std::uint64_t* calls = nullptr);

/// true iff every model of f satisfies g.  Checked per atom of g through
/// unsatisfiability of f with the atom's integer negation; an equality needs
/// both directions.  Inconclusive solver results count as "not entailed".
bool entails(const Formula& f, const Formula& g, const SolverLimits& limits = {},
             std::uint64_t* calls = nullptr);

bool entails(const Formula& f, const LinAtom& a, const SolverLimits& limits = {},
             std::uint64_t* calls = nullptr);

using Bounds = std::map<std::string, std::pair<Int, Int>>;

/// Brute-force oracle: exactly the assignments within `bounds` satisfying f,
/// in lexicographic order of (variable name, value).
std::vector<Model> enumerate_models(const Formula& f, const Bounds& bounds,
                                    std::size_t cap = 1000000);
std::vector<Model> enumerate_models(const BoolExpr& f, const Bounds& bounds,
                                    std::size_t cap = 1000000);

bool eval_formula(const Formula& f, const Model& m);
bool eval_formula(const BoolExpr& f, const Model& m);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> free_vars(const BoolExpr& f);
std::set<std::string> free_vars(const LinExpr& e);

Formula substitute(const Formula& f, const std::string& var, const LinExpr& e);
BoolExpr substitute(const BoolExpr& f, const std::string& var, const LinExpr& e);

}  // namespace interpolse::solver

#endif
