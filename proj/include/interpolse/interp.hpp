#ifndef INTERPOLSE_INTERP_HPP
#define INTERPOLSE_INTERP_HPP

#include <optional>
#include <utility>
#include <vector>

#include "interpolse/lang.hpp"
#include "interpolse/solver.hpp"

namespace interpolse::interp {

/// Conjunctive abstraction of a state that keeps its subtree safe.
struct Interpolant {
  Formula formula;
};

/// Input to one backward-propagation step.  `post == nullopt` is the marker
/// for an infeasible child (the propagation then yields the negated guard).
struct PropagationInput {
  Formula context;                 // evaluated constraint store of the parent
  std::optional<lang::Stmt> stmt;  // nullopt: empty statement, post unchanged
  std::optional<Interpolant> post;
};

/// Conjunctive weakest-precondition approximation:
///   - empty statement: post unchanged
///   - x = e:           post[x/e]
///   - assume(e), infeasible child:  !e
///   - assume(e), context |= e:      post && e
///   - assume(e), otherwise:         abduction(context, e, post)
/// The result R always satisfies context |= R, and for a feasible assume
/// child R && e |= post.
Interpolant backprop(const PropagationInput& in, const solver::SolverLimits& limits = {},
                     std::uint64_t* calls = nullptr);

/// Generalizes phi into R with phi |= R and R && e |= psi, given that
/// phi && e |= psi.  The premise is minimized with a deletion core (guard
/// first, then phi's atoms in path order), then split along the variable
/// connectivity closure of e's variables computed jointly over the kept
/// premise and psi.
Interpolant abduction(const Formula& phi, const LinAtom& e, const Formula& psi,
                      const solver::SolverLimits& limits = {}, std::uint64_t* calls = nullptr);

/// Deletion-based minimization in gamma's atom order: drop an atom whenever
/// the remainder still entails psi.  The result entails psi and is 1-minimal.
Formula core(const Formula& gamma, const Formula& psi,
             const solver::SolverLimits& limits = {}, std::uint64_t* calls = nullptr);

/// Partition gamma by the variable-connectivity closure of v: atoms sharing a
/// variable with the growing set (to a fixpoint) go left, the rest go right.
/// The two sides are variable-disjoint and permute gamma's atoms.
std::pair<Formula, Formula> separate(const Formula& gamma, const std::set<std::string>& v);

/// Disjunctive path-based weakest precondition, folded right to left.  Test
/// oracle only; the engine never calls this.
BoolExpr path_wp(const std::vector<lang::Stmt>& path, const BoolExpr& post);

}  // namespace interpolse::interp

#endif
