#include "interpolse/interp.hpp"

#include <algorithm>

namespace interpolse::interp {

using solver::SolverLimits;

namespace {

bool atom_shares_var(const LinAtom& a, const std::set<std::string>& v) {
  for (const auto& [name, c] : a.lhs().terms())
    if (v.count(name)) return true;
  return false;
}

// Connectivity closure of `seed` over all the given atom lists at once.
std::set<std::string> joint_closure(std::set<std::string> seed,
                                    const std::vector<const Formula*>& parts) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Formula* f : parts) {
      for (const LinAtom& a : f->atoms()) {
        if (!atom_shares_var(a, seed)) continue;
        for (const auto& [name, c] : a.lhs().terms())
          if (seed.insert(name).second) grew = true;
      }
    }
  }
  return seed;
}

std::pair<Formula, Formula> split_by(const Formula& f, const std::set<std::string>& closed) {
  Formula in, out;
  for (const LinAtom& a : f.atoms()) {
    if (atom_shares_var(a, closed))
      in.add(a);
    else
      out.add(a);
  }
  return {in, out};
}

}  // namespace

Formula core(const Formula& gamma, const Formula& psi, const SolverLimits& limits,
             std::uint64_t* calls) {
  if (debug_asserts_enabled() && !solver::entails(gamma, psi, limits, calls))
    throw PreconditionViolated("core: gamma does not entail psi");
  std::vector<LinAtom> kept(gamma.atoms().begin(), gamma.atoms().end());
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<LinAtom> rest;
    rest.reserve(kept.size() - 1);
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) rest.push_back(kept[j]);
    if (solver::entails(Formula::from_unique(std::move(rest)), psi, limits, calls))
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return Formula::from_unique(std::move(kept));
}

Interpolant abduction(const Formula& phi, const LinAtom& e, const Formula& psi,
                      const SolverLimits& limits, std::uint64_t* calls) {
  if (debug_asserts_enabled()) {
    Formula pe = phi;
    pe.add(e);
    if (!solver::entails(pe, psi, limits, calls))
      throw PreconditionViolated("abduction: phi && e does not entail psi");
  }

  // Deletion core over e followed by phi's atoms.  Scanning the guard first
  // matches the deletion loop's left-to-right order with the guard as the
  // newest contribution: when the context alone suffices, e drops out and the
  // premise keeps the context's own bounds.
  Formula gamma(e);
  gamma.add_all(phi);
  Formula kept = core(gamma, psi, limits, calls);

  bool e_kept = false;
  Formula phi_bar;
  for (const LinAtom& a : kept.atoms()) {
    if (a == e && !e_kept)
      e_kept = true;
    else
      phi_bar.add(a);
  }

  // The kept context atoms are always a valid answer: phi entails them, and
  // together with e (and the rest of the core) they entail psi.  The closure
  // split below only generalizes further, and its frame argument needs the
  // kept premise to be consistent, so fall back on unsat or unknown.
  {
    Formula check = phi_bar;
    if (e_kept) check.add(e);
    if (!solver::is_sat(check, limits, calls).is_sat()) return {phi_bar};
  }

  std::set<std::string> seed;
  e.collect_vars(seed);
  auto closed = joint_closure(std::move(seed), {&phi_bar, &psi});

  auto [phi_v, phi_rest] = split_by(phi_bar, closed);
  auto [psi_v, psi_rest] = split_by(psi, closed);

  Interpolant result;
  if (psi_v.is_true()) {
    result.formula = psi;
  } else {
    result.formula = phi_v;
    result.formula.add_all(psi_rest);
  }
  if (debug_asserts_enabled()) {
    if (!solver::entails(phi, result.formula, limits, calls))
      throw PreconditionViolated("abduction: phi does not entail the result");
    Formula re = result.formula;
    re.add(e);
    if (!solver::entails(re, psi, limits, calls))
      throw PreconditionViolated("abduction: result && e does not entail psi");
  }
  return result;
}

Interpolant backprop(const PropagationInput& in, const SolverLimits& limits,
                     std::uint64_t* calls) {
  if (!in.stmt) {
    if (!in.post) throw PreconditionViolated("backprop: empty statement with infeasible child");
    return *in.post;
  }
  const lang::Stmt& st = *in.stmt;
  switch (st.kind) {
    case lang::StmtKind::assign: {
      if (!in.post) throw PreconditionViolated("backprop: assignment child cannot be infeasible");
      return {in.post->formula.substituted(st.var, st.rhs)};
    }
    case lang::StmtKind::halt:
    case lang::StmtKind::error: {
      if (!in.post) throw PreconditionViolated("backprop: terminal child cannot be infeasible");
      return *in.post;
    }
    case lang::StmtKind::assume:
      break;
  }
  if (!in.post) return {Formula(st.guard.negated())};
  if (solver::entails(in.context, st.guard, limits, calls)) {
    Formula f = in.post->formula;
    f.add(st.guard);
    return {f};
  }
  if (debug_asserts_enabled()) {
    Formula ce = in.context;
    ce.add(st.guard);
    if (!solver::entails(ce, in.post->formula, limits, calls))
      throw PreconditionViolated("backprop: context && guard does not entail post");
  }
  return abduction(in.context, st.guard, in.post->formula, limits, calls);
}

std::pair<Formula, Formula> separate(const Formula& gamma, const std::set<std::string>& v) {
  auto closed = joint_closure(v, {&gamma});
  return split_by(gamma, closed);
}

BoolExpr path_wp(const std::vector<lang::Stmt>& path, const BoolExpr& post) {
  BoolExpr wp = post;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    switch (it->kind) {
      case lang::StmtKind::assign:
        wp = wp.substituted(it->var, it->rhs);
        break;
      case lang::StmtKind::assume:
        if (wp.is_false())
          wp = BoolExpr::atom(it->guard.negated());
        else
          wp = BoolExpr::implies(BoolExpr::atom(it->guard), wp);
        break;
      case lang::StmtKind::halt:
        break;
      case lang::StmtKind::error:
        wp = BoolExpr::truth(false);
        break;
    }
  }
  return wp;
}

}  // namespace interpolse::interp
