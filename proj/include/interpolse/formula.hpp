#ifndef INTERPOLSE_FORMULA_HPP
#define INTERPOLSE_FORMULA_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "interpolse/expr.hpp"

namespace interpolse {

/// Source-level comparison operators.
enum class Cmp { eq, ne, lt, le, gt, ge };

/// Canonical relations after normalization.  Strict integer inequalities are
/// absorbed into `le` (t < k  ==>  t <= k-1), and ge/gt flip sign.
enum class Rel { le, eq, ne };

/// A linear atom in canonical form:  sum(c_i * v_i)  rel  k.
///
/// Canonicalization is idempotent:
///  - the left side has no constant part (it is folded into k),
///  - terms are sorted by variable name, zero coefficients removed,
///  - for eq/ne the leading coefficient is positive,
///  - coefficients are gcd-reduced; for `le` the bound is floor-divided,
///    which is exact over the integers,
///  - atoms with no variables collapse to the canonical true (0 <= 0) or
///    false (0 <= -1) atom.
class LinAtom {
 public:
  LinAtom(const LinExpr& lhs, Cmp cmp, const LinExpr& rhs);
  LinAtom(LinExpr lhs, Rel rel, Int k);  // canonicalizes

  static LinAtom truth(bool b);

  const LinExpr& lhs() const { return lhs_; }
  Rel rel() const { return rel_; }
  const Int& bound() const { return k_; }

  bool is_const() const { return lhs_.is_constant(); }
  bool is_const_true() const { return is_const() && const_value(); }
  bool is_const_false() const { return is_const() && !const_value(); }

  /// Exact integer negation: !(t<=k) == t>=k+1, !(t==k) == t!=k, and dually.
  LinAtom negated() const;

  bool eval(const Model& m) const;
  LinAtom substituted(const std::string& var, const LinExpr& e) const;
  void collect_vars(std::set<std::string>& out) const { lhs_.collect_vars(out); }

  bool operator==(const LinAtom& o) const {
    return rel_ == o.rel_ && k_ == o.k_ && lhs_ == o.lhs_;
  }
  bool operator<(const LinAtom& o) const;

  std::string str() const;

 private:
  void canonicalize();
  bool const_value() const;

  LinExpr lhs_;
  Rel rel_ = Rel::le;
  Int k_ = 0;
};

/// A conjunction of linear atoms.  Atom order is insertion (path) order;
/// constant-true atoms are dropped and duplicates collapse onto their first
/// position.  The empty formula is `true`.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::vector<LinAtom> atoms);
  explicit Formula(const LinAtom& atom);

  void add(const LinAtom& a);
  void add_all(const Formula& o);

  /// Caller guarantees the atoms are canonical, duplicate-free, and contain
  /// no constant-true atom (e.g. a filtered subset of an existing formula).
  static Formula from_unique(std::vector<LinAtom> atoms);

  static Formula conj(const Formula& a, const Formula& b);

  const std::vector<LinAtom>& atoms() const { return atoms_; }
  bool is_true() const { return atoms_.empty(); }
  bool has_const_false() const;
  std::size_t size() const { return atoms_.size(); }

  bool eval(const Model& m) const;
  Formula substituted(const std::string& var, const LinExpr& e) const;
  std::set<std::string> free_vars() const;

  bool operator==(const Formula& o) const { return atoms_ == o.atoms_; }

  std::string str() const;

 private:
  std::vector<LinAtom> atoms_;
};

/// Boolean combinations of atoms.  Used only by the path-based weakest
/// precondition oracle and the brute-force evaluator, never by the engine.
class BoolExpr {
 public:
  enum class Kind { tru, fls, atom, negation, conj, disj, implies };

  static BoolExpr truth(bool b) { return BoolExpr(b ? Kind::tru : Kind::fls); }
  static BoolExpr atom(LinAtom a);
  static BoolExpr negation(BoolExpr e);
  static BoolExpr conj(BoolExpr a, BoolExpr b);
  static BoolExpr disj(BoolExpr a, BoolExpr b);
  static BoolExpr implies(BoolExpr a, BoolExpr b);
  static BoolExpr from_formula(const Formula& f);

  Kind kind() const { return kind_; }
  const LinAtom& atom_value() const { return *atom_; }
  const std::vector<BoolExpr>& children() const { return kids_; }
  bool is_false() const { return kind_ == Kind::fls; }

  bool eval(const Model& m) const;
  BoolExpr substituted(const std::string& var, const LinExpr& e) const;
  std::set<std::string> free_vars() const;

  bool operator==(const BoolExpr& o) const;

  std::string str() const;

 private:
  explicit BoolExpr(Kind k) : kind_(k) {}

  Kind kind_;
  std::optional<LinAtom> atom_;
  std::vector<BoolExpr> kids_;
};

/// Fixture syntax: atoms per the program grammar ("x + 2*y <= 3"), joined
/// with "&&".  Printing is canonical and deterministic.
Formula parse_formula(const std::string& text);
LinAtom parse_atom(const std::string& text);

}  // namespace interpolse

#endif
