#include "interpolse/solver.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <optional>
#include <set>

namespace interpolse::solver {

namespace {

using Rational = boost::multiprecision::cpp_rational;

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Sparse row over an indexed variable vector: sum c[i]*x[i] (rel) k, entries
// sorted by variable index with nonzero coefficients.
struct Row {
  std::vector<std::pair<std::uint32_t, Int>> c;
  Int k;

  bool constant() const { return c.empty(); }
};

Int coeff_of(const Row& r, std::uint32_t v) {
  for (const auto& [i, x] : r.c)
    if (i == v) return x;
  return 0;
}

// r += d * e, dropping variable `skip` from the result
void add_scaled(Row& r, const Row& e, const Int& d, std::uint32_t skip) {
  std::vector<std::pair<std::uint32_t, Int>> merged;
  merged.reserve(r.c.size() + e.c.size());
  std::size_t i = 0, j = 0;
  while (i < r.c.size() || j < e.c.size()) {
    bool take_r = j >= e.c.size() || (i < r.c.size() && r.c[i].first < e.c[j].first);
    bool take_e = i >= r.c.size() || (j < e.c.size() && e.c[j].first < r.c[i].first);
    std::uint32_t var;
    Int val;
    if (take_r) {
      var = r.c[i].first;
      val = r.c[i].second;
      ++i;
    } else if (take_e) {
      var = e.c[j].first;
      val = d * e.c[j].second;
      ++j;
    } else {
      var = r.c[i].first;
      val = r.c[i].second + d * e.c[j].second;
      ++i;
      ++j;
    }
    if (var != skip && val != 0) merged.emplace_back(var, std::move(val));
  }
  r.c = std::move(merged);
}

constexpr std::uint32_t kNoVar = UINT32_MAX;

// gcd reduction; for <= rows the floor-divided bound is exact over Z and
// often decides integrality without any branching.
void reduce_le(Row& r) {
  Int g = 0;
  for (const auto& [i, x] : r.c) g = gcd(g, abs_int(x));
  if (g > 1) {
    for (auto& [i, x] : r.c) x /= g;
    r.k = floor_div(r.k, g);
  }
}

enum class ReduceEq { ok, contradiction };

ReduceEq reduce_eq(Row& r) {
  Int g = 0;
  for (const auto& [i, x] : r.c) g = gcd(g, abs_int(x));
  if (g > 1) {
    if (r.k % g != 0) return ReduceEq::contradiction;
    for (auto& [i, x] : r.c) x /= g;
    r.k /= g;
  }
  return ReduceEq::ok;
}

bool row_less(const Row& a, const Row& b) {
  if (a.k != b.k) return a.k < b.k;
  return a.c < b.c;
}

struct Step {
  std::uint32_t var;
  std::vector<Row> lowers;  // coeff at var < 0
  std::vector<Row> uppers;  // coeff at var > 0
};

class SatSolver {
 public:
  SatSolver(const Formula& f, const SolverLimits& limits) : formula_(f), limits_(limits) {
    auto vs = f.free_vars();
    names_.assign(vs.begin(), vs.end());
    for (std::uint32_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
  }

  SatResult solve(int depth) {
    if (!build_rows()) return {SatResult::Kind::unsat, {}};
    if (!eliminate_equalities()) return {SatResult::Kind::unsat, {}};
    for (const Row& r : eqs_) {  // leftover non-unit equalities
      les_.push_back(r);
      Row neg{r.c, -r.k};
      for (auto& [i, x] : neg.c) x = -x;
      les_.push_back(std::move(neg));
    }
    for (Row& r : les_) reduce_le(r);

    auto fm = fourier_motzkin();
    if (fm == Outcome::unsat) return {SatResult::Kind::unsat, {}};
    if (fm == Outcome::unknown) return {SatResult::Kind::unknown, {}};

    std::vector<std::optional<Int>> val(names_.size());
    auto back = back_substitute(val, depth);
    if (back) return *back;  // branch-and-bound took over

    for (auto& v : val)
      if (!v) v = 0;
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
      Int x = it->second.k;
      for (const auto& [j, cj] : it->second.c) x += cj * *val[j];
      val[it->first] = x;
    }

    Model m;
    for (std::uint32_t i = 0; i < names_.size(); ++i) m[names_[i]] = *val[i];

    for (const LinAtom& a : formula_.atoms()) {
      if (a.eval(m)) continue;
      if (a.rel() == Rel::ne) return split_on(a, depth);
      throw InternalError("solver produced a model violating '" + a.str() + "'");
    }
    return {SatResult::Kind::sat, std::move(m)};
  }

 private:
  enum class Outcome { ok, unsat, unknown };

  bool build_rows() {
    for (const LinAtom& a : formula_.atoms()) {
      if (a.is_const_false()) return false;
      if (a.is_const_true()) continue;
      Row r;
      r.c.reserve(a.lhs().terms().size());
      for (const auto& [v, c] : a.lhs().terms()) r.c.emplace_back(index_[v], c);
      r.k = a.bound();
      switch (a.rel()) {
        case Rel::le: les_.push_back(std::move(r)); break;
        case Rel::eq: eqs_.push_back(std::move(r)); break;
        case Rel::ne: break;  // checked against the final model
      }
    }
    return true;
  }

  // Gaussian elimination restricted to +-1 pivots, which is exact over Z.
  bool eliminate_equalities() {
    while (true) {
      std::size_t row = eqs_.size();
      std::uint32_t var = kNoVar;
      for (std::size_t i = 0; i < eqs_.size() && row == eqs_.size(); ++i)
        for (const auto& [j, x] : eqs_[i].c)
          if (x == 1 || x == -1) {
            row = i;
            var = j;
            break;
          }
      if (row == eqs_.size()) return true;

      Row eq = std::move(eqs_[row]);
      eqs_.erase(eqs_.begin() + static_cast<std::ptrdiff_t>(row));
      Int a = coeff_of(eq, var);  // +-1, and 1/a == a
      Row expr;                   // var = expr.c * x + expr.k
      for (const auto& [j, cj] : eq.c)
        if (j != var) expr.c.emplace_back(j, -a * cj);
      expr.k = a * eq.k;

      auto subst = [&](Row& r) {
        Int d = coeff_of(r, var);
        if (d == 0) return;
        add_scaled(r, expr, d, var);
        r.k -= d * expr.k;
      };
      for (Row& r : les_) subst(r);
      for (Row& r : eqs_) subst(r);
      bindings_.emplace_back(var, std::move(expr));

      for (std::size_t i = 0; i < eqs_.size();) {
        if (reduce_eq(eqs_[i]) == ReduceEq::contradiction) return false;
        if (eqs_[i].constant()) {
          if (eqs_[i].k != 0) return false;
          eqs_.erase(eqs_.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          ++i;
        }
      }
      for (std::size_t i = 0; i < les_.size();) {
        reduce_le(les_[i]);
        if (les_[i].constant()) {
          if (les_[i].k < 0) return false;
          les_.erase(les_.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          ++i;
        }
      }
    }
  }

  Outcome fourier_motzkin() {
    for (std::size_t i = 0; i < les_.size();) {
      if (les_[i].constant()) {
        if (les_[i].k < 0) return Outcome::unsat;
        les_.erase(les_.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }
    std::set<std::uint32_t> remaining;
    for (const Row& r : les_)
      for (const auto& [j, x] : r.c) remaining.insert(j);

    while (!remaining.empty()) {
      std::uint32_t best = kNoVar;
      std::size_t best_cost = SIZE_MAX;
      for (std::uint32_t v : remaining) {
        std::size_t lo = 0, hi = 0;
        for (const Row& r : les_) {
          Int c = coeff_of(r, v);
          if (c < 0) ++lo;
          if (c > 0) ++hi;
        }
        std::size_t cost = lo * hi;
        if (cost < best_cost) {
          best_cost = cost;
          best = v;
        }
      }
      std::uint32_t v = best;
      remaining.erase(v);

      Step step{v, {}, {}};
      std::vector<Row> rest;
      for (Row& r : les_) {
        Int c = coeff_of(r, v);
        if (c < 0)
          step.lowers.push_back(std::move(r));
        else if (c > 0)
          step.uppers.push_back(std::move(r));
        else
          rest.push_back(std::move(r));
      }
      les_ = std::move(rest);

      std::vector<Row> fresh;
      std::set<Row, bool (*)(const Row&, const Row&)> seen(row_less);
      for (const Row& l : step.lowers) {
        for (const Row& u : step.uppers) {
          Int a = coeff_of(u, v);
          Int b = -coeff_of(l, v);
          Row n;
          n.c.reserve(l.c.size() + u.c.size());
          for (const auto& [j, x] : l.c)
            if (j != v) n.c.emplace_back(j, a * x);
          n.k = a * l.k;
          add_scaled(n, u, b, v);
          n.k += b * u.k;
          reduce_le(n);
          if (n.constant()) {
            if (n.k < 0) return Outcome::unsat;
            continue;
          }
          if (seen.insert(n).second) fresh.push_back(std::move(n));
        }
      }
      for (Row& r : fresh) les_.push_back(std::move(r));
      if (les_.size() > limits_.max_rows) return Outcome::unknown;
      steps_.push_back(std::move(step));
    }
    return Outcome::ok;
  }

  // Assign eliminated variables in reverse order; every row at a step only
  // mentions its own variable plus later-assigned ones.  Returns a result
  // when an integer-free interval forces branch-and-bound.
  std::optional<SatResult> back_substitute(std::vector<std::optional<Int>>& val, int depth) {
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
      std::optional<Rational> lb, ub;
      auto bound_from = [&](const Row& r) -> Rational {
        Int rest = 0;
        Int den = 0;
        for (const auto& [j, cj] : r.c) {
          if (j == it->var)
            den = cj;
          else
            rest += cj * *val[j];
        }
        // boost::rational<cpp_int> rejects negative denominators outright
        // (numeric_limits<cpp_int>::max() is zero), so normalize the sign here
        Int num = r.k - rest;
        if (den < 0) {
          num = -num;
          den = -den;
        }
        return Rational(num, den);
      };
      for (const Row& r : it->lowers) {
        Rational b = bound_from(r);
        if (!lb || b > *lb) lb = b;
      }
      for (const Row& r : it->uppers) {
        Rational b = bound_from(r);
        if (!ub || b < *ub) ub = b;
      }
      std::optional<Int> pick;
      if (lb && ub) {
        Int lo = ceil_div(numerator(*lb), denominator(*lb));
        Int hi = floor_div(numerator(*ub), denominator(*ub));
        if (lo > hi) return branch(names_[it->var], *lb, depth);
        if (lo <= 0 && 0 <= hi)
          pick = 0;
        else
          pick = lo > 0 ? lo : hi;
      } else if (lb) {
        Int lo = ceil_div(numerator(*lb), denominator(*lb));
        pick = lo > 0 ? lo : Int(0);
      } else if (ub) {
        Int hi = floor_div(numerator(*ub), denominator(*ub));
        pick = hi < 0 ? hi : Int(0);
      } else {
        pick = 0;
      }
      val[it->var] = *pick;
    }
    return std::nullopt;
  }

  SatResult branch(const std::string& var, const Rational& at, int depth) {
    if (depth <= 0) return {SatResult::Kind::unknown, {}};
    Int fl = floor_div(numerator(at), denominator(at));
    Formula low = formula_;
    low.add(LinAtom(LinExpr::variable(var), Rel::le, fl));
    Formula high = formula_;
    high.add(LinAtom(LinExpr::variable(var).negated(), Rel::le, Int(-fl - 1)));
    SatResult a = SatSolver(low, limits_).solve(depth - 1);
    if (a.is_sat()) return a;
    SatResult b = SatSolver(high, limits_).solve(depth - 1);
    if (b.is_sat()) return b;
    if (a.is_unsat() && b.is_unsat()) return {SatResult::Kind::unsat, {}};
    return {SatResult::Kind::unknown, {}};
  }

  SatResult split_on(const LinAtom& ne, int depth) {
    if (depth <= 0) return {SatResult::Kind::unknown, {}};
    Formula low = formula_;
    low.add(LinAtom(ne.lhs(), Rel::le, Int(ne.bound() - 1)));
    Formula high = formula_;
    high.add(LinAtom(ne.lhs().negated(), Rel::le, Int(-ne.bound() - 1)));
    SatResult a = SatSolver(low, limits_).solve(depth - 1);
    if (a.is_sat()) return a;
    SatResult b = SatSolver(high, limits_).solve(depth - 1);
    if (b.is_sat()) return b;
    if (a.is_unsat() && b.is_unsat()) return {SatResult::Kind::unsat, {}};
    return {SatResult::Kind::unknown, {}};
  }

  const Formula& formula_;
  const SolverLimits& limits_;
  std::vector<std::string> names_;
  std::map<std::string, std::uint32_t> index_;
  std::vector<Row> les_, eqs_;
  std::vector<std::pair<std::uint32_t, Row>> bindings_;
  std::vector<Step> steps_;
};

}  // namespace

SatResult is_sat(const Formula& f, const SolverLimits& limits, std::uint64_t* calls) {
  if (calls) ++*calls;
  SatResult r = SatSolver(f, limits).solve(limits.branch_depth);
  if (r.is_sat() && !f.eval(r.model))
    throw InternalError("unverified model for: " + f.str());
  return r;
}

bool entails(const Formula& f, const LinAtom& a, const SolverLimits& limits,
             std::uint64_t* calls) {
  if (a.is_const_true()) return true;
  if (a.is_const_false()) return is_sat(f, limits, calls).is_unsat();
  // syntactic membership is a frequent fast path (guards already assumed)
  for (const LinAtom& b : f.atoms())
    if (b == a) return true;
  auto refutes = [&](const LinAtom& counter) {
    Formula q = f;
    q.add(counter);
    return is_sat(q, limits, calls).is_unsat();
  };
  switch (a.rel()) {
    case Rel::le:
      return refutes(a.negated());
    case Rel::eq:
      return refutes(LinAtom(a.lhs(), Rel::le, Int(a.bound() - 1))) &&
             refutes(LinAtom(a.lhs().negated(), Rel::le, Int(-a.bound() - 1)));
    case Rel::ne:
      return refutes(LinAtom(a.lhs(), Rel::eq, a.bound()));
  }
  return false;
}

bool entails(const Formula& f, const Formula& g, const SolverLimits& limits,
             std::uint64_t* calls) {
  for (const LinAtom& a : g.atoms())
    if (!entails(f, a, limits, calls)) return false;
  return true;
}

namespace {

template <typename F>
std::vector<Model> enumerate_impl(const F& f, const Bounds& bounds, std::size_t cap) {
  for (const std::string& v : free_vars(f))
    if (!bounds.count(v)) throw UnboundVariable(v);

  std::vector<std::pair<std::string, std::pair<Int, Int>>> dims(bounds.begin(), bounds.end());
  Int total = 1;
  for (const auto& [v, b] : dims) {
    if (b.second < b.first) return {};
    total *= b.second - b.first + 1;
    if (total > cap)
      throw DomainTooLarge("assignment space exceeds cap of " + std::to_string(cap));
  }

  std::vector<Model> out;
  Model m;
  for (const auto& [v, b] : dims) m[v] = b.first;
  while (true) {
    if (f.eval(m)) out.push_back(m);
    if (dims.empty()) return out;
    std::size_t i = dims.size();
    while (i > 0) {
      --i;
      Int& cur = m[dims[i].first];
      if (cur < dims[i].second.second) {
        ++cur;
        break;
      }
      cur = dims[i].second.first;
      if (i == 0) return out;
    }
  }
}

}  // namespace

std::vector<Model> enumerate_models(const Formula& f, const Bounds& bounds, std::size_t cap) {
  return enumerate_impl(f, bounds, cap);
}

std::vector<Model> enumerate_models(const BoolExpr& f, const Bounds& bounds, std::size_t cap) {
  return enumerate_impl(f, bounds, cap);
}

bool eval_formula(const Formula& f, const Model& m) { return f.eval(m); }
bool eval_formula(const BoolExpr& f, const Model& m) { return f.eval(m); }

std::set<std::string> free_vars(const Formula& f) { return f.free_vars(); }
std::set<std::string> free_vars(const BoolExpr& f) { return f.free_vars(); }
std::set<std::string> free_vars(const LinExpr& e) {
  std::set<std::string> s;
  e.collect_vars(s);
  return s;
}

Formula substitute(const Formula& f, const std::string& var, const LinExpr& e) {
  return f.substituted(var, e);
}

BoolExpr substitute(const BoolExpr& f, const std::string& var, const LinExpr& e) {
  return f.substituted(var, e);
}

}  // namespace interpolse::solver
