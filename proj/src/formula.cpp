#include "interpolse/formula.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace interpolse {

namespace {
bool env_debug_asserts() {
  const char* v = std::getenv("INTERPOLSE_DEBUG_ASSERT");
  return v && std::string(v) == "1";
}
bool g_debug_asserts = env_debug_asserts();
}  // namespace

bool debug_asserts_enabled() { return g_debug_asserts; }
void set_debug_asserts(bool on) { g_debug_asserts = on; }

std::string LinExpr::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : terms_) {
    if (first) {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << c << "*";
      os << v;
      first = false;
      continue;
    }
    Int a = c < 0 ? Int(-c) : c;
    os << (c < 0 ? " - " : " + ");
    if (a != 1) os << a << "*";
    os << v;
  }
  if (first) {
    os << constant_;
  } else if (constant_ != 0) {
    Int a = constant_ < 0 ? Int(-constant_) : constant_;
    os << (constant_ < 0 ? " - " : " + ") << a;
  }
  return os.str();
}

LinAtom::LinAtom(const LinExpr& lhs, Cmp cmp, const LinExpr& rhs) {
  LinExpr d = lhs - rhs;
  Int c = d.constant_term();
  d.add_constant(-c);
  Int k = -c;
  switch (cmp) {
    case Cmp::le: lhs_ = d;           rel_ = Rel::le; k_ = k;      break;
    case Cmp::lt: lhs_ = d;           rel_ = Rel::le; k_ = k - 1;  break;
    case Cmp::ge: lhs_ = d.negated(); rel_ = Rel::le; k_ = -k;     break;
    case Cmp::gt: lhs_ = d.negated(); rel_ = Rel::le; k_ = -k - 1; break;
    case Cmp::eq: lhs_ = d;           rel_ = Rel::eq; k_ = k;      break;
    case Cmp::ne: lhs_ = d;           rel_ = Rel::ne; k_ = k;      break;
  }
  canonicalize();
}

LinAtom::LinAtom(LinExpr lhs, Rel rel, Int k) : lhs_(std::move(lhs)), rel_(rel), k_(std::move(k)) {
  Int c = lhs_.constant_term();
  if (c != 0) {
    lhs_.add_constant(-c);
    k_ -= c;
  }
  canonicalize();
}

LinAtom LinAtom::truth(bool b) {
  return LinAtom(LinExpr(), Rel::le, b ? Int(0) : Int(-1));
}

bool LinAtom::const_value() const {
  switch (rel_) {
    case Rel::le: return k_ >= 0;
    case Rel::eq: return k_ == 0;
    case Rel::ne: return k_ != 0;
  }
  return false;
}

void LinAtom::canonicalize() {
  if (lhs_.is_constant()) {
    bool v = const_value();
    lhs_ = LinExpr();
    rel_ = Rel::le;
    k_ = v ? 0 : -1;
    return;
  }
  if (rel_ != Rel::le && lhs_.terms().front().second < 0) {
    lhs_ = lhs_.negated();
    k_ = -k_;
  }
  Int g = 0;
  for (const auto& [v, c] : lhs_.terms()) g = boost::multiprecision::gcd(g, c < 0 ? Int(-c) : c);
  if (g > 1) {
    LinExpr reduced;
    for (const auto& [v, c] : lhs_.terms()) reduced.add_term(v, c / g);
    switch (rel_) {
      case Rel::le:
        lhs_ = reduced;
        k_ = floor_div(k_, g);
        break;
      case Rel::eq:
        if (k_ % g != 0) {
          *this = truth(false);
          return;
        }
        lhs_ = reduced;
        k_ /= g;
        break;
      case Rel::ne:
        if (k_ % g != 0) {
          *this = truth(true);
          return;
        }
        lhs_ = reduced;
        k_ /= g;
        break;
    }
  }
}

LinAtom LinAtom::negated() const {
  switch (rel_) {
    case Rel::le: return LinAtom(lhs_.negated(), Rel::le, -k_ - 1);
    case Rel::eq: return LinAtom(lhs_, Rel::ne, k_);
    case Rel::ne: return LinAtom(lhs_, Rel::eq, k_);
  }
  throw InternalError("bad relation");
}

bool LinAtom::eval(const Model& m) const {
  Int v = lhs_.eval(m);
  switch (rel_) {
    case Rel::le: return v <= k_;
    case Rel::eq: return v == k_;
    case Rel::ne: return v != k_;
  }
  return false;
}

LinAtom LinAtom::substituted(const std::string& var, const LinExpr& e) const {
  return LinAtom(lhs_.substituted(var, e), rel_, k_);
}

bool LinAtom::operator<(const LinAtom& o) const {
  if (rel_ != o.rel_) return rel_ < o.rel_;
  if (k_ != o.k_) return k_ < o.k_;
  const auto& a = lhs_.terms();
  const auto& b = o.lhs_.terms();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string LinAtom::str() const {
  if (is_const_true()) return "true";
  if (is_const_false()) return "false";
  std::ostringstream os;
  os << lhs_.str();
  switch (rel_) {
    case Rel::le: os << " <= "; break;
    case Rel::eq: os << " == "; break;
    case Rel::ne: os << " != "; break;
  }
  os << k_;
  return os.str();
}

Formula::Formula(std::vector<LinAtom> atoms) {
  for (auto& a : atoms) add(a);
}

Formula::Formula(const LinAtom& atom) { add(atom); }

void Formula::add(const LinAtom& a) {
  if (a.is_const_true()) return;
  if (std::find(atoms_.begin(), atoms_.end(), a) != atoms_.end()) return;
  atoms_.push_back(a);
}

void Formula::add_all(const Formula& o) {
  for (const auto& a : o.atoms_) add(a);
}

Formula Formula::from_unique(std::vector<LinAtom> atoms) {
  Formula f;
  f.atoms_ = std::move(atoms);
  return f;
}

Formula Formula::conj(const Formula& a, const Formula& b) {
  Formula r = a;
  r.add_all(b);
  return r;
}

bool Formula::has_const_false() const {
  for (const auto& a : atoms_)
    if (a.is_const_false()) return true;
  return false;
}

bool Formula::eval(const Model& m) const {
  for (const auto& a : atoms_)
    if (!a.eval(m)) return false;
  return true;
}

Formula Formula::substituted(const std::string& var, const LinExpr& e) const {
  Formula r;
  for (const auto& a : atoms_) r.add(a.substituted(var, e));
  return r;
}

std::set<std::string> Formula::free_vars() const {
  std::set<std::string> s;
  for (const auto& a : atoms_) a.collect_vars(s);
  return s;
}

std::string Formula::str() const {
  if (atoms_.empty()) return "true";
  std::ostringstream os;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) os << " && ";
    os << atoms_[i].str();
  }
  return os.str();
}

BoolExpr BoolExpr::atom(LinAtom a) {
  BoolExpr e(Kind::atom);
  e.atom_ = std::move(a);
  return e;
}

BoolExpr BoolExpr::negation(BoolExpr x) {
  BoolExpr e(Kind::negation);
  e.kids_.push_back(std::move(x));
  return e;
}

BoolExpr BoolExpr::conj(BoolExpr a, BoolExpr b) {
  BoolExpr e(Kind::conj);
  e.kids_.push_back(std::move(a));
  e.kids_.push_back(std::move(b));
  return e;
}

BoolExpr BoolExpr::disj(BoolExpr a, BoolExpr b) {
  BoolExpr e(Kind::disj);
  e.kids_.push_back(std::move(a));
  e.kids_.push_back(std::move(b));
  return e;
}

BoolExpr BoolExpr::implies(BoolExpr a, BoolExpr b) {
  BoolExpr e(Kind::implies);
  e.kids_.push_back(std::move(a));
  e.kids_.push_back(std::move(b));
  return e;
}

BoolExpr BoolExpr::from_formula(const Formula& f) {
  BoolExpr e = truth(true);
  bool first = true;
  for (const auto& a : f.atoms()) {
    if (first) {
      e = atom(a);
      first = false;
    } else {
      e = conj(std::move(e), atom(a));
    }
  }
  return e;
}

bool BoolExpr::eval(const Model& m) const {
  switch (kind_) {
    case Kind::tru: return true;
    case Kind::fls: return false;
    case Kind::atom: return atom_->eval(m);
    case Kind::negation: return !kids_[0].eval(m);
    case Kind::conj: return kids_[0].eval(m) && kids_[1].eval(m);
    case Kind::disj: return kids_[0].eval(m) || kids_[1].eval(m);
    case Kind::implies: return !kids_[0].eval(m) || kids_[1].eval(m);
  }
  return false;
}

BoolExpr BoolExpr::substituted(const std::string& var, const LinExpr& e) const {
  if (kind_ == Kind::atom) return atom(atom_->substituted(var, e));
  BoolExpr r(kind_);
  r.atom_ = atom_;
  for (const auto& k : kids_) r.kids_.push_back(k.substituted(var, e));
  return r;
}

std::set<std::string> BoolExpr::free_vars() const {
  std::set<std::string> s;
  if (kind_ == Kind::atom) {
    atom_->collect_vars(s);
    return s;
  }
  for (const auto& k : kids_) {
    auto sub = k.free_vars();
    s.insert(sub.begin(), sub.end());
  }
  return s;
}

bool BoolExpr::operator==(const BoolExpr& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::atom) return *atom_ == *o.atom_;
  if (kids_.size() != o.kids_.size()) return false;
  for (std::size_t i = 0; i < kids_.size(); ++i)
    if (!(kids_[i] == o.kids_[i])) return false;
  return true;
}

std::string BoolExpr::str() const {
  switch (kind_) {
    case Kind::tru: return "true";
    case Kind::fls: return "false";
    case Kind::atom: return atom_->str();
    case Kind::negation: return "!(" + kids_[0].str() + ")";
    case Kind::conj: return "(" + kids_[0].str() + " && " + kids_[1].str() + ")";
    case Kind::disj: return "(" + kids_[0].str() + " || " + kids_[1].str() + ")";
    case Kind::implies: return "(" + kids_[0].str() + " -> " + kids_[1].str() + ")";
  }
  return "?";
}

}  // namespace interpolse
