#include "interpolse/lang.hpp"

#include <algorithm>
#include <sstream>

#include "tokens.hpp"

namespace interpolse::lang {

std::string Stmt::str() const {
  switch (kind) {
    case StmtKind::assign: return var + " = " + rhs.str();
    case StmtKind::assume: return "assume(" + guard.str() + ")";
    case StmtKind::halt: return "halt";
    case StmtKind::error: return "error";
  }
  return "?";
}

bool TransitionSystem::structurally_equal(const TransitionSystem& o) const {
  if (start != o.start || points.size() != o.points.size() ||
      transitions.size() != o.transitions.size())
    return false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].kind != o.points[i].kind || points[i].loop_head != o.points[i].loop_head)
      return false;
  }
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const Transition& a = transitions[i];
    const Transition& b = o.transitions[i];
    if (a.from != b.from || a.to != b.to || !(a.stmt == b.stmt)) return false;
  }
  return true;
}

void TransitionSystem::rebuild_out() {
  out.assign(points.size(), {});
  for (const Transition& t : transitions) out[t.from].push_back(t.id);
}

bool Program::is_symbolic(const std::string& name) const {
  for (const auto& s : symbolic_vars)
    if (s.name == name) return true;
  return false;
}

bool Program::is_program_var(const std::string& name) const {
  for (const auto& v : program_vars)
    if (v.name == name) return true;
  return false;
}

// ---------------------------------------------------------------------------
// AST

struct AstStmt {
  enum class Kind { assign, assume, assert_, error, halt, if_, while_ };
  Kind kind;
  int line = 0;
  std::string var;
  LinExpr rhs;
  LinAtom guard = LinAtom::truth(true);
  std::vector<AstStmt> then_body;
  std::vector<AstStmt> else_body;
};

struct Ast {
  std::vector<AstStmt> stmts;
};

namespace {

using detail::Cursor;
using detail::Token;

class Parser {
 public:
  Parser(const std::string& text, const std::map<std::string, Int>& defines)
      : cur_(detail::tokenize(text)), defines_(defines) {}

  Program run() {
    parse_decls();
    auto ast = std::make_shared<Ast>();
    ast->stmts = parse_stmts(/*in_block=*/false);
    program_.ast = ast;
    lower(*ast);
    return std::move(program_);
  }

 private:
  bool known(const std::string& name) const {
    return program_.is_symbolic(name) || program_.is_program_var(name) || defines_.count(name);
  }

  const Int* lookup_const(const std::string& name, int line) const {
    if (program_.is_symbolic(name) || program_.is_program_var(name)) return nullptr;
    auto it = defines_.find(name);
    if (it != defines_.end()) return &it->second;
    throw UndeclaredVariable(name, line);
  }

  LinAtom parse_guard() {
    cur_.expect_punct("(");
    auto parts = cur_.parse_atom_parts(
        [this](const std::string& n, int l) { return lookup_const(n, l); });
    cur_.expect_punct(")");
    return LinAtom(parts.lhs, parts.cmp, parts.rhs);
  }

  void end_simple_stmt() {
    if (cur_.eat_punct(";")) return;
    if (cur_.peek().kind == Token::Kind::newline || cur_.at_eof()) return;
    if (cur_.at_punct("}")) return;
    throw SyntaxError(cur_.line(), "expected ';' or newline, got '" + cur_.peek().text + "'");
  }

  void parse_decls() {
    while (true) {
      cur_.skip_newlines();
      if (cur_.at_ident("sym")) {
        int line = cur_.line();
        cur_.next();
        std::string name = expect_name();
        if (known(name)) throw SyntaxError(line, "duplicate declaration of '" + name + "'");
        SymDecl d{name, std::nullopt};
        if (cur_.at_ident("in")) {
          cur_.next();
          cur_.expect_punct("[");
          Int lo = cur_.expect_int();
          cur_.expect_punct(",");
          Int hi = cur_.expect_int();
          cur_.expect_punct("]");
          d.bounds = {lo, hi};
        }
        end_simple_stmt();
        program_.symbolic_vars.push_back(std::move(d));
      } else if (cur_.at_ident("var")) {
        int line = cur_.line();
        cur_.next();
        std::string name = expect_name();
        if (known(name)) throw SyntaxError(line, "duplicate declaration of '" + name + "'");
        cur_.expect_punct("=");
        Int init = cur_.expect_int();
        end_simple_stmt();
        program_.program_vars.push_back({name, init});
      } else {
        break;
      }
    }
  }

  std::string expect_name() {
    if (cur_.peek().kind != Token::Kind::ident)
      throw SyntaxError(cur_.line(), "expected identifier, got '" + cur_.peek().text + "'");
    return cur_.next().text;
  }

  std::vector<AstStmt> parse_block() {
    cur_.expect_punct("{");
    auto body = parse_stmts(/*in_block=*/true);
    cur_.expect_punct("}");
    return body;
  }

  std::vector<AstStmt> parse_stmts(bool in_block) {
    std::vector<AstStmt> out;
    bool terminated = false;
    while (true) {
      cur_.skip_newlines();
      if (cur_.at_eof() || cur_.at_punct("}")) break;
      if (terminated)
        throw SyntaxError(cur_.line(), "unreachable statement after halt/error");
      AstStmt s = parse_stmt();
      if (s.kind == AstStmt::Kind::halt || s.kind == AstStmt::Kind::error) terminated = true;
      out.push_back(std::move(s));
    }
    if (!in_block && !cur_.at_eof())
      throw SyntaxError(cur_.line(), "unexpected '" + cur_.peek().text + "'");
    return out;
  }

  AstStmt parse_stmt() {
    AstStmt s;
    s.line = cur_.line();
    if (cur_.at_ident("if")) {
      cur_.next();
      s.kind = AstStmt::Kind::if_;
      s.guard = parse_guard();
      cur_.skip_newlines();
      s.then_body = parse_block();
      cur_.skip_newlines();
      if (cur_.at_ident("else")) {
        cur_.next();
        cur_.skip_newlines();
        s.else_body = parse_block();
      }
      return s;
    }
    if (cur_.at_ident("while")) {
      cur_.next();
      s.kind = AstStmt::Kind::while_;
      s.guard = parse_guard();
      cur_.skip_newlines();
      s.then_body = parse_block();
      return s;
    }
    if (cur_.at_ident("assume")) {
      cur_.next();
      s.kind = AstStmt::Kind::assume;
      s.guard = parse_guard();
      end_simple_stmt();
      return s;
    }
    if (cur_.at_ident("assert")) {
      cur_.next();
      s.kind = AstStmt::Kind::assert_;
      s.guard = parse_guard();
      end_simple_stmt();
      return s;
    }
    if (cur_.at_ident("error")) {
      cur_.next();
      s.kind = AstStmt::Kind::error;
      end_simple_stmt();
      return s;
    }
    if (cur_.at_ident("halt")) {
      cur_.next();
      s.kind = AstStmt::Kind::halt;
      end_simple_stmt();
      return s;
    }
    if (cur_.peek().kind == Token::Kind::ident) {
      std::string name = cur_.next().text;
      if (!known(name)) throw UndeclaredVariable(name, s.line);
      cur_.expect_punct("=");
      LinExpr rhs = cur_.parse_linexpr(
          [this](const std::string& n, int l) { return lookup_const(n, l); });
      end_simple_stmt();
      if (program_.is_symbolic(name))
        throw SyntaxError(s.line, "cannot assign symbolic variable '" + name + "'");
      if (!program_.is_program_var(name))
        throw SyntaxError(s.line, "cannot assign constant '" + name + "'");
      s.kind = AstStmt::Kind::assign;
      s.var = name;
      s.rhs = std::move(rhs);
      return s;
    }
    throw SyntaxError(s.line, "expected statement, got '" + cur_.peek().text + "'");
  }

  // -------------------------------------------------------------------------
  // Lowering.  Loops are back-edges to a stable loop-head point; loop bodies
  // are never statically unrolled.  if/else arms merge by redirecting the
  // arm exits onto a single point.

  PointId new_point(int line, PointKind kind = PointKind::plain) {
    PointId id = static_cast<PointId>(sys().points.size());
    sys().points.push_back({id, line, kind, false});
    return id;
  }

  void add_transition(PointId from, PointId to, Stmt stmt) {
    auto& ts = sys();
    ts.transitions.push_back(
        {static_cast<std::uint32_t>(ts.transitions.size()), from, to, std::move(stmt)});
  }

  void redirect(PointId from, PointId to) {
    for (Transition& t : sys().transitions)
      if (t.to == from) t.to = to;
  }

  TransitionSystem& sys() { return program_.system; }

  void lower(const Ast& ast) {
    int line0 = ast.stmts.empty() ? 1 : ast.stmts.front().line;
    PointId cur = new_point(line0);
    sys().start = cur;
    for (const SymDecl& d : program_.symbolic_vars) {
      if (!d.bounds) continue;
      LinExpr v = LinExpr::variable(d.name);
      PointId a = new_point(line0);
      add_transition(cur, a, Stmt::assume(LinAtom(v, Cmp::ge, LinExpr::constant(d.bounds->first))));
      PointId b = new_point(line0);
      add_transition(a, b, Stmt::assume(LinAtom(v, Cmp::le, LinExpr::constant(d.bounds->second))));
      cur = b;
    }
    PointId end = lower_block(ast.stmts, cur);
    if (end != kDead) {
      PointId h = new_point(0, PointKind::halt);
      add_transition(end, h, Stmt::halt());
    }
    prune_unreachable();
    sys().rebuild_out();
    check_invariants();
  }

  static constexpr PointId kDead = static_cast<PointId>(-1);

  PointId lower_block(const std::vector<AstStmt>& body, PointId cur) {
    for (const AstStmt& s : body) {
      cur = lower_stmt(s, cur);
      if (cur == kDead) break;  // parser guarantees nothing follows
    }
    return cur;
  }

  PointId lower_stmt(const AstStmt& s, PointId cur) {
    switch (s.kind) {
      case AstStmt::Kind::assign: {
        PointId n = new_point(s.line);
        add_transition(cur, n, Stmt::assign(s.var, s.rhs));
        return n;
      }
      case AstStmt::Kind::assume: {
        PointId n = new_point(s.line);
        add_transition(cur, n, Stmt::assume(s.guard));
        return n;
      }
      case AstStmt::Kind::halt: {
        PointId h = new_point(s.line, PointKind::halt);
        add_transition(cur, h, Stmt::halt());
        return kDead;
      }
      case AstStmt::Kind::error: {
        PointId e = new_point(s.line, PointKind::error);
        add_transition(cur, e, Stmt::error());
        program_.targets.push_back(e);
        return kDead;
      }
      case AstStmt::Kind::assert_: {
        // assert(a) is if (!a) error
        PointId bad = new_point(s.line);
        add_transition(cur, bad, Stmt::assume(s.guard.negated()));
        PointId e = new_point(s.line, PointKind::error);
        add_transition(bad, e, Stmt::error());
        program_.targets.push_back(e);
        PointId ok = new_point(s.line);
        add_transition(cur, ok, Stmt::assume(s.guard));
        return ok;
      }
      case AstStmt::Kind::if_: {
        PointId pt = new_point(s.line);
        add_transition(cur, pt, Stmt::assume(s.guard));
        PointId et = lower_block(s.then_body, pt);
        PointId pe = new_point(s.line);
        add_transition(cur, pe, Stmt::assume(s.guard.negated()));
        PointId ee = lower_block(s.else_body, pe);
        if (et == kDead) return ee;
        if (ee == kDead) return et;
        if (et != ee) redirect(ee, et);
        return et;
      }
      case AstStmt::Kind::while_: {
        sys().points[cur].loop_head = true;
        PointId pb = new_point(s.line);
        add_transition(cur, pb, Stmt::assume(s.guard));
        PointId eb = lower_block(s.then_body, pb);
        if (eb != kDead && eb != cur) redirect(eb, cur);  // back-edge
        PointId px = new_point(s.line);
        add_transition(cur, px, Stmt::assume(s.guard.negated()));
        return px;
      }
    }
    throw InternalError("bad statement kind");
  }

  void prune_unreachable() {
    auto& ts = sys();
    std::vector<std::vector<const Transition*>> out(ts.points.size());
    for (const Transition& t : ts.transitions) out[t.from].push_back(&t);
    std::vector<PointId> order;
    std::vector<bool> seen(ts.points.size(), false);
    std::vector<PointId> stack{ts.start};
    seen[ts.start] = true;
    while (!stack.empty()) {
      PointId p = stack.back();
      stack.pop_back();
      order.push_back(p);
      for (auto it = out[p].rbegin(); it != out[p].rend(); ++it) {
        if (!seen[(*it)->to]) {
          seen[(*it)->to] = true;
          stack.push_back((*it)->to);
        }
      }
    }
    std::sort(order.begin(), order.end());
    std::vector<PointId> remap(ts.points.size(), kDead);
    std::vector<PointInfo> points;
    for (PointId p : order) {
      remap[p] = static_cast<PointId>(points.size());
      PointInfo info = ts.points[p];
      info.id = remap[p];
      points.push_back(info);
    }
    ts.points = std::move(points);
    ts.start = remap[ts.start];
    std::vector<Transition> trans;
    for (const Transition& t : ts.transitions) {
      if (remap[t.from] == kDead) continue;
      Transition n = t;
      n.id = static_cast<std::uint32_t>(trans.size());
      n.from = remap[t.from];
      n.to = remap[t.to];
      trans.push_back(std::move(n));
    }
    ts.transitions = std::move(trans);
    for (PointId& t : program_.targets) t = remap[t];
    std::erase(program_.targets, kDead);
  }

  void check_invariants() const {
    const auto& ts = program_.system;
    for (std::size_t p = 0; p < ts.points.size(); ++p) {
      const auto& outs = ts.out[p];
      if (outs.size() > 2) throw InternalError("point with more than two successors");
      if (outs.size() == 2) {
        const Stmt& a = ts.transitions[outs[0]].stmt;
        const Stmt& b = ts.transitions[outs[1]].stmt;
        if (a.kind != StmtKind::assume || b.kind != StmtKind::assume ||
            !(a.guard.negated() == b.guard))
          throw InternalError("branch guards are not complementary");
      }
      if (ts.points[p].kind != PointKind::plain && !outs.empty())
        throw InternalError("terminal point with successors");
    }
  }

  Cursor cur_;
  const std::map<std::string, Int>& defines_;
  Program program_;
};

void print_block(std::ostringstream& os, const std::vector<AstStmt>& body, int indent);

void print_stmt(std::ostringstream& os, const AstStmt& s, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case AstStmt::Kind::assign: os << pad << s.var << " = " << s.rhs.str() << ";\n"; break;
    case AstStmt::Kind::assume: os << pad << "assume(" << s.guard.str() << ");\n"; break;
    case AstStmt::Kind::assert_: os << pad << "assert(" << s.guard.str() << ");\n"; break;
    case AstStmt::Kind::error: os << pad << "error;\n"; break;
    case AstStmt::Kind::halt: os << pad << "halt;\n"; break;
    case AstStmt::Kind::if_:
      os << pad << "if (" << s.guard.str() << ") {\n";
      print_block(os, s.then_body, indent + 1);
      if (!s.else_body.empty()) {
        os << pad << "} else {\n";
        print_block(os, s.else_body, indent + 1);
      }
      os << pad << "}\n";
      break;
    case AstStmt::Kind::while_:
      os << pad << "while (" << s.guard.str() << ") {\n";
      print_block(os, s.then_body, indent + 1);
      os << pad << "}\n";
      break;
  }
}

void print_block(std::ostringstream& os, const std::vector<AstStmt>& body, int indent) {
  for (const AstStmt& s : body) print_stmt(os, s, indent);
}

}  // namespace

Program parse_program(const std::string& text, const std::map<std::string, Int>& defines) {
  return Parser(text, defines).run();
}

const TransitionSystem& to_transition_system(const Program& p) { return p.system; }

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  for (const SymDecl& d : p.symbolic_vars) {
    os << "sym " << d.name;
    if (d.bounds) os << " in [" << d.bounds->first << ", " << d.bounds->second << "]";
    os << ";\n";
  }
  for (const VarDecl& d : p.program_vars) os << "var " << d.name << " = " << d.init << ";\n";
  if (p.ast) print_block(os, p.ast->stmts, 0);
  return os.str();
}

ConcreteOutcome execute_concrete(const Program& p, const Model& input,
                                 std::uint64_t step_budget) {
  for (const SymDecl& d : p.symbolic_vars)
    if (!input.count(d.name)) throw UnboundVariable(d.name);

  Model store;
  for (const SymDecl& d : p.symbolic_vars) store[d.name] = input.at(d.name);
  for (const VarDecl& d : p.program_vars) store[d.name] = d.init;

  ConcreteOutcome out;
  out.store = store;
  const TransitionSystem& ts = p.system;
  PointId cur = ts.start;
  std::uint64_t steps = 0;
  while (true) {
    const auto& outs = ts.out[cur];
    if (outs.empty()) throw InternalError("stuck at non-terminal point");
    if (++steps > step_budget) {
      out.kind = ConcreteOutcome::Kind::budget_exhausted;
      out.point = cur;
      return out;
    }
    const Transition* take = nullptr;
    if (outs.size() == 2) {
      const Transition& a = ts.transitions[outs[0]];
      take = a.stmt.guard.eval(out.store) ? &a : &ts.transitions[outs[1]];
    } else {
      take = &ts.transitions[outs[0]];
    }
    switch (take->stmt.kind) {
      case StmtKind::assign:
        out.store[take->stmt.var] = take->stmt.rhs.eval(out.store);
        break;
      case StmtKind::assume:
        if (outs.size() == 1 && !take->stmt.guard.eval(out.store)) {
          out.kind = ConcreteOutcome::Kind::assume_blocked;
          out.point = cur;
          return out;
        }
        break;
      case StmtKind::halt:
        out.path.push_back(take->id);
        out.kind = ConcreteOutcome::Kind::hit_halt;
        out.point = take->to;
        return out;
      case StmtKind::error:
        out.path.push_back(take->id);
        out.kind = ConcreteOutcome::Kind::hit_error;
        out.point = take->to;
        return out;
    }
    out.path.push_back(take->id);
    cur = take->to;
  }
}

}  // namespace interpolse::lang
