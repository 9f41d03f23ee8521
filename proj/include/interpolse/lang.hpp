#ifndef INTERPOLSE_LANG_HPP
#define INTERPOLSE_LANG_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "interpolse/formula.hpp"

namespace interpolse::lang {

enum class StmtKind { assign, assume, halt, error };

struct Stmt {
  StmtKind kind = StmtKind::halt;
  std::string var;  // assign target
  LinExpr rhs;      // assign value
  LinAtom guard = LinAtom::truth(true);

  static Stmt assign(std::string v, LinExpr e) {
    Stmt s;
    s.kind = StmtKind::assign;
    s.var = std::move(v);
    s.rhs = std::move(e);
    return s;
  }
  static Stmt assume(LinAtom a) {
    Stmt s;
    s.kind = StmtKind::assume;
    s.guard = std::move(a);
    return s;
  }
  static Stmt halt() { return Stmt{}; }
  static Stmt error() {
    Stmt s;
    s.kind = StmtKind::error;
    return s;
  }

  bool operator==(const Stmt& o) const {
    return kind == o.kind && var == o.var && rhs == o.rhs && guard == o.guard;
  }

  std::string str() const;
};

using PointId = std::uint32_t;

enum class PointKind { plain, halt, error };

struct PointInfo {
  PointId id = 0;
  int line = 0;  // informational only; ignored by structural equality
  PointKind kind = PointKind::plain;
  bool loop_head = false;
};

struct Transition {
  std::uint32_t id = 0;
  PointId from = 0;
  PointId to = 0;
  Stmt stmt;
};

struct TransitionSystem {
  std::vector<PointInfo> points;
  PointId start = 0;
  std::vector<Transition> transitions;
  // outgoing transition ids per point, then-branch first
  std::vector<std::vector<std::uint32_t>> out;

  const PointInfo& point(PointId p) const { return points[p]; }
  bool structurally_equal(const TransitionSystem& o) const;
  void rebuild_out();
};

struct SymDecl {
  std::string name;
  std::optional<std::pair<Int, Int>> bounds;
};

struct VarDecl {
  std::string name;
  Int init;
};

struct Ast;  // retained source structure, used by pretty_print

struct Program {
  std::vector<SymDecl> symbolic_vars;
  std::vector<VarDecl> program_vars;
  TransitionSystem system;
  std::vector<PointId> targets;  // error points
  Formula safety;                // evaluated at halt points; default true
  std::shared_ptr<const Ast> ast;

  bool is_symbolic(const std::string& name) const;
  bool is_program_var(const std::string& name) const;
};

/// Named integer constants (e.g. BOUND) may be supplied for program files
/// written in template form.
Program parse_program(const std::string& text, const std::map<std::string, Int>& defines = {});

const TransitionSystem& to_transition_system(const Program& p);

std::string pretty_print(const Program& p);

struct ConcreteOutcome {
  enum class Kind { hit_error, hit_halt, budget_exhausted, assume_blocked };
  Kind kind;
  PointId point = 0;
  Model store;
  std::vector<std::uint32_t> path;  // transition ids taken
};

/// Deterministic interpreter; `input` must assign every symbolic variable.
ConcreteOutcome execute_concrete(const Program& p, const Model& input,
                                 std::uint64_t step_budget = 1000000);

}  // namespace interpolse::lang

#endif
