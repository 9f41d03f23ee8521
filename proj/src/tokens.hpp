#ifndef INTERPOLSE_SRC_TOKENS_HPP
#define INTERPOLSE_SRC_TOKENS_HPP

#include <cctype>
#include <string>
#include <vector>

#include "interpolse/errors.hpp"
#include "interpolse/formula.hpp"

namespace interpolse::detail {

struct Token {
  enum class Kind { ident, number, punct, newline, eof };
  Kind kind;
  std::string text;
  Int value;  // for numbers
  int line;
};

// "//" comments run to end of line; CRLF and LF both accepted.
inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t) {
    out.push_back({k, std::move(t), 0, line});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\r') {
      ++i;
      continue;
    }
    if (c == '\n') {
      push(Token::Kind::newline, "\n");
      ++line;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      push(Token::Kind::ident, src.substr(i, j - i));
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      Token t{Token::Kind::number, src.substr(i, j - i), 0, line};
      t.value = Int(t.text);
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "==" || two == "!=" || two == "<=" || two == ">=" || two == "&&") {
      push(Token::Kind::punct, two);
      i += 2;
      continue;
    }
    if (std::string("=<>+-*;,(){}[]!").find(c) != std::string::npos) {
      push(Token::Kind::punct, std::string(1, c));
      ++i;
      continue;
    }
    throw SyntaxError(line, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::Kind::eof, "", 0, line});
  return out;
}

struct LinAtomParts {
  LinExpr lhs;
  Cmp cmp;
  LinExpr rhs;
};

// Token cursor with the expression/atom grammar shared by program files and
// formula fixtures.  Identifier meaning is resolved through `lookup`: it
// returns nullptr for a plain variable or a pointer to a constant binding.
class Cursor {
 public:
  Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_punct(const std::string& p) const {
    return peek().kind == Token::Kind::punct && peek().text == p;
  }
  bool at_ident(const std::string& w) const {
    return peek().kind == Token::Kind::ident && peek().text == w;
  }
  bool eat_punct(const std::string& p) {
    if (!at_punct(p)) return false;
    next();
    return true;
  }
  void expect_punct(const std::string& p) {
    if (!eat_punct(p))
      throw SyntaxError(peek().line, "expected '" + p + "', got '" + peek().text + "'");
  }
  void skip_newlines() {
    while (peek().kind == Token::Kind::newline) next();
  }
  int line() const { return peek().line; }
  bool at_eof() const { return peek().kind == Token::Kind::eof; }

  Int expect_int() {
    bool neg = eat_punct("-");
    if (peek().kind != Token::Kind::number)
      throw SyntaxError(peek().line, "expected integer, got '" + peek().text + "'");
    Int v = next().value;
    return neg ? Int(-v) : v;
  }

  // linexpr := term (("+"|"-") term)*
  // term    := INT | IDENT | INT "*" IDENT | "-" term
  template <typename Lookup>
  LinExpr parse_linexpr(const Lookup& lookup) {
    LinExpr e = parse_term(lookup);
    while (true) {
      if (eat_punct("+")) {
        e = e + parse_term(lookup);
      } else if (eat_punct("-")) {
        e = e - parse_term(lookup);
      } else {
        break;
      }
    }
    return e;
  }

  template <typename Lookup>
  LinAtomParts parse_atom_parts(const Lookup& lookup);

 private:
  template <typename Lookup>
  LinExpr parse_term(const Lookup& lookup) {
    int ln = line();
    if (eat_punct("-")) return parse_term(lookup).negated();
    if (peek().kind == Token::Kind::number) {
      Int v = next().value;
      if (eat_punct("*")) {
        if (peek().kind != Token::Kind::ident) throw NonLinearExpression(ln);
        std::string name = next().text;
        if (const Int* c = lookup(name, ln)) return LinExpr::constant(v * *c);
        return LinExpr::variable(name, v);
      }
      return LinExpr::constant(v);
    }
    if (peek().kind == Token::Kind::ident) {
      std::string name = next().text;
      if (at_punct("*")) throw NonLinearExpression(ln);
      if (const Int* c = lookup(name, ln)) return LinExpr::constant(*c);
      return LinExpr::variable(name);
    }
    throw SyntaxError(ln, "expected expression, got '" + peek().text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <typename Lookup>
LinAtomParts Cursor::parse_atom_parts(const Lookup& lookup) {
  LinAtomParts p;
  p.lhs = parse_linexpr(lookup);
  const Token& t = peek();
  if (t.kind != Token::Kind::punct) throw SyntaxError(t.line, "expected relation");
  if (t.text == "==") p.cmp = Cmp::eq;
  else if (t.text == "!=") p.cmp = Cmp::ne;
  else if (t.text == "<") p.cmp = Cmp::lt;
  else if (t.text == "<=") p.cmp = Cmp::le;
  else if (t.text == ">") p.cmp = Cmp::gt;
  else if (t.text == ">=") p.cmp = Cmp::ge;
  else throw SyntaxError(t.line, "expected relation, got '" + t.text + "'");
  next();
  p.rhs = parse_linexpr(lookup);
  return p;
}

}  // namespace interpolse::detail

#endif
