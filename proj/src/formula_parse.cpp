#include "interpolse/formula.hpp"

#include "tokens.hpp"

namespace interpolse {

namespace {
const Int* no_consts(const std::string&, int) { return nullptr; }
}  // namespace

LinAtom parse_atom(const std::string& text) {
  detail::Cursor cur(detail::tokenize(text));
  cur.skip_newlines();
  auto parts = cur.parse_atom_parts(no_consts);
  cur.skip_newlines();
  if (!cur.at_eof()) throw SyntaxError(cur.line(), "trailing input after atom");
  return LinAtom(parts.lhs, parts.cmp, parts.rhs);
}

Formula parse_formula(const std::string& text) {
  detail::Cursor cur(detail::tokenize(text));
  Formula f;
  cur.skip_newlines();
  if (cur.at_ident("true")) {
    cur.next();
    cur.skip_newlines();
    if (!cur.at_eof()) throw SyntaxError(cur.line(), "trailing input after 'true'");
    return f;
  }
  while (true) {
    auto parts = cur.parse_atom_parts(no_consts);
    f.add(LinAtom(parts.lhs, parts.cmp, parts.rhs));
    cur.skip_newlines();
    if (cur.eat_punct("&&")) {
      cur.skip_newlines();
      continue;
    }
    break;
  }
  if (!cur.at_eof()) throw SyntaxError(cur.line(), "trailing input after formula");
  return f;
}

}  // namespace interpolse
