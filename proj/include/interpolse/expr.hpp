#ifndef INTERPOLSE_EXPR_HPP
#define INTERPOLSE_EXPR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "interpolse/errors.hpp"

namespace interpolse {

// All arithmetic is exact; coefficients grow multiplicatively during
// elimination, so fixed-width integers are not an option.
using Int = boost::multiprecision::cpp_int;

using Model = std::map<std::string, Int>;

// floor division (cpp_int's operator/ truncates toward zero)
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

/// A linear integer expression: sum of coeff*var terms plus a constant.
/// Terms are kept sorted by variable name with nonzero coefficients.
class LinExpr {
 public:
  LinExpr() = default;

  static LinExpr constant(Int c) {
    LinExpr e;
    e.constant_ = std::move(c);
    return e;
  }

  static LinExpr variable(const std::string& name, Int coeff = 1) {
    LinExpr e;
    if (coeff != 0) e.terms_.emplace_back(name, std::move(coeff));
    return e;
  }

  const std::vector<std::pair<std::string, Int>>& terms() const { return terms_; }
  const Int& constant_term() const { return constant_; }
  bool is_constant() const { return terms_.empty(); }

  Int coeff(const std::string& name) const {
    for (const auto& [v, c] : terms_)
      if (v == name) return c;
    return 0;
  }

  LinExpr& add_term(const std::string& name, const Int& coeff) {
    if (coeff == 0) return *this;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), name,
                               [](const auto& t, const std::string& n) { return t.first < n; });
    if (it != terms_.end() && it->first == name) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    } else {
      terms_.insert(it, {name, coeff});
    }
    return *this;
  }

  LinExpr& add_constant(const Int& c) {
    constant_ += c;
    return *this;
  }

  LinExpr operator+(const LinExpr& o) const {
    LinExpr r = *this;
    for (const auto& [v, c] : o.terms_) r.add_term(v, c);
    r.constant_ += o.constant_;
    return r;
  }

  LinExpr operator-(const LinExpr& o) const { return *this + o.negated(); }

  LinExpr negated() const { return scaled(-1); }

  LinExpr scaled(const Int& k) const {
    LinExpr r;
    if (k == 0) return r;
    r.constant_ = constant_ * k;
    r.terms_ = terms_;
    for (auto& [v, c] : r.terms_) c *= k;
    return r;
  }

  /// Replace every occurrence of `var` by `e`.
  LinExpr substituted(const std::string& var, const LinExpr& e) const {
    Int c = coeff(var);
    if (c == 0) return *this;
    LinExpr r = *this;
    r.add_term(var, -c);
    return r + e.scaled(c);
  }

  Int eval(const Model& m) const {
    Int r = constant_;
    for (const auto& [v, c] : terms_) {
      auto it = m.find(v);
      if (it == m.end()) throw UnboundVariable(v);
      r += c * it->second;
    }
    return r;
  }

  void collect_vars(std::set<std::string>& out) const {
    for (const auto& [v, c] : terms_) out.insert(v);
  }

  bool operator==(const LinExpr& o) const {
    return terms_ == o.terms_ && constant_ == o.constant_;
  }

  std::string str() const;

 private:
  std::vector<std::pair<std::string, Int>> terms_;
  Int constant_ = 0;
};

}  // namespace interpolse

#endif
