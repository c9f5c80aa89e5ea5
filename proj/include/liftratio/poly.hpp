#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liftratio/errors.hpp"
#include "liftratio/rational.hpp"

namespace liftratio {

/// Name of an indeterminate, `[a-zA-Z][a-zA-Z0-9_]*`. Ordered by name.
class VarId {
 public:
  explicit VarId(std::string name) : name_(std::move(name)) {
    if (!valid(name_)) throw ParseError(0, "invalid variable name '" + name_ + "'");
  }

  static bool valid(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }

  const std::string& name() const noexcept { return name_; }
  friend auto operator<=>(const VarId&, const VarId&) = default;

 private:
  std::string name_;
};

/// Product of indeterminates with positive exponents, kept sorted by name.
/// The empty monomial is the constant 1.
class Monomial {
 public:
  using Factor = std::pair<VarId, unsigned>;

  Monomial() = default;
  explicit Monomial(VarId v, unsigned exp = 1) {
    if (exp > 0) factors_.emplace_back(std::move(v), exp);
  }

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  unsigned exponent(const VarId& v) const {
    for (const auto& f : factors_)
      if (f.first == v) return f.second;
    return 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
      if (i->first < j->first) {
        r.factors_.push_back(*i++);
      } else if (j->first < i->first) {
        r.factors_.push_back(*j++);
      } else {
        r.factors_.emplace_back(i->first, i->second + j->second);
        ++i, ++j;
      }
    }
    r.factors_.insert(r.factors_.end(), i, a.factors_.end());
    r.factors_.insert(r.factors_.end(), j, b.factors_.end());
    return r;
  }

  /// True iff `d` divides this monomial.
  bool divisible_by(const Monomial& d) const {
    auto i = factors_.begin();
    for (const auto& f : d.factors_) {
      while (i != factors_.end() && i->first < f.first) ++i;
      if (i == factors_.end() || !(i->first == f.first) || i->second < f.second) return false;
    }
    return true;
  }

  /// Quotient by a divisor; requires divisible_by(d).
  Monomial divided_by(const Monomial& d) const {
    Monomial r;
    auto j = d.factors_.begin();
    for (const auto& f : factors_) {
      if (j != d.factors_.end() && j->first == f.first) {
        if (f.second > j->second) r.factors_.emplace_back(f.first, f.second - j->second);
        ++j;
      } else {
        r.factors_.push_back(f);
      }
    }
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const {
    std::string s;
    for (const auto& [v, e] : factors_) {
      if (!s.empty()) s += '*';
      s += v.name();
      if (e > 1) s += '^' + std::to_string(e);
    }
    return s.empty() ? "1" : s;
  }

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic order: total degree first, then lex with variables
/// ranked by name (`a` > `b`). A monomial order, so it is compatible with
/// multiplication and drives both printing and exact division.
struct GrlexLess {
  bool operator()(const Monomial& x, const Monomial& y) const {
    unsigned dx = x.degree(), dy = y.degree();
    if (dx != dy) return dx < dy;
    const auto& fx = x.factors();
    const auto& fy = y.factors();
    std::size_t i = 0;
    for (; i < fx.size() && i < fy.size(); ++i) {
      if (fx[i].first != fy[i].first) return fy[i].first < fx[i].first;
      if (fx[i].second != fy[i].second) return fx[i].second < fy[i].second;
    }
    // Equal degree and equal prefix forces equal monomials.
    return false;
  }
};

using Assignment = std::map<std::string, Rational, std::less<>>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored, so structural equality is equality.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  Poly() = default;
  Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Monomial& m, const Rational& c) {
    if (!c.is_zero()) terms_.emplace(m, c);
  }

  static Poly var(std::string_view name) { return Poly(Monomial(VarId(std::string(name))), 1); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Largest term under GrlexLess. Precondition: nonzero.
  const Terms::value_type& leading_term() const { return *terms_.rbegin(); }

  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

  bool has_integer_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_integer(); });
  }

  std::set<std::string> variables() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
      for (const auto& f : m.factors()) out.insert(f.first.name());
    return out;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  Poly scaled(const Rational& c) const {
    if (c.is_zero()) return {};
    Poly r;
    for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
    return r;
  }

  Poly pow(unsigned e) const {
    Poly result(1), base = *this;
    while (e > 0) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Exact value at a point; every variable of the polynomial must be assigned.
  Rational eval(const Assignment& at) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (const auto& [var, e] : m.factors()) {
        auto it = at.find(var.name());
        if (it == at.end()) throw MissingVariable(var.name());
        for (unsigned k = 0; k < e; ++k) v *= it->second;
      }
      total += v;
    }
    return total;
  }

  /// Replaces every occurrence of `v` by `value`.
  Poly substitute(const VarId& v, const Poly& value) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
      unsigned e = m.exponent(v);
      if (e == 0) {
        r.add_term(m, c);
        continue;
      }
      Monomial rest = m.divided_by(Monomial(v, e));
      r += Poly(rest, c) * value.pow(e);
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Canonical text, terms in descending graded-lex order: `2*a^2*b - 1/3*c + 5`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      bool neg = c.sign() < 0;
      Rational mag = neg ? -c : c;
      if (first) {
        if (neg) out += '-';
      } else {
        out += neg ? " - " : " + ";
      }
      if (m.is_one()) {
        out += mag.to_string();
      } else {
        if (!mag.is_one()) out += mag.to_string() + '*';
        out += m.to_string();
      }
      first = false;
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Terms terms_;
};

/// Exact quotient p / q by leading-term elimination under GrlexLess.
/// Throws NotDivisible if any remainder survives.
inline Poly div_exact(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw DivisionByZero();
  const auto& [lm, lc] = q.leading_term();
  Poly rem = p, quot;
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading_term();
    if (!rm.divisible_by(lm)) throw NotDivisible();
    Poly step(rm.divided_by(lm), rc / lc);
    rem -= step * q;
    quot += step;
  }
  return quot;
}

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(0, "polynomial '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + why);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }
  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }
  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      std::string d = digits();
      if (d.size() > 6) fail("exponent too large");
      unsigned e = static_cast<unsigned>(std::stoul(d));
      if (e == 0) fail("exponent must be positive");
      return base.pow(e);
    }
    return base;
  }
  Poly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip_ws();
        den = digits();
        if (BigInt(den) == 0) fail("zero denominator");
      }
      return Poly(Rational(BigInt(num), BigInt(den)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return Poly::var(s_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the polynomial text grammar (integers, `p/q`, identifiers, `*`,
/// `^`, `+`, `-`, parentheses).
inline Poly parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace liftratio
