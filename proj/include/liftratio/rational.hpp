#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "liftratio/errors.hpp"

namespace liftratio {

using BigInt = mpz_class;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& v) : q_(v) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero();
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses `n` or `n/d` with an optional leading sign.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw ParseError(0, "empty rational");
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](std::string_view t, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) ++i;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
      throw ParseError(0, "malformed rational '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    return Rational(BigInt(num), BigInt(den));
  }

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& raw() const noexcept { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  std::string to_string() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class q_{0};
};

inline BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Rational value of floor(sqrt(x) * 2^bits) / 2^bits for x >= 0.
inline Rational sqrt_approx(const Rational& x, unsigned bits = 64) {
  if (x.sign() < 0) throw DomainError("square root of a negative rational");
  BigInt scale = BigInt(1) << (2 * bits);
  BigInt scaled = x.numerator() * scale / x.denominator();
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  return Rational(root, BigInt(1) << bits);
}

}  // namespace liftratio
