#pragma once

#include <map>
#include <string>
#include <string_view>

#include "queerkit/multipoly.hpp"

namespace queerkit {

/// Reduced fraction num/den of polynomials in q, u, v, z. The denominator
/// is nonzero and monic in the graded-lex order and gcd(num, den) = 1, so
/// structural equality is value equality.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(int c) : RatFunc(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const MultiPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)

  // Throws InvalidInput on a zero denominator.
  static RatFunc normalize(const MultiPoly& num, const MultiPoly& den);
  static RatFunc var(Var x) { return RatFunc(MultiPoly::var(x)); }
  // Parses the scalar grammar: + - * / ^ with integer exponents, parentheses,
  // rational literals and the variables q, u, v, z.
  static RatFunc parse(std::string_view text);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  // Bit k set when variable k occurs in num or den.
  unsigned var_mask() const { return num_.var_mask() | den_.var_mask(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

  RatFunc inv() const;  // throws InvalidInput on zero
  RatFunc pow(int e) const;

  // Simultaneous substitution. Throws PoleError naming the bindings when the
  // denominator vanishes identically.
  RatFunc substitute(const std::map<Var, RatFunc>& bindings) const;
  RatFunc substitute(Var x, const RatFunc& value) const { return substitute({{x, value}}); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // Canonical text `c*(N)/(D)` with N, D integer-primitive; each part is
  // omitted when trivial.
  std::string to_string() const;

 private:
  RatFunc(MultiPoly num, MultiPoly den, bool) : num_(std::move(num)), den_(std::move(den)) {}
  MultiPoly num_;
  MultiPoly den_;
};

// q - 1/q.
RatFunc epsilon();

}  // namespace queerkit
