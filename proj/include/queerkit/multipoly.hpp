#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "queerkit/rational.hpp"

namespace queerkit {

enum class Var : std::uint8_t { q = 0, u = 1, v = 2, z = 3 };

inline constexpr int kNumVars = 4;
inline constexpr std::array<Var, kNumVars> kAllVars = {Var::q, Var::u, Var::v, Var::z};

char var_name(Var x);
std::optional<Var> var_from_name(char c);

/// Monomial q^a u^b v^c z^d packed into 16-bit fields (q lowest, z highest).
/// Ordering is graded lexicographic with q < u < v < z: total degree first,
/// then the exponent of z, v, u, q in turn.
class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial of(Var x, unsigned e = 1);
  static Monomial from_exponents(const std::array<unsigned, kNumVars>& e);

  unsigned exponent(Var x) const {
    return static_cast<unsigned>((bits_ >> (16 * static_cast<int>(x))) & 0xFFFFu);
  }
  std::array<unsigned, kNumVars> exponents() const;
  unsigned degree() const;
  bool is_one() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& o) const { return Monomial(bits_ + o.bits_); }
  // Requires divides(o) on the right operand: *this must be divisible by o.
  Monomial operator/(const Monomial& o) const { return Monomial(bits_ - o.bits_); }
  Monomial with_exponent(Var x, unsigned e) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.bits_ == b.bits_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.bits_ != b.bits_; }

  std::string to_string() const;

 private:
  explicit constexpr Monomial(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

// Three-way monomial comparison in the fixed graded-lex order.
int compare(const Monomial& a, const Monomial& b);
inline bool monomial_greater(const Monomial& a, const Monomial& b) { return compare(a, b) > 0; }

/// Sparse polynomial in q, u, v, z over the rationals. Terms are kept
/// strictly descending in the monomial order with no zero coefficients,
/// so the leading term is terms().front().
class MultiPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MultiPoly(int c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static MultiPoly monomial(const Monomial& m, const Rational& c = 1);
  static MultiPoly var(Var x, unsigned e = 1);
  // Sorts, merges duplicates and drops zeros.
  static MultiPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1; }
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;  // requires is_constant()

  const Monomial& leading_monomial() const { return terms_.front().first; }
  const Rational& leading_coefficient() const { return terms_.front().second; }

  unsigned degree(Var x) const;
  unsigned total_degree() const;
  // Bit k set when variable k occurs.
  unsigned var_mask() const;
  // Greatest monomial dividing every term.
  Monomial monomial_content() const;

  // Coefficients as a polynomial in x: result[k] is the coefficient of x^k.
  std::vector<MultiPoly> coefficients_in(Var x) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, Var x);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  MultiPoly scaled(const Rational& c) const;
  MultiPoly times_monomial(const Monomial& m) const;
  // Divides every term by m; m must divide every term.
  MultiPoly divided_by_monomial(const Monomial& m) const;
  MultiPoly pow(unsigned e) const;

  // Exact quotient, or nullopt when the division leaves a remainder.
  std::optional<MultiPoly> exact_div(const MultiPoly& d) const;
  // Exact quotient; throws InvalidInput when not exact.
  MultiPoly divide_exact(const MultiPoly& d) const;

  // Rational content scaled so that the result is an integer polynomial
  // with coprime coefficients and positive leading coefficient.
  MultiPoly primitive_integer() const;
  // Divides by the leading coefficient.
  MultiPoly monic() const;
  // Least common multiple of coefficient denominators.
  Integer denominator_lcm() const;

  // Substitutes every occurrence of x by the polynomial p.
  MultiPoly substitute(Var x, const MultiPoly& p) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // Terms in descending order, e.g. "q^2 - 1", "3*q*u^2 + 1/2".
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

// Monic greatest common divisor over Q; gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly lcm(const MultiPoly& a, const MultiPoly& b);

}  // namespace queerkit
