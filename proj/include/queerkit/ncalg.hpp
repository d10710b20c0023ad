#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "queerkit/errors.hpp"
#include "queerkit/ratfunc.hpp"
#include "queerkit/report.hpp"
#include "queerkit/tensor.hpp"

namespace queerkit {

/// Generator letter packed as loop flag (bit 31), i + 128 (bits 16-23),
/// j + 128 (bits 8-15) and r (bits 0-7), so integer order is (mode, i, j, r).
using Letter = std::uint32_t;

namespace gen {

// Finite generator L[i,j]; requires i <= j.
Letter finite(int i, int j);
// Loop generator L[i,j;r].
Letter loop(int i, int j, unsigned r);
inline bool is_loop(Letter g) { return (g >> 31) != 0; }
inline int row(Letter g) { return static_cast<int>((g >> 16) & 0xFFu) - 128; }
inline int col(Letter g) { return static_cast<int>((g >> 8) & 0xFFu) - 128; }
inline unsigned degree(Letter g) { return g & 0xFFu; }
inline int parity(Letter g) { return matrix_parity(row(g), col(g)); }
std::string to_string(Letter g);

}  // namespace gen

using Word = std::vector<Letter>;

// Degree-lexicographic word order.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

int word_parity(const Word& w);
// Letters joined by '*', runs written as powers; "1" for the empty word.
std::string word_to_string(const Word& w);

/// Noncommutative polynomial: words in the generators with RatFunc
/// coefficients. No zero coefficients are stored.
class NCPoly {
 public:
  using Map = std::map<Word, RatFunc, WordLess>;

  NCPoly() = default;
  NCPoly(const RatFunc& c);  // NOLINT(google-explicit-constructor)
  NCPoly(int c) : NCPoly(RatFunc(c)) {}  // NOLINT(google-explicit-constructor)
  static NCPoly letter(Letter g, const RatFunc& c = RatFunc(1));
  static NCPoly word(const Word& w, const RatFunc& c = RatFunc(1));

  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  RatFunc constant_value() const;  // coefficient of the empty word
  // Greatest word; requires !is_zero().
  const Word& leading_word() const { return terms_.rbegin()->first; }
  const RatFunc& leading_coefficient() const { return terms_.rbegin()->second; }
  bool uses_loop_generators() const;

  void add_term(const Word& w, const RatFunc& c);

  NCPoly operator-() const;
  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  NCPoly& operator*=(const NCPoly& o) { return *this = *this * o; }
  NCPoly scaled(const RatFunc& s) const;
  // Divides by the leading coefficient.
  NCPoly monic() const;
  // Coefficientwise scalar substitution.
  NCPoly substitute_scalars(const std::map<Var, RatFunc>& bindings) const;

  // Replaces each letter by its image; images are multiplied in word order.
  NCPoly substitute(const std::function<NCPoly(Letter)>& image) const;

  // (even part, odd part) by word parity.
  std::pair<NCPoly, NCPoly> split_parity() const;
  bool has_odd() const;

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

  // Leading word first, e.g. "L[1,1]^2 - (q^2 + 1)/(q^2 - 1)*L[-1,1]^2".
  std::string to_string() const;

 private:
  Map terms_;
};

template <>
struct ring_traits<NCPoly> {
  static constexpr bool is_scalar = false;
  static bool is_zero(const NCPoly& c) { return c.is_zero(); }
  static bool has_odd(const NCPoly& c) { return c.has_odd(); }
  static std::pair<NCPoly, NCPoly> split(const NCPoly& c) { return c.split_parity(); }
  static NCPoly from_scalar(const RatFunc& s) { return NCPoly(s); }
  static NCPoly scale(const NCPoly& c, const RatFunc& s) { return c.scaled(s); }
  static std::string to_string(const NCPoly& c) { return c.to_string(); }
};

// Joins coefficient and word text for sums; `first` drops a leading " + ".
std::string format_signed_term(const RatFunc& c, const std::string& word, bool first);

/// Rank-1 normal form: sum of c * L[1,1]^a * X^e with e in {0, 1} and
/// X = L[-1,1]; L[-1,-1] is L[1,1]^-1 and X^2 = k (L[1,1]^2 - L[1,1]^-2)
/// with k = (q^2 - 1)/(q^2 + 1).
class Q1Element {
 public:
  using Key = std::pair<int, int>;  // (a, e)
  using Map = std::map<Key, RatFunc>;

  Q1Element() = default;
  Q1Element(const RatFunc& c);  // NOLINT(google-explicit-constructor)
  Q1Element(int c) : Q1Element(RatFunc(c)) {}  // NOLINT(google-explicit-constructor)
  static Q1Element monomial(int a, int e, const RatFunc& c = RatFunc(1));
  static Q1Element L11() { return monomial(1, 0); }
  static Q1Element Lm1m1() { return monomial(-1, 0); }
  static Q1Element X() { return monomial(0, 1); }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(int a, int e, const RatFunc& c);

  Q1Element operator-() const;
  Q1Element& operator+=(const Q1Element& o);
  Q1Element& operator-=(const Q1Element& o);
  friend Q1Element operator+(Q1Element a, const Q1Element& b) { return a += b; }
  friend Q1Element operator-(Q1Element a, const Q1Element& b) { return a -= b; }
  friend Q1Element operator*(const Q1Element& a, const Q1Element& b);
  Q1Element& operator*=(const Q1Element& o) { return *this = *this * o; }
  Q1Element scaled(const RatFunc& s) const;
  Q1Element pow(unsigned k) const;
  // Inverse of a single term with e = 0.
  Q1Element monomial_inverse() const;

  std::pair<Q1Element, Q1Element> split_parity() const;
  bool has_odd() const;

  friend bool operator==(const Q1Element& a, const Q1Element& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Q1Element& a, const Q1Element& b) { return !(a == b); }

  // Greatest (a, e) first; negative powers written with L[-1,-1].
  std::string to_string() const;
  NCPoly to_ncpoly() const;

 private:
  Map terms_;
};

template <>
struct ring_traits<Q1Element> {
  static constexpr bool is_scalar = false;
  static bool is_zero(const Q1Element& c) { return c.is_zero(); }
  static bool has_odd(const Q1Element& c) { return c.has_odd(); }
  static std::pair<Q1Element, Q1Element> split(const Q1Element& c) { return c.split_parity(); }
  static Q1Element from_scalar(const RatFunc& s) { return Q1Element(s); }
  static Q1Element scale(const Q1Element& c, const RatFunc& s) { return c.scaled(s); }
  static std::string to_string(const Q1Element& c) { return c.to_string(); }
};

inline Q1Element q1_mul(const Q1Element& a, const Q1Element& b) { return a * b; }
// Throws InvalidInput on any generator other than L[1,1], L[-1,-1], L[-1,1].
Q1Element q1_from_ncpoly(const NCPoly& x);

// Sign s(i,j) = (-1)^{i j + j} (bars denote parities) relating the entry
// array to the element sum A_ij (x) E_ij s(i,j).
inline int entry_sign(int i, int j) { return ((parity(i) & parity(j)) ^ parity(j)) ? -1 : 1; }

/// Square entry array over a ring, indexed by index values -n..-1, 1..n.
/// For even elements ordinary matrix multiplication matches the tensor
/// product.
template <class Ring>
class OpMatrix {
 public:
  OpMatrix() = default;
  explicit OpMatrix(int n) : n_(n), a_(static_cast<std::size_t>(4 * n * n)) {
    if (n < 1) throw InvalidInput("rank must be at least 1");
  }
  static OpMatrix identity(int n) {
    OpMatrix m(n);
    for (int i : index_range(n)) m.at(i, i) = ring_traits<Ring>::from_scalar(RatFunc(1));
    return m;
  }

  int n() const { return n_; }
  static int pos(int i, int n) { return i < 0 ? i + n : i + n - 1; }
  Ring& at(int i, int j) { return a_[static_cast<std::size_t>(pos(i, n_) * 2 * n_ + pos(j, n_))]; }
  const Ring& at(int i, int j) const { return a_[static_cast<std::size_t>(pos(i, n_) * 2 * n_ + pos(j, n_))]; }
  Ring& at_pos(int r, int c) { return a_[static_cast<std::size_t>(r * 2 * n_ + c)]; }
  const Ring& at_pos(int r, int c) const { return a_[static_cast<std::size_t>(r * 2 * n_ + c)]; }

  bool is_zero() const {
    for (const auto& x : a_) {
      if (!ring_traits<Ring>::is_zero(x)) return false;
    }
    return true;
  }

  friend OpMatrix operator*(const OpMatrix& x, const OpMatrix& y) {
    if (x.n_ != y.n_) throw ShapeError("matrix ranks differ");
    const int d = 2 * x.n_;
    OpMatrix out(x.n_);
    for (int r = 0; r < d; ++r) {
      for (int k = 0; k < d; ++k) {
        const Ring& a = x.at_pos(r, k);
        if (ring_traits<Ring>::is_zero(a)) continue;
        for (int c = 0; c < d; ++c) {
          const Ring& b = y.at_pos(k, c);
          if (ring_traits<Ring>::is_zero(b)) continue;
          out.at_pos(r, c) += a * b;
        }
      }
    }
    return out;
  }
  OpMatrix& operator+=(const OpMatrix& o) {
    if (n_ != o.n_) throw ShapeError("matrix ranks differ");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  OpMatrix& operator-=(const OpMatrix& o) {
    if (n_ != o.n_) throw ShapeError("matrix ranks differ");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend OpMatrix operator+(OpMatrix a, const OpMatrix& b) { return a += b; }
  friend OpMatrix operator-(OpMatrix a, const OpMatrix& b) { return a -= b; }
  OpMatrix operator-() const {
    OpMatrix out = *this;
    for (auto& x : out.a_) x = -x;
    return out;
  }
  OpMatrix scaled(const RatFunc& s) const {
    OpMatrix out = *this;
    for (auto& x : out.a_) x = ring_traits<Ring>::scale(x, s);
    return out;
  }
  template <class F>
  auto map(F f) const {
    using To = decltype(f(a_[0]));
    OpMatrix<To> out(n_);
    const int d = 2 * n_;
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) out.at_pos(r, c) = f(at_pos(r, c));
    }
    return out;
  }

  friend bool operator==(const OpMatrix& a, const OpMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
  friend bool operator!=(const OpMatrix& a, const OpMatrix& b) { return !(a == b); }

 private:
  int n_ = 1;
  std::vector<Ring> a_;
};

template <class Ring>
TensorElement<Ring> to_tensor(const OpMatrix<Ring>& m) {
  TensorElement<Ring> out(m.n(), 1);
  for (int i : index_range(m.n())) {
    for (int j : index_range(m.n())) {
      const Ring& c = m.at(i, j);
      if (ring_traits<Ring>::is_zero(c)) continue;
      out.add_term(key::make({{i, j}}), entry_sign(i, j) < 0 ? Ring(-c) : c);
    }
  }
  return out;
}

template <class Ring>
OpMatrix<Ring> from_tensor(const TensorElement<Ring>& x) {
  if (x.slots() != 1) throw ShapeError("entry arrays need a one-slot element");
  OpMatrix<Ring> out(x.n());
  for (const auto& [k, c] : x.terms()) {
    int i = key::row(k, 0);
    int j = key::col(k, 0);
    out.at(i, j) = entry_sign(i, j) < 0 ? Ring(-c) : c;
  }
  return out;
}

// Entry form of the supertranspose: (A^t)_ji = (-1)^{i (j + 1)} A_ij.
template <class Ring>
OpMatrix<Ring> matrix_supertranspose(const OpMatrix<Ring>& m) {
  OpMatrix<Ring> out(m.n());
  for (int i : index_range(m.n())) {
    for (int j : index_range(m.n())) {
      const Ring& c = m.at(i, j);
      bool neg = (parity(i) & (parity(j) ^ 1)) != 0;
      out.at(j, i) = neg ? Ring(-c) : c;
    }
  }
  return out;
}

// sum_i (-1)^i m_ii.
template <class Ring>
Ring matrix_supertrace(const OpMatrix<Ring>& m) {
  Ring acc;
  for (int i : index_range(m.n())) {
    if (parity(i)) {
      acc -= m.at(i, i);
    } else {
      acc += m.at(i, i);
    }
  }
  return acc;
}

inline Q1Element q1_supertrace(const OpMatrix<Q1Element>& m) { return matrix_supertrace(m); }

enum class TriangularShape { lower, upper };

// Inverse by substitution; diag_inverses maps index i to a left inverse of
// m(i,i). Throws InvalidInput when a diagonal inverse is missing or an entry
// violates the shape.
template <class Ring>
OpMatrix<Ring> triangular_inverse(const OpMatrix<Ring>& m, TriangularShape shape,
                                  const std::map<int, Ring>& diag_inverses) {
  const int n = m.n();
  const int d = 2 * n;
  auto idx = index_range(n);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      bool outside = shape == TriangularShape::lower ? c > r : c < r;
      if (outside && !ring_traits<Ring>::is_zero(m.at_pos(r, c))) {
        throw InvalidInput("matrix is not triangular of the requested shape");
      }
    }
  }
  std::vector<const Ring*> dinv(d);
  for (int r = 0; r < d; ++r) {
    auto it = diag_inverses.find(idx[r]);
    if (it == diag_inverses.end() || ring_traits<Ring>::is_zero(m.at_pos(r, r))) {
      throw InvalidInput("no inverse supplied for diagonal entry " + std::to_string(idx[r]));
    }
    dinv[r] = &it->second;
  }
  OpMatrix<Ring> x(n);
  for (int c = 0; c < d; ++c) {
    x.at_pos(c, c) = *dinv[c];
    if (shape == TriangularShape::lower) {
      for (int r = c + 1; r < d; ++r) {
        Ring acc;
        for (int k = c; k < r; ++k) {
          if (ring_traits<Ring>::is_zero(m.at_pos(r, k)) || ring_traits<Ring>::is_zero(x.at_pos(k, c))) continue;
          acc += m.at_pos(r, k) * x.at_pos(k, c);
        }
        if (!ring_traits<Ring>::is_zero(acc)) x.at_pos(r, c) = -(*dinv[r] * acc);
      }
    } else {
      for (int r = c - 1; r >= 0; --r) {
        Ring acc;
        for (int k = r + 1; k <= c; ++k) {
          if (ring_traits<Ring>::is_zero(m.at_pos(r, k)) || ring_traits<Ring>::is_zero(x.at_pos(k, c))) continue;
          acc += m.at_pos(r, k) * x.at_pos(k, c);
        }
        if (!ring_traits<Ring>::is_zero(acc)) x.at_pos(r, c) = -(*dinv[r] * acc);
      }
    }
  }
  return x;
}

/// Truncated series sum_r coeffs[r] u^-r of entry arrays.
template <class Ring>
struct OpSeries {
  int n = 1;
  unsigned order = 0;  // coefficients 0..order are valid
  bool exact = false;  // true when every omitted coefficient is zero
  std::vector<OpMatrix<Ring>> coeffs;

  const OpMatrix<Ring>& coeff(unsigned r) const { return coeffs.at(r); }
};

template <class Ring>
OpSeries<Ring> series_product(const OpSeries<Ring>& a, const OpSeries<Ring>& b, unsigned order) {
  if (a.n != b.n) throw ShapeError("series ranks differ");
  OpSeries<Ring> out;
  out.n = a.n;
  out.order = std::min({order, a.exact ? order : a.order, b.exact ? order : b.order});
  out.exact = false;
  out.coeffs.assign(out.order + 1, OpMatrix<Ring>(a.n));
  for (unsigned i = 0; i < a.coeffs.size() && i <= out.order; ++i) {
    for (unsigned j = 0; j < b.coeffs.size() && i + j <= out.order; ++j) {
      out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

// X_0 = s_0^-1, X_r = -X_0 sum_{k=1..r} s_k X_{r-k}.
template <class Ring>
OpSeries<Ring> series_inverse(const OpSeries<Ring>& s, unsigned order, const OpMatrix<Ring>& inv0) {
  if (s.coeffs.empty()) throw InvalidInput("empty series");
  if (!s.exact && order > s.order) throw InvalidInput("requested order exceeds the series truncation");
  OpSeries<Ring> out;
  out.n = s.n;
  out.order = order;
  out.coeffs.reserve(order + 1);
  out.coeffs.push_back(inv0);
  for (unsigned r = 1; r <= order; ++r) {
    OpMatrix<Ring> acc(s.n);
    for (unsigned k = 1; k <= r && k < s.coeffs.size(); ++k) acc += s.coeffs[k] * out.coeffs[r - k];
    out.coeffs.push_back(-(inv0 * acc));
  }
  return out;
}

// Leading coefficient inverted by triangular_inverse; its shape is detected.
// Throws InvalidInput when it is not triangular or a diagonal inverse is
// missing.
template <class Ring>
OpSeries<Ring> series_inverse(const OpSeries<Ring>& s, unsigned order, const std::map<int, Ring>& diag_inverses) {
  if (s.coeffs.empty()) throw InvalidInput("empty series");
  const OpMatrix<Ring>& c0 = s.coeffs[0];
  const int d = 2 * s.n;
  bool upper = true;
  bool lower = true;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (ring_traits<Ring>::is_zero(c0.at_pos(r, c))) continue;
      if (c < r) upper = false;
      if (c > r) lower = false;
    }
  }
  if (!upper && !lower) throw InvalidInput("leading series coefficient is not triangular");
  OpMatrix<Ring> inv0 =
      triangular_inverse(c0, upper ? TriangularShape::upper : TriangularShape::lower, diag_inverses);
  return series_inverse(s, order, inv0);
}

/// Rewriting rules oriented by the degree-lex word order.
struct RewriteRule {
  Word lhs;
  NCPoly rhs;
};

// Leading word -> minus the rest divided by the leading coefficient.
// Zero relations are dropped.
std::vector<RewriteRule> orient_relations(const std::vector<NCPoly>& relations);

struct RewriteResult {
  NCPoly value;
  bool complete = false;  // fixed point reached within the budget
  unsigned passes = 0;
};

// Each pass rewrites the leftmost rule occurrence in every reducible term.
RewriteResult rewrite_reduce(const NCPoly& x, const std::vector<RewriteRule>& rules, unsigned budget);
RewriteResult rewrite_reduce(const NCPoly& x, const std::vector<NCPoly>& relations, unsigned budget);

struct ComponentRelation {
  std::uint64_t key = 0;  // elementary-matrix tuple
  Monomial params;        // parameter monomial after clearing
  NCPoly relation;        // cleared, not normalized
};

// Nonzero components of diff in tuple order, then parameter monomial order.
std::vector<ComponentRelation> relation_components(const TensorElement<NCPoly>& diff,
                                                   const std::vector<Var>& params = {},
                                                   const std::function<bool(const Monomial&)>& keep = {});

// Component relations of lhs = rhs: per elementary-matrix tuple and per
// monomial in `params` after clearing denominators. Each relation is monic;
// the list is deduplicated and sorted. `keep` filters by the parameter
// monomial of the cleared component.
std::vector<NCPoly> relation_extract(const TensorElement<NCPoly>& lhs, const TensorElement<NCPoly>& rhs,
                                     const std::vector<Var>& params = {},
                                     const std::function<bool(const Monomial&)>& keep = {});

// Monic, deduplicated, sorted by leading word then text.
std::vector<NCPoly> normalize_relations(std::vector<NCPoly> relations);

// One relation per line.
std::string format_relations(const std::vector<NCPoly>& relations);

// L[i,i]L[-i,-i] - 1 and L[-i,-i]L[i,i] - 1 for every i.
std::vector<NCPoly> diagonal_relations(int n);

}  // namespace queerkit
