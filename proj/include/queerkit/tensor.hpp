#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "queerkit/errors.hpp"
#include "queerkit/ratfunc.hpp"

namespace queerkit {

inline int parity(int i) { return i < 0 ? 1 : 0; }
inline int matrix_parity(int a, int b) { return (parity(a) + parity(b)) & 1; }

/// Basis index of C^{n|n}: a nonzero integer in [-n, n].
class SuperIndex {
 public:
  static SuperIndex make(int value, int n);  // throws InvalidIndex
  int value() const { return value_; }
  int parity() const { return queerkit::parity(value_); }

 private:
  explicit SuperIndex(int v) : value_(v) {}
  int value_;
};

// -n, ..., -1, 1, ..., n.
std::vector<int> index_range(int n);

inline constexpr int kMaxSlots = 4;

/// Packed elementary-matrix tuple: row index a_k in byte 7-k, column index
/// b_k in byte 3-k, each stored as value + 128. Unused bytes are zero, so
/// the row half and column half of a key are directly comparable.
namespace key {

inline std::uint64_t set_row(std::uint64_t k, int slot, int a) {
  const int shift = 8 * (7 - slot);
  return (k & ~(std::uint64_t{0xFF} << shift)) | (static_cast<std::uint64_t>(a + 128) << shift);
}
inline std::uint64_t set_col(std::uint64_t k, int slot, int b) {
  const int shift = 8 * (3 - slot);
  return (k & ~(std::uint64_t{0xFF} << shift)) | (static_cast<std::uint64_t>(b + 128) << shift);
}
inline int row(std::uint64_t k, int slot) { return static_cast<int>((k >> (8 * (7 - slot))) & 0xFF) - 128; }
inline int col(std::uint64_t k, int slot) { return static_cast<int>((k >> (8 * (3 - slot))) & 0xFF) - 128; }
inline std::uint32_t rows(std::uint64_t k) { return static_cast<std::uint32_t>(k >> 32); }
inline std::uint32_t cols(std::uint64_t k) { return static_cast<std::uint32_t>(k & 0xFFFFFFFFu); }
inline std::uint64_t join(std::uint32_t rows, std::uint32_t cols) {
  return (static_cast<std::uint64_t>(rows) << 32) | cols;
}
std::uint64_t make(const std::vector<std::pair<int, int>>& pairs);
std::vector<std::pair<int, int>> unpack(std::uint64_t k, int slots);
// Parity of the matrix part: sum of a_k + b_k.
int parity(std::uint64_t k, int slots);
std::string to_string(std::uint64_t k, int slots);

}  // namespace key

/// Coefficient-ring interface. Scalars are even; other rings split a
/// coefficient into its even and odd parts.
template <class Ring>
struct ring_traits;

template <>
struct ring_traits<RatFunc> {
  static constexpr bool is_scalar = true;
  static bool is_zero(const RatFunc& c) { return c.is_zero(); }
  static bool has_odd(const RatFunc&) { return false; }
  static std::pair<RatFunc, RatFunc> split(const RatFunc& c) { return {c, RatFunc()}; }
  static RatFunc from_scalar(const RatFunc& s) { return s; }
  static RatFunc scale(const RatFunc& c, const RatFunc& s) { return c * s; }
  static std::string to_string(const RatFunc& c) { return c.to_string(); }
};

/// Element of A (x) End(C^{n|n})^{(x)N} as a sparse formal sum of
/// coefficient times elementary-matrix tuples.
template <class Ring>
class TensorElement {
 public:
  using Traits = ring_traits<Ring>;
  using Map = std::map<std::uint64_t, Ring>;

  TensorElement() = default;
  TensorElement(int n, int slots) : n_(n), slots_(slots) {
    if (n < 1) throw InvalidInput("rank must be at least 1");
    if (slots < 0 || slots > kMaxSlots) throw ShapeError("unsupported number of tensor slots");
  }

  static TensorElement identity(int n, int slots) {
    TensorElement out(n, slots);
    auto idx = index_range(n);
    std::vector<int> pos(slots, 0);
    const std::size_t dim = idx.size();
    while (true) {
      std::uint64_t k = 0;
      for (int s = 0; s < slots; ++s) {
        k = key::set_row(k, s, idx[pos[s]]);
        k = key::set_col(k, s, idx[pos[s]]);
      }
      out.terms_.emplace(k, Traits::from_scalar(RatFunc(1)));
      int s = slots - 1;
      while (s >= 0 && ++pos[s] == static_cast<int>(dim)) pos[s--] = 0;
      if (s < 0) break;
    }
    return out;
  }

  static TensorElement scalar(int n, int slots, const Ring& c) {
    TensorElement id = identity(n, slots);
    if (Traits::is_zero(c)) return TensorElement(n, slots);
    for (auto& [k, v] : id.terms_) v = c;
    return id;
  }

  // Collects summands given as (coefficient, per-slot index pairs).
  static TensorElement build(int n, int slots,
                             const std::vector<std::pair<Ring, std::vector<std::pair<int, int>>>>& summands) {
    TensorElement out(n, slots);
    for (const auto& [c, pairs] : summands) {
      if (static_cast<int>(pairs.size()) != slots) throw ShapeError("summand has the wrong number of slots");
      for (const auto& [a, b] : pairs) {
        SuperIndex::make(a, n);
        SuperIndex::make(b, n);
      }
      out.add_term(key::make(pairs), c);
    }
    return out;
  }

  int n() const { return n_; }
  int slots() const { return slots_; }
  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(std::uint64_t k, const Ring& c) {
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  const Ring* coefficient(std::uint64_t k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? nullptr : &it->second;
  }

  // Ring element of a zero-slot tensor.
  Ring scalar_value() const {
    if (slots_ != 0) throw ShapeError("not a zero-slot element");
    auto it = terms_.find(0);
    return it == terms_.end() ? Ring() : it->second;
  }

  void check_shape(const TensorElement& o) const {
    if (n_ != o.n_ || slots_ != o.slots_) throw ShapeError("tensor shapes differ");
  }

  TensorElement& operator+=(const TensorElement& o) {
    check_shape(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  TensorElement& operator-=(const TensorElement& o) {
    check_shape(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  TensorElement operator-() const {
    TensorElement out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
  }
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }

  TensorElement scaled(const RatFunc& s) const {
    TensorElement out(n_, slots_);
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms_) out.add_term(k, Traits::scale(c, s));
    return out;
  }

  // Graded product: slot-wise sign (-1)^{sum_{k<l} |B_k||A_l|} and
  // (-1)^{|A||c'|} for moving the right coefficient past the left matrices.
  friend TensorElement operator*(const TensorElement& x, const TensorElement& y) {
    x.check_shape(y);
    const int N = x.slots_;
    TensorElement out(x.n_, N);
    std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint64_t, const Ring*>>> by_row;
    by_row.reserve(y.terms_.size());
    for (const auto& [k, c] : y.terms_) by_row[key::rows(k)].emplace_back(k, &c);
    std::unordered_map<std::uint64_t, Ring> acc;
    acc.reserve(x.terms_.size() * 2);
    for (const auto& [kx, cx] : x.terms_) {
      auto it = by_row.find(key::cols(kx));
      if (it == by_row.end()) continue;
      std::array<int, kMaxSlots> pa{};
      int total_a = 0;
      for (int s = 0; s < N; ++s) {
        pa[s] = matrix_parity(key::row(kx, s), key::col(kx, s));
        total_a ^= pa[s];
      }
      for (const auto& [ky, cy] : it->second) {
        int e = 0;
        int prefix_b = 0;
        for (int s = 0; s < N; ++s) {
          e ^= prefix_b & pa[s];
          prefix_b ^= matrix_parity(key::row(ky, s), key::col(ky, s));
        }
        std::uint64_t kk = key::join(key::rows(kx), key::cols(ky));
        Ring prod;
        if (Traits::has_odd(*cy)) {
          auto [even, odd] = Traits::split(*cy);
          prod = total_a ? cx * even - cx * odd : cx * even + cx * odd;
        } else {
          prod = cx * *cy;
        }
        if (e) prod = -prod;
        auto [slot, inserted] = acc.try_emplace(kk, std::move(prod));
        if (!inserted) slot->second += prod;
      }
    }
    for (auto& [k, c] : acc) {
      if (!Traits::is_zero(c)) out.terms_.emplace(k, std::move(c));
    }
    return out;
  }

  TensorElement& operator*=(const TensorElement& o) { return *this = *this * o; }

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.n_ == b.n_ && a.slots_ == b.slots_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

  // Every term even overall: coefficient parity equals matrix parity.
  bool is_even() const {
    for (const auto& [k, c] : terms_) {
      auto [even, odd] = Traits::split(c);
      int p = key::parity(k, slots_);
      if (p == 0 && !Traits::is_zero(odd)) return false;
      if (p == 1 && !Traits::is_zero(even)) return false;
    }
    return true;
  }

 private:
  int n_ = 1;
  int slots_ = 1;
  Map terms_;
};

using Tensor = TensorElement<RatFunc>;

template <class To, class From>
TensorElement<To> lift(const TensorElement<From>& x) {
  TensorElement<To> out(x.n(), x.slots());
  for (const auto& [k, c] : x.terms()) out.add_term(k, ring_traits<To>::from_scalar(c));
  return out;
}

// Places an M-slot element into the listed (strictly increasing) slots of N,
// with identities elsewhere.
template <class Ring>
TensorElement<Ring> embed_slots(const TensorElement<Ring>& x, const std::vector<int>& targets, int total) {
  if (static_cast<int>(targets.size()) != x.slots()) throw ShapeError("embedding needs one target per slot");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= total) throw ShapeError("embedding target out of range");
    if (i > 0 && targets[i] <= targets[i - 1]) throw ShapeError("embedding targets must strictly increase");
  }
  TensorElement<Ring> out(x.n(), total);
  std::vector<int> free;
  for (int s = 0, t = 0; s < total; ++s) {
    if (t < static_cast<int>(targets.size()) && targets[t] == s) {
      ++t;
    } else {
      free.push_back(s);
    }
  }
  auto idx = index_range(x.n());
  const int dim = static_cast<int>(idx.size());
  for (const auto& [k, c] : x.terms()) {
    std::uint64_t base = 0;
    for (int i = 0; i < x.slots(); ++i) {
      base = key::set_row(base, targets[i], key::row(k, i));
      base = key::set_col(base, targets[i], key::col(k, i));
    }
    std::vector<int> pos(free.size(), 0);
    while (true) {
      std::uint64_t kk = base;
      for (std::size_t f = 0; f < free.size(); ++f) {
        kk = key::set_row(kk, free[f], idx[pos[f]]);
        kk = key::set_col(kk, free[f], idx[pos[f]]);
      }
      out.add_term(kk, c);
      int f = static_cast<int>(free.size()) - 1;
      while (f >= 0 && ++pos[f] == dim) pos[f--] = 0;
      if (f < 0) break;
    }
  }
  return out;
}

// t: E_ij -> E_ji (-1)^{i j + j} in slot k (bars denote parities).
template <class Ring>
TensorElement<Ring> supertranspose_slot(const TensorElement<Ring>& x, int k) {
  if (k < 0 || k >= x.slots()) throw ShapeError("supertranspose slot out of range");
  TensorElement<Ring> out(x.n(), x.slots());
  for (const auto& [kk, c] : x.terms()) {
    int a = key::row(kk, k);
    int b = key::col(kk, k);
    std::uint64_t nk = key::set_col(key::set_row(kk, k, b), k, a);
    bool neg = ((parity(a) * parity(b) + parity(b)) & 1) != 0;
    out.add_term(nk, neg ? Ring(-c) : c);
  }
  return out;
}

// str: E_ij -> delta_ij (-1)^{i} in slot k; the slot is removed.
template <class Ring>
TensorElement<Ring> supertrace_slot(const TensorElement<Ring>& x, int k) {
  if (k < 0 || k >= x.slots()) throw ShapeError("supertrace slot out of range");
  TensorElement<Ring> out(x.n(), x.slots() - 1);
  for (const auto& [kk, c] : x.terms()) {
    int a = key::row(kk, k);
    if (a != key::col(kk, k)) continue;
    std::uint64_t nk = 0;
    for (int s = 0, t = 0; s < x.slots(); ++s) {
      if (s == k) continue;
      nk = key::set_row(nk, t, key::row(kk, s));
      nk = key::set_col(nk, t, key::col(kk, s));
      ++t;
    }
    out.add_term(nk, parity(a) ? Ring(-c) : c);
  }
  return out;
}

template <class Ring>
Ring supertrace(const TensorElement<Ring>& x) {
  TensorElement<Ring> y = x;
  while (y.slots() > 0) y = supertrace_slot(y, y.slots() - 1);
  return y.scalar_value();
}

// Exchanges slots k and k+1 with the Koszul sign (-1)^{|X||Y|}.
template <class Ring>
TensorElement<Ring> swap_adjacent(const TensorElement<Ring>& x, int k) {
  if (k < 0 || k + 1 >= x.slots()) throw ShapeError("swap slot out of range");
  TensorElement<Ring> out(x.n(), x.slots());
  for (const auto& [kk, c] : x.terms()) {
    int a1 = key::row(kk, k), b1 = key::col(kk, k);
    int a2 = key::row(kk, k + 1), b2 = key::col(kk, k + 1);
    std::uint64_t nk = key::set_row(kk, k, a2);
    nk = key::set_col(nk, k, b2);
    nk = key::set_row(nk, k + 1, a1);
    nk = key::set_col(nk, k + 1, b1);
    bool neg = (matrix_parity(a1, b1) & matrix_parity(a2, b2)) != 0;
    out.add_term(nk, neg ? Ring(-c) : c);
  }
  return out;
}

// Sign relating a formal coefficient to the operator-matrix entry of the
// term with key k: (-1)^{sum_{k<l} |A_l| parity(b_k)}.
int action_sign(std::uint64_t k, int slots);

// Action on a basis tuple; (A (x) B)(v (x) w) = (-1)^{|B||v|} Av (x) Bw.
std::vector<std::pair<std::vector<int>, RatFunc>> apply_to_vector(const Tensor& x, const std::vector<int>& basis);

template <class Ring>
std::vector<std::pair<std::vector<int>, Ring>> apply_to_vector(const TensorElement<Ring>& x,
                                                               const std::vector<int>& basis) {
  if constexpr (ring_traits<Ring>::is_scalar) {
    return apply_to_vector(static_cast<const Tensor&>(x), basis);
  } else {
    (void)x;
    (void)basis;
    throw UnsupportedRing("apply_to_vector requires scalar coefficients");
  }
}

// Exact inverse, computed block-wise on the operator matrix by fraction-free
// Gauss-Jordan elimination. Throws InvalidInput when singular.
Tensor inverse(const Tensor& x);

// Sparse operator exchange format.
std::string to_exchange(const Tensor& x);
Tensor parse_exchange(const std::string& text);

}  // namespace queerkit
