#include "queerkit/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "queerkit/errors.hpp"

namespace queerkit {

char var_name(Var x) {
  switch (x) {
    case Var::q: return 'q';
    case Var::u: return 'u';
    case Var::v: return 'v';
    case Var::z: return 'z';
  }
  return '?';
}

std::optional<Var> var_from_name(char c) {
  switch (c) {
    case 'q': return Var::q;
    case 'u': return Var::u;
    case 'v': return Var::v;
    case 'z': return Var::z;
    default: return std::nullopt;
  }
}

Monomial Monomial::of(Var x, unsigned e) {
  return Monomial(static_cast<std::uint64_t>(e) << (16 * static_cast<int>(x)));
}

Monomial Monomial::from_exponents(const std::array<unsigned, kNumVars>& e) {
  std::uint64_t bits = 0;
  for (int k = 0; k < kNumVars; ++k) {
    if (e[k] > 0xFFFFu) throw InvalidInput("monomial exponent overflow");
    bits |= static_cast<std::uint64_t>(e[k]) << (16 * k);
  }
  return Monomial(bits);
}

std::array<unsigned, kNumVars> Monomial::exponents() const {
  std::array<unsigned, kNumVars> e{};
  for (int k = 0; k < kNumVars; ++k) e[k] = exponent(static_cast<Var>(k));
  return e;
}

unsigned Monomial::degree() const {
  std::uint64_t b = bits_;
  return static_cast<unsigned>((b & 0xFFFF) + ((b >> 16) & 0xFFFF) + ((b >> 32) & 0xFFFF) +
                               ((b >> 48) & 0xFFFF));
}

bool Monomial::divides(const Monomial& other) const {
  for (int k = 0; k < kNumVars; ++k) {
    auto x = static_cast<Var>(k);
    if (exponent(x) > other.exponent(x)) return false;
  }
  return true;
}

Monomial Monomial::with_exponent(Var x, unsigned e) const {
  const int shift = 16 * static_cast<int>(x);
  std::uint64_t bits = bits_ & ~(std::uint64_t{0xFFFF} << shift);
  return Monomial(bits | (static_cast<std::uint64_t>(e) << shift));
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  std::uint64_t bits = 0;
  for (int k = 0; k < kNumVars; ++k) {
    auto x = static_cast<Var>(k);
    bits |= static_cast<std::uint64_t>(std::min(a.exponent(x), b.exponent(x))) << (16 * k);
  }
  return Monomial(bits);
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  std::uint64_t bits = 0;
  for (int k = 0; k < kNumVars; ++k) {
    auto x = static_cast<Var>(k);
    bits |= static_cast<std::uint64_t>(std::max(a.exponent(x), b.exponent(x))) << (16 * k);
  }
  return Monomial(bits);
}

std::string Monomial::to_string() const {
  std::string out;
  for (Var x : kAllVars) {
    unsigned e = exponent(x);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += var_name(x);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.bits() == b.bits()) return 0;
  unsigned da = a.degree();
  unsigned db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  return a.bits() < b.bits() ? -1 : 1;
}

namespace {

bool term_greater(const MultiPoly::Term& a, const MultiPoly::Term& b) {
  return compare(a.first, b.first) > 0;
}

// Merges two descending term lists, b scaled by sign.
std::vector<MultiPoly::Term> merge_terms(const std::vector<MultiPoly::Term>& a,
                                         const std::vector<MultiPoly::Term>& b, bool subtract) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = compare(a[i].first, b[j].first);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.emplace_back(b[j].first, subtract ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational s = subtract ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
      if (s != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) terms_.emplace_back(Monomial(), c);
}

MultiPoly MultiPoly::monomial(const Monomial& m, const Rational& c) {
  MultiPoly p;
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

MultiPoly MultiPoly::var(Var x, unsigned e) { return monomial(Monomial::of(x, e)); }

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  MultiPoly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
  return p;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw InvalidInput("polynomial is not constant");
  return terms_[0].second;
}

unsigned MultiPoly::degree(Var x) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.exponent(x));
  return d;
}

unsigned MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().first.degree();
}

unsigned MultiPoly::var_mask() const {
  unsigned mask = 0;
  for (const auto& t : terms_) {
    for (int k = 0; k < kNumVars; ++k) {
      if (t.first.exponent(static_cast<Var>(k)) != 0) mask |= 1u << k;
    }
  }
  return mask;
}

Monomial MultiPoly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_[0].first;
  for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i) g = Monomial::gcd(g, terms_[i].first);
  return g;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(Var x) const {
  std::vector<MultiPoly> out(degree(x) + 1);
  for (const auto& t : terms_) {
    out[t.first.exponent(x)].terms_.emplace_back(t.first.with_exponent(x, 0), t.second);
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, Var x) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial xm = Monomial::of(x, static_cast<unsigned>(k));
    for (const auto& t : coeffs[k].terms_) terms.emplace_back(t.first * xm, t.second);
  }
  return from_terms(std::move(terms));
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].first).scaled(b.terms_[0].second);
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].first).scaled(a.terms_[0].second);
  std::vector<MultiPoly::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) prod.emplace_back(s.first * t.first, s.second * t.second);
  }
  return MultiPoly::from_terms(std::move(prod));
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  if (c == 1) return *this;
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.second *= c;
  return p;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  MultiPoly p = *this;
  // Multiplying by a monomial preserves the graded-lex order.
  for (auto& t : p.terms_) t.first = t.first * m;
  return p;
}

MultiPoly MultiPoly::divided_by_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  MultiPoly p = *this;
  for (auto& t : p.terms_) {
    if (!m.divides(t.first)) throw InvalidInput("monomial does not divide polynomial");
    t.first = t.first / m;
  }
  return p;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<MultiPoly> MultiPoly::exact_div(const MultiPoly& d) const {
  if (d.is_zero()) throw InvalidInput("division by zero polynomial");
  if (is_zero()) return MultiPoly();
  if (d.is_constant()) return scaled(1 / d.constant_value());
  const Monomial& dm = d.leading_monomial();
  if (d.is_monomial()) {
    MultiPoly p = *this;
    Rational inv = 1 / d.leading_coefficient();
    for (auto& t : p.terms_) {
      if (!dm.divides(t.first)) return std::nullopt;
      t.first = t.first / dm;
      t.second *= inv;
    }
    return p;
  }
  // Quick rejections: the quotient's degree in each variable is fixed.
  for (Var x : kAllVars) {
    if (d.degree(x) > degree(x)) return std::nullopt;
  }
  Rational inv = 1 / d.leading_coefficient();
  MultiPoly r = *this;
  MultiPoly quot;
  while (!r.is_zero()) {
    const Monomial& rm = r.leading_monomial();
    if (!dm.divides(rm)) return std::nullopt;
    Monomial qm = rm / dm;
    Rational qc = r.leading_coefficient() * inv;
    quot.terms_.emplace_back(qm, qc);
    r -= d.times_monomial(qm).scaled(qc);
  }
  return quot;
}

MultiPoly MultiPoly::divide_exact(const MultiPoly& d) const {
  auto res = exact_div(d);
  if (!res) throw InvalidInput("polynomial division is not exact");
  return *res;
}

Integer MultiPoly::denominator_lcm() const {
  Integer l = 1;
  for (const auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
  return l;
}

MultiPoly MultiPoly::primitive_integer() const {
  if (terms_.empty()) return {};
  Integer l = denominator_lcm();
  Integer g = 0;
  for (const auto& t : terms_) {
    Integer num = t.second.get_num() * (l / t.second.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  Rational scale(l, g);
  scale.canonicalize();
  if (terms_.front().second < 0) scale = -scale;
  return scaled(scale);
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return {};
  return scaled(1 / leading_coefficient());
}

MultiPoly MultiPoly::substitute(Var x, const MultiPoly& p) const {
  if (degree(x) == 0) return *this;
  auto coeffs = coefficients_in(x);
  MultiPoly acc = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    acc = acc * p + coeffs[k];
  }
  return acc;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  }
  return true;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << m.to_string();
    }
  }
  return os.str();
}

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  MultiPoly g = gcd(a, b);
  return (a.divide_exact(g) * b).monic();
}

}  // namespace queerkit
