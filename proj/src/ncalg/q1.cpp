#include "queerkit/ncalg.hpp"

namespace queerkit {

namespace {

const RatFunc& square_ratio() {
  static const RatFunc k = RatFunc::parse("(q^2 - 1)/(q^2 + 1)");
  return k;
}

}  // namespace

Q1Element::Q1Element(const RatFunc& c) {
  if (!c.is_zero()) terms_.emplace(Key{0, 0}, c);
}

Q1Element Q1Element::monomial(int a, int e, const RatFunc& c) {
  if (e != 0 && e != 1) throw InvalidInput("Q1 monomials carry at most one odd factor");
  Q1Element out;
  out.add_term(a, e, c);
  return out;
}

void Q1Element::add_term(int a, int e, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{a, e}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Q1Element Q1Element::operator-() const {
  Q1Element out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

Q1Element& Q1Element::operator+=(const Q1Element& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

Q1Element& Q1Element::operator-=(const Q1Element& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

Q1Element operator*(const Q1Element& x, const Q1Element& y) {
  Q1Element out;
  for (const auto& [kx, cx] : x.terms_) {
    for (const auto& [ky, cy] : y.terms_) {
      int a = kx.first + ky.first;
      int e = kx.second + ky.second;
      RatFunc c = cx * cy;
      if (e < 2) {
        out.add_term(a, e, c);
      } else {
        RatFunc ck = c * square_ratio();
        out.add_term(a + 2, 0, ck);
        out.add_term(a - 2, 0, -ck);
      }
    }
  }
  return out;
}

Q1Element Q1Element::scaled(const RatFunc& s) const {
  Q1Element out;
  if (s.is_zero()) return out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * s);
  return out;
}

Q1Element Q1Element::pow(unsigned k) const {
  Q1Element acc(1);
  Q1Element base = *this;
  while (k > 0) {
    if (k & 1u) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

Q1Element Q1Element::monomial_inverse() const {
  if (terms_.size() != 1 || terms_.begin()->first.second != 0) {
    throw InvalidInput("only even monomials are inverted");
  }
  const auto& [k, c] = *terms_.begin();
  return monomial(-k.first, 0, c.inv());
}

std::pair<Q1Element, Q1Element> Q1Element::split_parity() const {
  std::pair<Q1Element, Q1Element> out;
  for (const auto& [k, c] : terms_) (k.second ? out.second : out.first).terms_.emplace(k, c);
  return out;
}

bool Q1Element::has_odd() const {
  for (const auto& [k, c] : terms_) {
    if (k.second) return true;
  }
  return false;
}

namespace {

Word normal_word(int a, int e) {
  Word w;
  Letter d = a >= 0 ? gen::finite(1, 1) : gen::finite(-1, -1);
  for (int i = 0; i < (a >= 0 ? a : -a); ++i) w.push_back(d);
  if (e) w.push_back(gen::finite(-1, 1));
  return w;
}

}  // namespace

std::string Q1Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [a, e] = it->first;
    std::string w = a == 0 && e == 0 ? "" : word_to_string(normal_word(a, e));
    out += format_signed_term(it->second, w, first);
    first = false;
  }
  return out;
}

NCPoly Q1Element::to_ncpoly() const {
  NCPoly out;
  for (const auto& [k, c] : terms_) out.add_term(normal_word(k.first, k.second), c);
  return out;
}

Q1Element q1_from_ncpoly(const NCPoly& x) {
  const Letter l11 = gen::finite(1, 1);
  const Letter lm = gen::finite(-1, -1);
  const Letter lx = gen::finite(-1, 1);
  const Q1Element i11 = Q1Element::L11();
  const Q1Element im = Q1Element::Lm1m1();
  const Q1Element ix = Q1Element::X();
  Q1Element out;
  for (const auto& [w, c] : x.terms()) {
    Q1Element acc(c);
    for (Letter g : w) {
      if (g == l11) {
        acc = acc * i11;
      } else if (g == lm) {
        acc = acc * im;
      } else if (g == lx) {
        acc = acc * ix;
      } else {
        throw InvalidInput("generator " + gen::to_string(g) + " is not a rank-1 generator");
      }
    }
    out += acc;
  }
  return out;
}

}  // namespace queerkit
