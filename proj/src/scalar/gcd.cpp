// Multivariate gcd over Q by content/primitive-part recursion with a
// primitive polynomial remainder sequence in the main variable.

#include <algorithm>

#include "queerkit/errors.hpp"
#include "queerkit/multipoly.hpp"

namespace queerkit {
namespace {

MultiPoly gcd_primitive(MultiPoly a, MultiPoly b);

// gcd of the coefficients of p viewed as a polynomial in x.
MultiPoly content_in(const MultiPoly& p, Var x) {
  auto coeffs = p.coefficients_in(x);
  MultiPoly g;
  for (auto& c : coeffs) {
    if (c.is_zero()) continue;
    if (g.is_zero()) {
      g = c.primitive_integer();
    } else {
      g = gcd_primitive(g, c.primitive_integer());
    }
    if (g.is_constant()) return MultiPoly(1);
  }
  return g;
}

MultiPoly leading_coeff_in(const MultiPoly& p, Var x, unsigned deg) {
  std::vector<MultiPoly::Term> terms;
  for (const auto& t : p.terms()) {
    if (t.first.exponent(x) == deg) terms.emplace_back(t.first.with_exponent(x, 0), t.second);
  }
  return MultiPoly::from_terms(std::move(terms));
}

MultiPoly primitive_part_in(const MultiPoly& p, Var x) {
  MultiPoly c = content_in(p, x);
  if (c.is_constant()) return p.primitive_integer();
  return p.divide_exact(c).primitive_integer();
}

// Pseudo-remainder of a by b with respect to x.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Var x) {
  const unsigned db = b.degree(x);
  const MultiPoly lcb = leading_coeff_in(b, x, db);
  MultiPoly r = a;
  while (!r.is_zero()) {
    unsigned dr = r.degree(x);
    if (dr < db) break;
    MultiPoly lcr = leading_coeff_in(r, x, dr);
    r = lcb * r - (lcr * b).times_monomial(Monomial::of(x, dr - db));
    r = r.primitive_integer();
  }
  return r;
}

MultiPoly prs_gcd(MultiPoly a, MultiPoly b, Var x) {
  if (a.degree(x) < b.degree(x)) std::swap(a, b);
  while (true) {
    MultiPoly r = pseudo_remainder(a, b, x);
    if (r.is_zero()) return b;
    if (r.degree(x) == 0) return MultiPoly(1);
    a = std::move(b);
    b = primitive_part_in(r, x);
  }
}

// Both arguments nonzero integer-primitive polynomials.
MultiPoly gcd_primitive(MultiPoly a, MultiPoly b) {
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  if (a == b) return a;

  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  Monomial mg = Monomial::gcd(ma, mb);
  if (!ma.is_one()) a = a.divided_by_monomial(ma);
  if (!mb.is_one()) b = b.divided_by_monomial(mb);
  MultiPoly mono = MultiPoly::monomial(mg);
  if (a.is_constant() || b.is_constant()) return mono;

  // One divides the other: the common case for denominators.
  if (b.total_degree() <= a.total_degree() && a.exact_div(b)) return (b * mono).primitive_integer();
  if (a.total_degree() <= b.total_degree() && b.exact_div(a)) return (a * mono).primitive_integer();

  // A variable present in only one argument can only contribute through
  // that argument's content in the variable.
  while (true) {
    unsigned ma_mask = a.var_mask();
    unsigned mb_mask = b.var_mask();
    if (ma_mask == mb_mask) break;
    for (int k = 0; k < kNumVars; ++k) {
      unsigned bit = 1u << k;
      auto x = static_cast<Var>(k);
      if ((ma_mask & bit) && !(mb_mask & bit)) {
        a = content_in(a, x);
        break;
      }
      if ((mb_mask & bit) && !(ma_mask & bit)) {
        b = content_in(b, x);
        break;
      }
    }
    if (a.is_constant() || b.is_constant()) return mono;
  }

  unsigned mask = a.var_mask();
  if (mask == 0) return mono;
  Var main = Var::q;
  unsigned best = ~0u;
  for (int k = 0; k < kNumVars; ++k) {
    if (!(mask & (1u << k))) continue;
    auto x = static_cast<Var>(k);
    unsigned d = std::max(a.degree(x), b.degree(x));
    if (d < best) {
      best = d;
      main = x;
    }
  }

  MultiPoly ca = content_in(a, main);
  MultiPoly cb = content_in(b, main);
  MultiPoly c = (ca.is_constant() || cb.is_constant()) ? MultiPoly(1) : gcd_primitive(ca, cb);
  MultiPoly pa = ca.is_constant() ? a : a.divide_exact(ca).primitive_integer();
  MultiPoly pb = cb.is_constant() ? b : b.divide_exact(cb).primitive_integer();
  MultiPoly g = prs_gcd(pa, pb, main);
  return (g * c * mono).primitive_integer();
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  if (a.is_monomial() || b.is_monomial()) {
    return MultiPoly::monomial(Monomial::gcd(a.monomial_content(), b.monomial_content()));
  }
  return gcd_primitive(a.primitive_integer(), b.primitive_integer()).monic();
}

}  // namespace queerkit
