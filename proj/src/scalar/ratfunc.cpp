#include "queerkit/ratfunc.hpp"

#include <bit>
#include <cctype>
#include <sstream>

#include "queerkit/errors.hpp"

namespace queerkit {

RatFunc RatFunc::normalize(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw InvalidInput("rational function with zero denominator");
  if (num.is_zero()) return RatFunc();
  if (den.is_constant()) return RatFunc(num.scaled(1 / den.constant_value()), MultiPoly(1), true);
  MultiPoly g = gcd(num, den);
  MultiPoly n = g.is_one() ? num : num.divide_exact(g);
  MultiPoly d = g.is_one() ? den : den.divide_exact(g);
  Rational lc = d.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    n = n.scaled(inv);
    d = d.scaled(inv);
  }
  return RatFunc(std::move(n), std::move(d), true);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, true); }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    return *this = normalize(num_ + o.num_, den_);
  }
  MultiPoly g = gcd(den_, o.den_);
  if (g.is_one()) {
    MultiPoly n = num_ * o.den_ + o.num_ * den_;
    if (n.is_zero()) return *this = RatFunc();
    MultiPoly d = den_ * o.den_;
    num_ = std::move(n);
    den_ = std::move(d);
    return *this;
  }
  MultiPoly b1 = den_.divide_exact(g);
  MultiPoly d1 = o.den_.divide_exact(g);
  MultiPoly t = num_ * d1 + o.num_ * b1;
  if (t.is_zero()) return *this = RatFunc();
  MultiPoly g2 = gcd(t, g);
  if (!g2.is_one()) {
    t = t.divide_exact(g2);
    g = g.divide_exact(g2);
  }
  num_ = std::move(t);
  den_ = b1 * d1 * g;
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  MultiPoly g1 = gcd(num_, o.den_);
  MultiPoly g2 = gcd(o.num_, den_);
  MultiPoly a = g1.is_one() ? num_ : num_.divide_exact(g1);
  MultiPoly c = g2.is_one() ? o.num_ : o.num_.divide_exact(g2);
  MultiPoly b = g2.is_one() ? den_ : den_.divide_exact(g2);
  MultiPoly d = g1.is_one() ? o.den_ : o.den_.divide_exact(g1);
  num_ = a * c;
  den_ = b * d;
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inv(); }

RatFunc RatFunc::inv() const {
  if (is_zero()) throw InvalidInput("division by zero rational function");
  Rational lc = num_.leading_coefficient();
  Rational s = 1 / lc;
  return RatFunc(den_.scaled(s), num_.scaled(s), true);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), true);
}

namespace {

RatFunc eval_poly(const MultiPoly& p, const std::map<Var, RatFunc>& bindings,
                  std::map<Var, RatFunc>::const_iterator it) {
  while (it != bindings.end() && p.degree(it->first) == 0) ++it;
  if (it == bindings.end()) return RatFunc(p);
  auto coeffs = p.coefficients_in(it->first);
  auto next = std::next(it);
  RatFunc acc = eval_poly(coeffs.back(), bindings, next);
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    acc = acc * it->second + eval_poly(coeffs[k], bindings, next);
  }
  return acc;
}

std::string describe(const std::map<Var, RatFunc>& bindings) {
  std::string out;
  for (const auto& [x, val] : bindings) {
    if (!out.empty()) out += ", ";
    out += var_name(x);
    out += " -> ";
    out += val.to_string();
  }
  return out;
}

}  // namespace

RatFunc RatFunc::substitute(const std::map<Var, RatFunc>& bindings) const {
  if (bindings.empty()) return *this;
  RatFunc d = eval_poly(den_, bindings, bindings.begin());
  if (d.is_zero()) throw PoleError("denominator vanishes under substitution " + describe(bindings));
  return eval_poly(num_, bindings, bindings.begin()) / d;
}

std::string RatFunc::to_string() const {
  if (num_.is_zero()) return "0";
  MultiPoly np = num_.primitive_integer();
  MultiPoly dp = den_.primitive_integer();
  Rational c = (num_.leading_coefficient() / np.leading_coefficient()) /
               (den_.leading_coefficient() / dp.leading_coefficient());
  const bool has_den = !dp.is_one();
  std::string out;
  if (np.is_one()) {
    out = c.get_str();
  } else {
    bool paren = np.size() > 1 && (c != 1 || has_den);
    if (c == -1) {
      out = "-";
    } else if (c != 1) {
      out = c.get_str() + "*";
    }
    out += paren ? "(" + np.to_string() + ")" : np.to_string();
  }
  if (has_den) {
    // A single power like q^2 needs no parentheses.
    bool bare = dp.is_monomial() && dp.leading_coefficient() == 1 && std::popcount(dp.var_mask()) == 1;
    out += bare ? "/" + dp.to_string() : "/(" + dp.to_string() + ")";
  }
  return out;
}

RatFunc epsilon() {
  static const RatFunc eps = RatFunc::normalize(MultiPoly::var(Var::q, 2) - MultiPoly(1), MultiPoly::var(Var::q));
  return eps;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc parse_all() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        RatFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!accept('^')) return base;
    bool neg = accept('-');
    skip();
    Integer e = digits();
    if (!e.fits_sint_p() || e > 100000) fail("exponent too large");
    int k = static_cast<int>(e.get_si());
    if (neg && base.is_zero()) fail("division by zero");
    return base.pow(neg ? -k : k);
  }

  Integer digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc(Rational(digits()));
    if (auto x = var_from_name(c)) {
      ++pos_;
      if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) fail("unknown identifier");
      return RatFunc::var(*x);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace queerkit
