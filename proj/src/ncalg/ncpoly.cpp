#include <unordered_map>

#include "queerkit/ncalg.hpp"

namespace queerkit {

namespace gen {

namespace {

Letter pack(int i, int j, unsigned r, bool loop) {
  if (i == 0 || j == 0 || i < -127 || i > 127 || j < -127 || j > 127) {
    throw InvalidIndex("generator index out of range");
  }
  if (r > 255) throw InvalidInput("generator degree out of range");
  return (loop ? 1u << 31 : 0u) | (static_cast<Letter>(i + 128) << 16) | (static_cast<Letter>(j + 128) << 8) | r;
}

}  // namespace

Letter finite(int i, int j) {
  if (i > j) throw InvalidInput("finite generators are upper triangular");
  return pack(i, j, 0, false);
}

Letter loop(int i, int j, unsigned r) { return pack(i, j, r, true); }

std::string to_string(Letter g) {
  std::string out = "L[" + std::to_string(row(g)) + "," + std::to_string(col(g));
  if (is_loop(g)) out += ";" + std::to_string(degree(g));
  return out + "]";
}

}  // namespace gen

int word_parity(const Word& w) {
  int p = 0;
  for (Letter g : w) p ^= gen::parity(g);
  return p;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += gen::to_string(w[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string format_signed_term(const RatFunc& c, const std::string& word, bool first) {
  bool neg = c.num().leading_coefficient() < 0;
  RatFunc a = neg ? -c : c;
  std::string body;
  if (word.empty()) {
    body = a.to_string();
  } else if (a.is_one()) {
    body = word;
  } else {
    std::string s = a.to_string();
    bool simple = true;
    int depth = 0;
    for (char ch : s) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth == 0 && (ch == '+' || ch == '-')) simple = false;
    }
    body = (simple ? s : "(" + s + ")") + "*" + word;
  }
  if (first) return neg ? "-" + body : body;
  return (neg ? " - " : " + ") + body;
}

NCPoly::NCPoly(const RatFunc& c) {
  if (!c.is_zero()) terms_.emplace(Word{}, c);
}

NCPoly NCPoly::letter(Letter g, const RatFunc& c) { return word(Word{g}, c); }

NCPoly NCPoly::word(const Word& w, const RatFunc& c) {
  NCPoly out;
  out.add_term(w, c);
  return out;
}

RatFunc NCPoly::constant_value() const {
  auto it = terms_.find(Word{});
  return it == terms_.end() ? RatFunc() : it->second;
}

bool NCPoly::uses_loop_generators() const {
  for (const auto& [w, c] : terms_) {
    for (Letter g : w) {
      if (gen::is_loop(g)) return true;
    }
  }
  return false;
}

void NCPoly::add_term(const Word& w, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly NCPoly::operator-() const {
  NCPoly out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w;
      w.reserve(wa.size() + wb.size());
      w.insert(w.end(), wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

NCPoly NCPoly::scaled(const RatFunc& s) const {
  NCPoly out;
  if (s.is_zero()) return out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, c * s);
  return out;
}

NCPoly NCPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading_coefficient().inv());
}

NCPoly NCPoly::substitute_scalars(const std::map<Var, RatFunc>& bindings) const {
  NCPoly out;
  for (const auto& [w, c] : terms_) out.add_term(w, c.substitute(bindings));
  return out;
}

NCPoly NCPoly::substitute(const std::function<NCPoly(Letter)>& image) const {
  std::unordered_map<Letter, NCPoly> cache;
  auto img = [&](Letter g) -> const NCPoly& {
    auto it = cache.find(g);
    if (it == cache.end()) it = cache.emplace(g, image(g)).first;
    return it->second;
  };
  NCPoly out;
  for (const auto& [w, c] : terms_) {
    NCPoly acc(c);
    for (Letter g : w) {
      acc = acc * img(g);
      if (acc.is_zero()) break;
    }
    out += acc;
  }
  return out;
}

std::pair<NCPoly, NCPoly> NCPoly::split_parity() const {
  std::pair<NCPoly, NCPoly> out;
  for (const auto& [w, c] : terms_) {
    (word_parity(w) ? out.second : out.first).terms_.emplace(w, c);
  }
  return out;
}

bool NCPoly::has_odd() const {
  for (const auto& [w, c] : terms_) {
    if (word_parity(w)) return true;
  }
  return false;
}

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    out += format_signed_term(it->second, it->first.empty() ? "" : word_to_string(it->first), first);
    first = false;
  }
  return out;
}

std::vector<NCPoly> diagonal_relations(int n) {
  std::vector<NCPoly> out;
  for (int i = 1; i <= n; ++i) {
    Letter a = gen::finite(i, i);
    Letter b = gen::finite(-i, -i);
    out.push_back(NCPoly::word({a, b}) - NCPoly(1));
    out.push_back(NCPoly::word({b, a}) - NCPoly(1));
  }
  return out;
}

}  // namespace queerkit
