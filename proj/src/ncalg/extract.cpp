#include <algorithm>

#include "queerkit/ncalg.hpp"

namespace queerkit {

namespace {

// Splits a monomial into its part in the parameter variables and the rest.
std::pair<Monomial, Monomial> split_monomial(const Monomial& m, unsigned param_mask) {
  std::array<unsigned, kNumVars> p{};
  std::array<unsigned, kNumVars> r{};
  for (Var x : kAllVars) {
    int i = static_cast<int>(x);
    ((param_mask >> i) & 1u ? p : r)[i] = m.exponent(x);
  }
  return {Monomial::from_exponents(p), Monomial::from_exponents(r)};
}

void extract_entry(std::uint64_t key, const NCPoly& diff, unsigned param_mask,
                   const std::function<bool(const Monomial&)>& keep, std::vector<ComponentRelation>& out) {
  MultiPoly l(1);
  for (const auto& [w, c] : diff.terms()) {
    if (!c.den().is_one()) l = lcm(l, c.den());
  }
  std::map<std::uint64_t, std::pair<Monomial, NCPoly>> parts;
  for (const auto& [w, c] : diff.terms()) {
    MultiPoly p = l.is_one() ? c.num() : c.num() * l.divide_exact(c.den());
    for (const auto& [m, a] : p.terms()) {
      auto [pm, rest] = split_monomial(m, param_mask);
      auto& slot = parts.try_emplace(pm.bits(), pm, NCPoly()).first->second;
      slot.second.add_term(w, RatFunc(MultiPoly::monomial(rest, a)));
    }
  }
  for (auto& [bits, part] : parts) {
    if (part.second.is_zero()) continue;
    if (keep && !keep(part.first)) continue;
    out.push_back({key, part.first, std::move(part.second)});
  }
}

}  // namespace

std::vector<NCPoly> normalize_relations(std::vector<NCPoly> relations) {
  std::vector<std::pair<NCPoly, std::string>> keyed;
  keyed.reserve(relations.size());
  for (auto& r : relations) {
    if (r.is_zero()) continue;
    NCPoly m = r.monic();
    std::string s = m.to_string();
    keyed.emplace_back(std::move(m), std::move(s));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    const Word& wa = a.first.leading_word();
    const Word& wb = b.first.leading_word();
    if (wa != wb) return WordLess()(wa, wb);
    return a.second < b.second;
  });
  std::vector<NCPoly> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].second == keyed[i - 1].second) continue;
    out.push_back(std::move(keyed[i].first));
  }
  return out;
}

std::vector<ComponentRelation> relation_components(const TensorElement<NCPoly>& diff, const std::vector<Var>& params,
                                                   const std::function<bool(const Monomial&)>& keep) {
  unsigned mask = 0;
  for (Var x : params) mask |= 1u << static_cast<int>(x);
  std::vector<ComponentRelation> out;
  for (const auto& [k, c] : diff.terms()) extract_entry(k, c, mask, keep, out);
  return out;
}

std::vector<NCPoly> relation_extract(const TensorElement<NCPoly>& lhs, const TensorElement<NCPoly>& rhs,
                                     const std::vector<Var>& params,
                                     const std::function<bool(const Monomial&)>& keep) {
  lhs.check_shape(rhs);
  std::vector<NCPoly> raw;
  for (auto& c : relation_components(lhs - rhs, params, keep)) raw.push_back(std::move(c.relation));
  return normalize_relations(std::move(raw));
}

std::string format_relations(const std::vector<NCPoly>& relations) {
  std::string out;
  for (const auto& r : relations) {
    out += r.to_string();
    out += '\n';
  }
  return out;
}

}  // namespace queerkit
