#include <algorithm>
#include <optional>
#include <unordered_map>

#include "queerkit/ncalg.hpp"

namespace queerkit {

std::vector<RewriteRule> orient_relations(const std::vector<NCPoly>& relations) {
  std::vector<RewriteRule> rules;
  for (const auto& r : relations) {
    if (r.is_zero()) continue;
    NCPoly m = r.monic();
    Word lw = m.leading_word();
    NCPoly rest = m - NCPoly::word(lw);
    rules.push_back({std::move(lw), -rest});
  }
  return rules;
}

namespace {

class RuleIndex {
 public:
  explicit RuleIndex(const std::vector<RewriteRule>& rules) : rules_(rules) {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (rules[i].lhs.empty()) {
        constant_rule_ = i;
        continue;
      }
      by_first_[rules[i].lhs.front()].push_back(i);
    }
  }

  // Leftmost occurrence (position, rule) of any left side in w.
  bool find(const Word& w, std::size_t& pos, std::size_t& rule) const {
    if (constant_rule_) {
      pos = 0;
      rule = *constant_rule_;
      return true;
    }
    for (std::size_t p = 0; p < w.size(); ++p) {
      auto it = by_first_.find(w[p]);
      if (it == by_first_.end()) continue;
      for (std::size_t r : it->second) {
        const Word& l = rules_[r].lhs;
        if (p + l.size() > w.size()) continue;
        if (std::equal(l.begin(), l.end(), w.begin() + static_cast<std::ptrdiff_t>(p))) {
          pos = p;
          rule = r;
          return true;
        }
      }
    }
    return false;
  }

 private:
  const std::vector<RewriteRule>& rules_;
  std::unordered_map<Letter, std::vector<std::size_t>> by_first_;
  std::optional<std::size_t> constant_rule_;
};

}  // namespace

RewriteResult rewrite_reduce(const NCPoly& x, const std::vector<RewriteRule>& rules, unsigned budget) {
  RuleIndex index(rules);
  RewriteResult res;
  res.value = x;
  while (true) {
    NCPoly next;
    bool changed = false;
    for (const auto& [w, c] : res.value.terms()) {
      std::size_t pos = 0;
      std::size_t r = 0;
      if (!index.find(w, pos, r)) {
        next.add_term(w, c);
        continue;
      }
      if (res.passes >= budget) return res;
      changed = true;
      const Word& l = rules[r].lhs;
      Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
      Word suffix(w.begin() + static_cast<std::ptrdiff_t>(pos + l.size()), w.end());
      for (const auto& [rw, rc] : rules[r].rhs.terms()) {
        Word nw = prefix;
        nw.insert(nw.end(), rw.begin(), rw.end());
        nw.insert(nw.end(), suffix.begin(), suffix.end());
        next.add_term(nw, c * rc);
      }
    }
    if (!changed) {
      res.complete = true;
      return res;
    }
    ++res.passes;
    res.value = std::move(next);
  }
}

RewriteResult rewrite_reduce(const NCPoly& x, const std::vector<NCPoly>& relations, unsigned budget) {
  return rewrite_reduce(x, orient_relations(relations), budget);
}

}  // namespace queerkit
