#include "properties.hpp"

#include "queerkit/rmatrix.hpp"

namespace queerkit::testing {

RatFunc random_coeff(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::uniform_int_distribution<int> e(0, 2);
  int k = c(rng);
  if (k == 0) k = 1;
  return RatFunc(k) * RatFunc::var(Var::q).pow(e(rng) - 1) + RatFunc(c(rng)) * RatFunc::var(Var::u).pow(e(rng));
}

Tensor random_homogeneous(std::mt19937& rng, int n, int parity) {
  auto idx = index_range(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(idx.size()) - 1);
  std::uniform_int_distribution<int> count(1, 4);
  Tensor x(n, 1);
  int terms = count(rng);
  while (terms > 0) {
    int a = idx[pick(rng)], b = idx[pick(rng)];
    if (matrix_parity(a, b) != parity) continue;
    x.add_term(key::make({{a, b}}), random_coeff(rng));
    --terms;
  }
  return x;
}

Tensor random_element(std::mt19937& rng, int n, int slots, int terms) {
  auto idx = index_range(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(idx.size()) - 1);
  Tensor x(n, slots);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::pair<int, int>> p;
    for (int s = 0; s < slots; ++s) p.emplace_back(idx[pick(rng)], idx[pick(rng)]);
    x.add_term(key::make(p), random_coeff(rng));
  }
  return x;
}

NCPoly random_rank1(std::mt19937& rng, int terms, int max_len) {
  const Letter letters[] = {gen::finite(1, 1), gen::finite(-1, -1), gen::finite(-1, 1)};
  NCPoly out;
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < terms; ++t) {
    Word word;
    int l = len(rng);
    for (int i = 0; i < l; ++i) word.push_back(letters[pick(rng)]);
    int c = coef(rng);
    out.add_term(word, c == 0 ? RatFunc(1) : RatFunc(c) * RatFunc::var(Var::q).pow(pick(rng) - 1));
  }
  return out;
}

std::vector<NCPoly> rank1_rtt() {
  OpMatrix<NCPoly> m(1);
  for (int i : index_range(1)) {
    for (int j : index_range(1)) {
      if (i <= j) m.at(i, j) = NCPoly::letter(gen::finite(i, j));
    }
  }
  auto L = to_tensor(m);
  auto L1 = embed_slots(L, {0}, 2);
  auto L2 = embed_slots(L, {1}, 2);
  auto S = lift<NCPoly>(build_S(1));
  auto rels = relation_extract(L1 * L2 * S, S * L2 * L1);
  for (auto& d : diagonal_relations(1)) rels.push_back(d);
  return normalize_relations(rels);
}

PropertyOutcome trace_cyclicity(unsigned seed, unsigned count) {
  PropertyOutcome out{"trace cyclicity", seed};
  std::mt19937 rng(seed);
  for (unsigned it = 0; it < count; ++it) {
    int n = 1 + static_cast<int>(it % 3);
    int px = (it / 3) % 2, py = (it / 6) % 2;
    Tensor x = random_homogeneous(rng, n, px);
    Tensor y = random_homogeneous(rng, n, py);
    RatFunc lhs = supertrace(x * y);
    RatFunc rhs = supertrace(y * x);
    ++out.instances;
    if (lhs != ((px & py) ? -rhs : rhs)) ++out.failures;
  }
  return out;
}

PropertyOutcome supertranspose_antiautomorphism(unsigned seed, unsigned count) {
  PropertyOutcome out{"supertransposition anti-automorphism", seed};
  std::mt19937 rng(seed);
  for (unsigned it = 0; it < count; ++it) {
    int n = 1 + static_cast<int>(it % 3);
    int px = (it / 3) % 2, py = (it / 6) % 2;
    Tensor x = random_homogeneous(rng, n, px);
    Tensor y = random_homogeneous(rng, n, py);
    Tensor lhs = supertranspose_slot(x * y, 0);
    Tensor rhs = supertranspose_slot(y, 0) * supertranspose_slot(x, 0);
    ++out.instances;
    if (lhs != ((px & py) ? -rhs : rhs)) ++out.failures;
  }
  return out;
}

PropertyOutcome tensor_associativity(unsigned seed, unsigned count) {
  PropertyOutcome out{"tensor associativity", seed};
  std::mt19937 rng(seed);
  for (unsigned it = 0; it < count; ++it) {
    int n = 1 + static_cast<int>(it % 2);
    int slots = 1 + static_cast<int>(it % 3);
    Tensor x = random_element(rng, n, slots, 5);
    Tensor y = random_element(rng, n, slots, 5);
    Tensor z = random_element(rng, n, slots, 5);
    ++out.instances;
    if ((x * y) * z != x * (y * z)) ++out.failures;
  }
  return out;
}

// Reduction reaches a fixed point, reducing again is a no-op, and the
// normal form agrees with the rank-1 oracle.
PropertyOutcome rewrite_idempotence(unsigned seed, unsigned count) {
  PropertyOutcome out{"rewrite idempotence", seed};
  auto rules = orient_relations(rank1_rtt());
  std::mt19937 rng(seed);
  for (unsigned it = 0; it < count; ++it) {
    NCPoly x = random_rank1(rng, 4, 4);
    ++out.instances;
    auto r = rewrite_reduce(x, rules, 200);
    if (!r.complete) {
      ++out.failures;
      continue;
    }
    auto again = rewrite_reduce(r.value, rules, 200);
    Q1Element e = q1_from_ncpoly(x);
    auto back = rewrite_reduce(e.to_ncpoly(), rules, 200);
    bool ok = again.complete && again.passes == 0 && again.value == r.value && q1_from_ncpoly(r.value) == e &&
              q1_from_ncpoly(back.value) == e;
    if (!ok) ++out.failures;
  }
  return out;
}

// s X = X s = 1 to the requested order for a triangular invertible s_0.
PropertyOutcome series_inverse_two_sided(unsigned seed, unsigned count) {
  PropertyOutcome out{"series-inverse two-sidedness", seed};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> expo(-2, 2);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> coin(0, 1);
  auto entry = [&](int i, int j) {
    Q1Element e;
    int terms = coin(rng);
    for (int t = 0; t < terms; ++t) e += Q1Element::monomial(expo(rng), matrix_parity(i, j), RatFunc(coef(rng)));
    return e;
  };
  for (unsigned it = 0; it < count; ++it) {
    const int n = 1 + static_cast<int>(it % 2);
    const bool upper = it % 3 != 0;
    const unsigned order = 1 + it % 2;
    OpSeries<Q1Element> s;
    s.n = n;
    s.order = order;
    s.exact = true;
    std::map<int, Q1Element> dinv;
    OpMatrix<Q1Element> c0(n);
    for (int i : index_range(n)) {
      for (int j : index_range(n)) {
        if (i == j) {
          Q1Element d = Q1Element::monomial(expo(rng), 0, RatFunc(coef(rng) == 0 ? 3 : -1) * RatFunc::var(Var::q).pow(expo(rng)));
          c0.at(i, i) = d;
          dinv[i] = d.monomial_inverse();
        } else if ((upper && i < j) || (!upper && i > j)) {
          c0.at(i, j) = entry(i, j);
        }
      }
    }
    s.coeffs.push_back(c0);
    for (unsigned r = 1; r <= order; ++r) {
      OpMatrix<Q1Element> c(n);
      for (int i : index_range(n)) {
        for (int j : index_range(n)) c.at(i, j) = entry(i, j);
      }
      s.coeffs.push_back(c);
    }
    const unsigned target = order + 1;
    auto inv = series_inverse(s, target, dinv);
    auto right = series_product(s, inv, target);
    auto left = series_product(inv, s, target);
    ++out.instances;
    bool ok = right.order == target && left.order == target;
    for (unsigned r = 0; ok && r <= target; ++r) {
      OpMatrix<Q1Element> expect = r == 0 ? OpMatrix<Q1Element>::identity(n) : OpMatrix<Q1Element>(n);
      ok = right.coeffs[r] == expect && left.coeffs[r] == expect;
    }
    if (!ok) ++out.failures;
  }
  return out;
}

std::vector<PropertyOutcome> acceptance_properties() {
  return {trace_cyclicity(), supertranspose_antiautomorphism(), tensor_associativity(), rewrite_idempotence(),
          series_inverse_two_sided()};
}

}  // namespace queerkit::testing
