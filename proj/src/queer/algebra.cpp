#include <set>

#include "queerkit/queer.hpp"

namespace queerkit {

std::string method_name(Method m) {
  switch (m) {
    case Method::q1:
      return "q1";
    case Method::rep:
      return "rep";
    case Method::exact:
      return "exact";
  }
  return "exact";
}

Method parse_method(const std::string& s) {
  if (s == "q1") return Method::q1;
  if (s == "rep") return Method::rep;
  if (s == "exact") return Method::exact;
  throw InvalidInput("unknown method '" + s + "'");
}

OpMatrix<NCPoly> generator_matrix(int n) {
  OpMatrix<NCPoly> m(n);
  for (int i : index_range(n)) {
    for (int j : index_range(n)) {
      if (i <= j) m.at(i, j) = NCPoly::letter(gen::finite(i, j));
    }
  }
  return m;
}

OpMatrix<NCPoly> loop_generator_matrix(int n, unsigned r) {
  OpMatrix<NCPoly> m(n);
  for (int i : index_range(n)) {
    for (int j : index_range(n)) m.at(i, j) = NCPoly::letter(gen::loop(i, j, r));
  }
  return m;
}

AlgebraPresentation presentation_finite(int n) {
  auto L = to_tensor(generator_matrix(n));
  auto L1 = embed_slots(L, {0}, 2);
  auto L2 = embed_slots(L, {1}, 2);
  auto S = lift<NCPoly>(build_S(n));
  auto rels = relation_extract(L1 * L2 * S, S * L2 * L1);
  for (auto& d : diagonal_relations(n)) rels.push_back(std::move(d));
  return {n, AlgebraMode::finite, 0, normalize_relations(std::move(rels))};
}

AlgebraPresentation presentation_loop(int n, unsigned R) {
  const RatFunc u = RatFunc::var(Var::u);
  const RatFunc v = RatFunc::var(Var::v);
  // x^R L(x), polynomial in x.
  auto cleared = [&](const RatFunc& x) {
    TensorElement<NCPoly> acc(n, 1);
    for (unsigned r = 0; r <= R; ++r) acc += to_tensor(loop_generator_matrix(n, r)).scaled(x.pow(static_cast<int>(R - r)));
    return acc;
  };
  auto L1 = embed_slots(cleared(u), {0}, 2);
  auto L2 = embed_slots(cleared(v), {1}, 2);
  Tensor st = build_S_uv_cleared(n, u, v);
  std::set<std::pair<int, int>> support;
  for (const auto& [k, c] : st.terms()) {
    for (const auto& [m, a] : c.num().terms()) {
      support.emplace(static_cast<int>(m.exponent(Var::u)), static_cast<int>(m.exponent(Var::v)));
    }
  }
  const int r = static_cast<int>(R);
  // The u^e v^f coefficient is complete when no contribution needs a mode
  // above R.
  auto keep = [&](const Monomial& m) {
    int e = static_cast<int>(m.exponent(Var::u)) - r;
    int f = static_cast<int>(m.exponent(Var::v)) - r;
    for (auto [d, c] : support) {
      if (d >= e && c >= f && (d - e > r || c - f > r)) return false;
    }
    return true;
  };
  auto S = lift<NCPoly>(st);
  auto rels = relation_extract(L1 * L2 * S, S * L2 * L1, {Var::u, Var::v}, keep);
  for (int i : index_range(n)) {
    for (int j : index_range(n)) {
      if (i > j) rels.push_back(NCPoly::letter(gen::loop(i, j, 0)));
    }
  }
  for (int i = 1; i <= n; ++i) {
    Letter a = gen::loop(i, i, 0);
    Letter b = gen::loop(-i, -i, 0);
    rels.push_back(NCPoly::word({a, b}) - NCPoly(1));
    rels.push_back(NCPoly::word({b, a}) - NCPoly(1));
  }
  return {n, AlgebraMode::loop, R, normalize_relations(std::move(rels))};
}

LbarM build_Lbar_M(int n) {
  LbarM out;
  out.L = generator_matrix(n);
  auto J = lift<NCPoly>(build_J(n));
  out.Lbar = from_tensor(J * to_tensor(out.L) * J);
  std::map<int, NCPoly> dinv;
  for (int i : index_range(n)) dinv[i] = -NCPoly::letter(gen::finite(i, i));
  out.Lbar_inv = triangular_inverse(out.Lbar, TriangularShape::lower, dinv);
  out.M = out.L * out.Lbar_inv;
  return out;
}

OpSeries<NCPoly> ev_apply(int n, EvSign sign) {
  LbarM b = build_Lbar_M(n);
  OpSeries<NCPoly> s;
  s.n = n;
  s.order = 1;
  s.exact = true;
  s.coeffs = {b.L, sign == EvSign::plus ? b.Lbar : -b.Lbar};
  return s;
}

NCPoly ev_letter(int n, Letter g, EvSign sign) {
  if (!gen::is_loop(g)) throw InvalidInput("ev is defined on loop generators");
  int i = gen::row(g);
  int j = gen::col(g);
  SuperIndex::make(i, n);
  SuperIndex::make(j, n);
  unsigned r = gen::degree(g);
  if (r == 0) return i <= j ? NCPoly::letter(gen::finite(i, j)) : NCPoly();
  if (r >= 2) return NCPoly();
  static thread_local std::map<int, OpMatrix<NCPoly>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_Lbar_M(n).Lbar).first;
  const NCPoly& e = it->second.at(i, j);
  return sign == EvSign::plus ? e : -e;
}

NCPoly ev_image(int n, const NCPoly& x, EvSign sign) {
  return x.substitute([&](Letter g) { return ev_letter(n, g, sign); });
}

NCPoly zero_mode_embedding(const NCPoly& x) {
  return x.substitute([](Letter g) {
    if (gen::is_loop(g)) throw InvalidInput("expected a finite generator");
    return NCPoly::letter(gen::loop(gen::row(g), gen::col(g), 0));
  });
}

}  // namespace queerkit
