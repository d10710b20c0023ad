#include "queerkit/rmatrix.hpp"

#include <algorithm>
#include <mutex>

#include "queerkit/series.hpp"

namespace queerkit {

namespace {

using Pairs = std::vector<std::pair<int, int>>;

RatFunc q_pow(int e) { return RatFunc::var(Var::q).pow(e); }
RatFunc sign(int parity_bit) { return RatFunc(parity_bit ? -1 : 1); }

void require_rank(int n) {
  if (n < 1) throw InvalidInput("rank n must be at least 1");
}

}  // namespace

Tensor build_S(int n) {
  require_rank(n);
  const RatFunc eps = epsilon();
  Tensor s(n, 2);
  auto idx = index_range(n);
  for (int i : idx) {
    for (int j : idx) {
      int e = ((i == j ? 1 : 0) + (-i == j ? 1 : 0)) * (1 - 2 * parity(j));
      s.add_term(key::make({{i, i}, {j, j}}), q_pow(e));
    }
  }
  for (int i : idx) {
    for (int j : idx) {
      if (i <= j) continue;
      RatFunc c = eps * sign(parity(j));
      s.add_term(key::make({{i, j}, {j, i}}), c);
      s.add_term(key::make({{-i, -j}, {j, i}}), c);
    }
  }
  return s;
}

Tensor build_P(int n) {
  require_rank(n);
  Tensor p(n, 2);
  for (int i : index_range(n)) {
    for (int j : index_range(n)) p.add_term(key::make({{i, j}, {j, i}}), sign(parity(j)));
  }
  return p;
}

Tensor build_J(int n) {
  require_rank(n);
  Tensor j(n, 1);
  for (int i : index_range(n)) j.add_term(key::make({{i, -i}}), sign(parity(i)));
  return j;
}

Tensor build_D(int n, int power) {
  require_rank(n);
  Tensor d(n, 1);
  for (int i : index_range(n)) d.add_term(key::make({{i, i}}), q_pow(-2 * std::abs(i) * power));
  return d;
}

Tensor J_slot(int n, int k) { return embed_slots(build_J(n), {k}, 2); }

Tensor slots_21(const Tensor& x) { return swap_adjacent(x, 0); }

Tensor build_S_uv(int n, const RatFunc& a, const RatFunc& b) {
  const RatFunc eps = epsilon();
  Tensor P = build_P(n);
  Tensor PJJ = P * J_slot(n, 0) * J_slot(n, 1);
  return build_S(n) + P.scaled(eps / (b / a - RatFunc(1))) + PJJ.scaled(eps / (a * b - RatFunc(1)));
}

RatFunc spectral_clearing_factor(const RatFunc& a, const RatFunc& b) { return (b - a) * (a * b - RatFunc(1)); }

Tensor build_S_uv_cleared(int n, const RatFunc& a, const RatFunc& b) {
  const RatFunc eps = epsilon();
  Tensor P = build_P(n);
  Tensor PJJ = P * J_slot(n, 0) * J_slot(n, 1);
  return build_S(n).scaled(spectral_clearing_factor(a, b)) + P.scaled(eps * a * (a * b - RatFunc(1))) +
         PJJ.scaled(eps * (b - a));
}

RatFunc build_A(const RatFunc& u, const RatFunc& v) {
  const RatFunc e2 = epsilon() * epsilon();
  return RatFunc(1) - e2 * u * v / (u - v).pow(2) - e2 * u * v / (u * v - RatFunc(1)).pow(2);
}

Tensor substitute(const Tensor& x, const std::map<Var, RatFunc>& bindings) {
  Tensor out(x.n(), x.slots());
  for (const auto& [k, c] : x.terms()) out.add_term(k, c.substitute(bindings));
  return out;
}

Tensor series_coefficient_at_infinity(const Tensor& x, Var var, unsigned r) {
  Tensor out(x.n(), x.slots());
  for (const auto& [k, c] : x.terms()) out.add_term(k, series_expand_at_infinity(c, var, r)[r]);
  return out;
}

const std::vector<std::string>& operator_names() {
  static const std::vector<std::string> names = {"S", "S_uv", "S21", "S21_vu", "Scheck", "P",
                                                 "J", "D",    "T",   "c1",     "c2",     "A_uv"};
  return names;
}

NamedOperator named_operator(const std::string& name, int n) {
  require_rank(n);
  const RatFunc u = RatFunc::var(Var::u);
  const RatFunc v = RatFunc::var(Var::v);
  NamedOperator op{name, n, std::nullopt, std::nullopt};
  if (name == "S") {
    op.value = build_S(n);
  } else if (name == "S_uv") {
    op.value = build_S_uv(n, u, v);
  } else if (name == "S21") {
    op.value = slots_21(build_S(n));
  } else if (name == "S21_vu") {
    op.value = slots_21(build_S_uv(n, v, u));
  } else if (name == "Scheck" || name == "T") {
    op.value = build_P(n) * build_S(n);
  } else if (name == "P") {
    op.value = build_P(n);
  } else if (name == "J") {
    op.value = build_J(n);
  } else if (name == "D") {
    op.value = build_D(n);
  } else if (name == "c1") {
    op.value = J_slot(n, 0);
  } else if (name == "c2") {
    op.value = J_slot(n, 1);
  } else if (name == "A_uv") {
    op.scalar = build_A(u, v);
  } else {
    throw InvalidInput("unknown operator '" + name + "'");
  }
  return op;
}

// ---------------------------------------------------------------------------
// Constant suite

const std::vector<std::string>& constant_identity_names() {
  static const std::vector<std::string> names = {"cross.fin.t1", "cross.fin.t2", "hc.c1c1", "hc.c1c2", "hc.t2",
                                                 "hc.tc1",       "hc.tc2",       "js.1",    "js.2",    "spmin",
                                                 "ssto",         "ybe.const"};
  return names;
}

namespace {

// Combines several equations into one report; the first failure wins.
VerificationReport verify_all(const std::string& name, int n, const std::vector<std::pair<Tensor, Tensor>>& eqs) {
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    VerificationReport r = verify_identity(name, n, eqs[i].first, eqs[i].second);
    if (!r.passed()) {
      if (eqs.size() > 1) r.witness->location = "equation " + std::to_string(i + 1) + " " + r.witness->location;
      return r;
    }
  }
  VerificationReport r;
  r.identity = name;
  r.n = n;
  return r;
}

}  // namespace

std::vector<VerificationReport> identity_suite_constant(int n, const std::optional<Tensor>& s_override) {
  require_rank(n);
  const Tensor S = s_override ? *s_override : build_S(n);
  const Tensor P = build_P(n);
  const Tensor I2 = Tensor::identity(n, 2);
  const Tensor c1 = J_slot(n, 0);
  const Tensor c2 = J_slot(n, 1);
  const RatFunc eps = epsilon();
  std::vector<std::function<VerificationReport()>> checks;
  checks.emplace_back([=] {
    Tensor s12 = embed_slots(S, {0, 1}, 3);
    Tensor s13 = embed_slots(S, {0, 2}, 3);
    Tensor s23 = embed_slots(S, {1, 2}, 3);
    return verify_identity("ybe.const", n, s12 * s13 * s23, s23 * s13 * s12);
  });
  checks.emplace_back([=] {
    Tensor T = P * S;
    return verify_identity("hc.t2", n, T * T, T.scaled(eps) + I2);
  });
  checks.emplace_back([=] {
    Tensor T = P * S;
    return verify_identity("hc.tc1", n, T * c1, c2 * T);
  });
  checks.emplace_back([=] {
    Tensor T = P * S;
    return verify_identity("hc.tc2", n, T * c2, c1 * T - (c1 - c2).scaled(eps));
  });
  checks.emplace_back([=] { return verify_all("hc.c1c1", n, {{c1 * c1, -I2}, {c2 * c2, -I2}}); });
  checks.emplace_back([=] { return verify_identity("hc.c1c2", n, c1 * c2 + c2 * c1, Tensor(n, 2)); });
  checks.emplace_back([=] { return verify_identity("js.1", n, c1 * S, S * c1); });
  checks.emplace_back([=] {
    Tensor x = S - P.scaled(eps);
    return verify_identity("js.2", n, c2 * x, x * c2);
  });
  checks.emplace_back([=] { return verify_identity("ssto", n, S * slots_21(S), (S * P).scaled(eps) + I2); });
  checks.emplace_back([=] {
    Tensor pjj = P * c1 * c2;
    return verify_identity("spmin", n, (S - P.scaled(eps) - pjj.scaled(eps)) * (slots_21(S) + pjj.scaled(eps)), I2);
  });
  checks.emplace_back([=] {
    Tensor d1 = embed_slots(build_D(n), {0}, 2);
    Tensor lhs = supertranspose_slot(inverse(S), 0) * d1 * supertranspose_slot(S, 0);
    return verify_identity("cross.fin.t1", n, lhs, d1);
  });
  checks.emplace_back([=] {
    Tensor d2i = embed_slots(build_D(n, -1), {1}, 2);
    Tensor lhs = supertranspose_slot(inverse(S), 1) * d2i * supertranspose_slot(S, 1);
    return verify_identity("cross.fin.t2", n, lhs, d2i);
  });
  return run_checks(std::move(checks));
}

// ---------------------------------------------------------------------------
// Spectral suite

namespace {

const RatFunc& U() {
  static const RatFunc x = RatFunc::var(Var::u);
  return x;
}
const RatFunc& V() {
  static const RatFunc x = RatFunc::var(Var::v);
  return x;
}
const RatFunc& W() {
  static const RatFunc x = RatFunc::var(Var::z);
  return x;
}

// Both sides of the cleared spectral YBE in one of the two arrangements.
std::pair<Tensor, Tensor> ybe_sides(int n, bool standard) {
  auto S3 = [&](const RatFunc& a, const RatFunc& b, std::vector<int> sl) {
    return embed_slots(build_S_uv_cleared(n, a, b), sl, 3);
  };
  Tensor x, y, z;
  if (standard) {
    x = S3(U(), V(), {0, 1});
    y = S3(U(), W(), {0, 2});
    z = S3(V(), W(), {1, 2});
  } else {
    x = S3(V(), U(), {0, 1});
    y = S3(W(), U(), {0, 2});
    z = S3(W(), V(), {1, 2});
  }
  return {x * y * z, z * y * x};
}

}  // namespace

const YbeArrangement& spectral_ybe_arrangement() {
  static YbeArrangement arr;
  static std::once_flag once;
  std::call_once(once, [] {
    auto [l, r] = ybe_sides(1, true);
    if (l == r) {
      arr = {"S12(u,v) S13(u,w) S23(v,w) = S23(v,w) S13(u,w) S12(u,v)", true};
      return;
    }
    auto [l2, r2] = ybe_sides(1, false);
    if (l2 == r2) {
      arr = {"S12(v,u) S13(w,u) S23(w,v) = S23(w,v) S13(w,u) S12(v,u)", false};
      return;
    }
    arr = {"none verified at n=1; standard arrangement reported", true};
  });
  return arr;
}

const std::vector<std::string>& spectral_identity_names() {
  static const std::vector<std::string> names = {"aux.crofin", "aux.jjpt1",    "aux.pjjt1",    "aux.pjjtone",
                                                 "aux.pt1",    "aux.ptone",    "aux.stovu",    "cross.aff.t1",
                                                 "cross.aff.t2", "unitarity.A", "ybe.spectral"};
  return names;
}

namespace {

// Compares x(e) against `expected` for each listed basis tuple.
VerificationReport verify_action(const std::string& name, int n, const Tensor& x,
                                 const std::vector<std::pair<std::vector<int>, Tensor>>& cases) {
  VerificationReport r;
  r.identity = name;
  r.n = n;
  for (const auto& [basis, expected] : cases) {
    auto got = apply_to_vector(x, basis);
    std::map<std::vector<int>, RatFunc> diff;
    for (const auto& [w, c] : got) diff[w] += c;
    for (const auto& [k, c] : expected.terms()) {
      if (key::rows(k) != key::cols(k)) continue;
      std::vector<int> w(expected.slots());
      for (int s = 0; s < expected.slots(); ++s) w[s] = key::row(k, s);
      diff[w] -= c;
    }
    for (const auto& [w, c] : diff) {
      if (c.is_zero()) continue;
      r.status = Status::fail;
      std::string loc = "apply (";
      for (std::size_t s = 0; s < basis.size(); ++s) loc += (s ? "," : "") + std::to_string(basis[s]);
      loc += ") component (";
      for (std::size_t s = 0; s < w.size(); ++s) loc += (s ? "," : "") + std::to_string(w[s]);
      r.witness = Witness{loc + ")", c.to_string()};
      return r;
    }
  }
  return r;
}

// Sum over k of c * e_k (x) e_{sk}, encoded as diagonal keys.
Tensor vector_sum(int n, int s, const RatFunc& c) {
  Tensor v(n, 2);
  for (int k : index_range(n)) v.add_term(key::make({{k, k}, {s * k, s * k}}), c);
  return v;
}

}  // namespace

std::vector<VerificationReport> identity_suite_spectral(int n, const std::vector<std::string>& only) {
  require_rank(n);
  const RatFunc eps = epsilon();
  const RatFunc one(1);
  const Tensor I2 = Tensor::identity(n, 2);
  const Tensor P = build_P(n);
  const Tensor J1 = J_slot(n, 0);
  const Tensor J2 = J_slot(n, 1);
  std::vector<std::function<VerificationReport()>> checks;
  auto want = [&](const std::string& name) {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  };
  if (want("ybe.spectral")) {
    checks.emplace_back([=] {
      const YbeArrangement& arr = spectral_ybe_arrangement();
      auto [l, r] = ybe_sides(n, arr.standard);
      VerificationReport rep = verify_identity("ybe.spectral", n, l, r);
      rep.metadata["arrangement"] = arr.description;
      rep.metadata["w"] = "z";
      rep.metadata["cleared"] = "S(a,b) scaled by (b - a)(ab - 1)";
      return rep;
    });
  }
  if (want("cross.aff.t1")) {
    checks.emplace_back([=] {
      Tensor suv = build_S_uv_cleared(n, U(), V());
      Tensor s21vu = slots_21(build_S_uv_cleared(n, V(), U()));
      Tensor d1 = embed_slots(build_D(n), {0}, 2);
      Tensor d1i = embed_slots(build_D(n, -1), {0}, 2);
      Tensor lhs = supertranspose_slot(suv, 0) * d1i * supertranspose_slot(s21vu, 0) * d1;
      RatFunc f = spectral_clearing_factor(U(), V()) * spectral_clearing_factor(V(), U());
      VerificationReport rep = verify_identity("cross.aff.t1", n, lhs, I2.scaled(f));
      rep.metadata["cleared"] = "both sides scaled by (v - u)(uv - 1)(u - v)(vu - 1)";
      return rep;
    });
  }
  if (want("cross.aff.t2")) {
    checks.emplace_back([=] {
      Tensor suv = build_S_uv_cleared(n, U(), V());
      Tensor s21vu = slots_21(build_S_uv_cleared(n, V(), U()));
      Tensor d2 = embed_slots(build_D(n), {1}, 2);
      Tensor d2i = embed_slots(build_D(n, -1), {1}, 2);
      Tensor lhs = supertranspose_slot(suv, 1) * d2 * supertranspose_slot(s21vu, 1) * d2i;
      RatFunc f = spectral_clearing_factor(U(), V()) * spectral_clearing_factor(V(), U());
      VerificationReport rep = verify_identity("cross.aff.t2", n, lhs, I2.scaled(f));
      rep.metadata["cleared"] = "both sides scaled by (v - u)(uv - 1)(u - v)(vu - 1)";
      return rep;
    });
  }
  if (want("unitarity.A")) {
    checks.emplace_back([=] {
      // S(u,v)^{-1} = f(u,v) * cleared(u,v)^{-1}; cleared(u,v)^{-1} by elimination.
      Tensor inv = inverse(build_S_uv_cleared(n, U(), V()));
      Tensor s21vu = slots_21(build_S_uv_cleared(n, V(), U()));
      RatFunc f = spectral_clearing_factor(V(), U()) * spectral_clearing_factor(U(), V()) * build_A(U(), V());
      VerificationReport rep = verify_identity("unitarity.A", n, s21vu, inv.scaled(f));
      rep.metadata["inverse"] = "fraction-free Gauss-Jordan per block";
      return rep;
    });
  }
  if (want("aux.pt1")) {
    checks.emplace_back([=] {
      Tensor expected(n, 2);
      for (int i : index_range(n))
        for (int j : index_range(n)) expected.add_term(key::make({{j, i}, {j, i}}), sign(parity(i) & parity(j)));
      return verify_identity("aux.pt1", n, supertranspose_slot(P, 0), expected);
    });
  }
  if (want("aux.pjjt1")) {
    checks.emplace_back([=] {
      Tensor expected(n, 2);
      for (int i : index_range(n))
        for (int j : index_range(n))
          expected.add_term(key::make({{-j, -i}, {j, i}}), sign((parity(i) * parity(j) + parity(i) + parity(j)) & 1));
      return verify_identity("aux.pjjt1", n, supertranspose_slot(P * J1 * J2, 0), expected);
    });
  }
  if (want("aux.jjpt1")) {
    checks.emplace_back([=] {
      Tensor expected(n, 2);
      for (int i : index_range(n))
        for (int j : index_range(n)) expected.add_term(key::make({{j, i}, {-j, -i}}), sign(parity(i) & parity(j)));
      return verify_identity("aux.jjpt1", n, supertranspose_slot(J1 * J2 * P, 0), expected);
    });
  }
  if (want("aux.ptone")) {
    checks.emplace_back([=] {
      std::vector<std::pair<std::vector<int>, Tensor>> cases;
      for (int i : index_range(n)) cases.push_back({{i, i}, vector_sum(n, 1, sign(parity(i)))});
      return verify_action("aux.ptone", n, supertranspose_slot(P, 0), cases);
    });
  }
  if (want("aux.pjjtone")) {
    checks.emplace_back([=] {
      std::vector<std::pair<std::vector<int>, Tensor>> cases;
      for (int i : index_range(n)) cases.push_back({{i, -i}, vector_sum(n, -1, sign(parity(i) ^ 1))});
      return verify_action("aux.pjjtone", n, supertranspose_slot(P * J1 * J2, 0), cases);
    });
  }
  if (want("aux.crofin")) {
    checks.emplace_back([=] {
      Tensor S = build_S(n);
      Tensor d1 = embed_slots(build_D(n), {0}, 2);
      Tensor d1i = embed_slots(build_D(n, -1), {0}, 2);
      Tensor lhs = supertranspose_slot(S, 0) * d1i * supertranspose_slot(inverse(S), 0) * d1;
      return verify_identity("aux.crofin", n, lhs, I2);
    });
  }
  if (want("aux.stovu")) {
    checks.emplace_back([=] {
      Tensor S = build_S(n);
      Tensor lhs = supertranspose_slot(slots_21(build_S_uv(n, V(), U())), 0);
      RatFunc vu = U() / V();
      Tensor rhs = supertranspose_slot(inverse(S), 0) + supertranspose_slot(P, 0).scaled(eps * vu / (vu - one)) +
                   supertranspose_slot(J1 * J2 * P, 0).scaled(eps / (V() * U() - one));
      return verify_identity("aux.stovu", n, lhs, rhs);
    });
  }
  return run_checks(std::move(checks));
}

}  // namespace queerkit
