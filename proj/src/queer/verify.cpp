#include "queerkit/queer.hpp"

namespace queerkit {

namespace {

template <class T>
struct AuxConstants {
  T S, P, J1, J2, S21, PJJ, SmP, SmPJJ, Scheck;
};

AuxConstants<Tensor> scalar_constants(int n) {
  AuxConstants<Tensor> c;
  c.S = build_S(n);
  c.P = build_P(n);
  c.J1 = J_slot(n, 0);
  c.J2 = J_slot(n, 1);
  c.S21 = slots_21(c.S);
  c.PJJ = c.P * c.J1 * c.J2;
  c.SmP = c.S - c.P.scaled(epsilon());
  c.SmPJJ = c.S - c.PJJ.scaled(epsilon());
  c.Scheck = c.P * c.S;
  return c;
}

template <class T, class F>
AuxConstants<T> map_constants(const AuxConstants<Tensor>& c, F f) {
  return {f(c.S), f(c.P), f(c.J1), f(c.J2), f(c.S21), f(c.PJJ), f(c.SmP), f(c.SmPJJ), f(c.Scheck)};
}

// Factors placed in the two auxiliary slots.
template <class T>
struct Factors {
  T L1, L2, Lb1, Lb2, M1, M2;
};

template <class T>
using Sides = std::pair<T, T>;

const std::vector<std::string>& exchange_names() {
  static const std::vector<std::string> names = {
      "exch.LbarL.S",   "exch.LLbar.SmP", "exch.LbarLbar.SmPJJ", "exch.LbarL.PJJ",
      "exch.LLbar.PJJ", "exch.LL.PJJ",    "exch.LbarLbar.PJJ"};
  return names;
}

template <class T>
Sides<T> exchange_sides(std::size_t idx, const Factors<T>& f, const AuxConstants<T>& c) {
  switch (idx) {
    case 0:
      return {f.Lb1 * f.L2 * c.S, c.S * f.L2 * f.Lb1};
    case 1:
      return {f.L1 * f.Lb2 * c.SmP, c.SmP * f.Lb2 * f.L1};
    case 2:
      return {f.Lb1 * f.Lb2 * c.SmPJJ, c.SmPJJ * f.Lb2 * f.Lb1};
    case 3:
      return {f.Lb1 * f.L2 * c.PJJ, c.PJJ * f.L2 * f.Lb1};
    case 4:
      return {f.L1 * f.Lb2 * c.PJJ, c.PJJ * f.Lb2 * f.L1};
    case 5:
      return {f.L1 * f.L2 * c.PJJ, c.PJJ * f.Lb2 * f.Lb1};
    default:
      return {f.Lb1 * f.Lb2 * c.PJJ, c.PJJ * f.L2 * f.L1};
  }
}

template <class T>
Sides<T> reflection_sides(const Factors<T>& f, const AuxConstants<T>& c) {
  T k = c.S21 + c.PJJ.scaled(epsilon());
  return {f.M1 * c.S * f.M2 * k, c.S * f.M2 * k * f.M1};
}

template <class T>
Sides<T> check_form_sides(const Factors<T>& f, const AuxConstants<T>& c) {
  T k = c.Scheck - (c.J1 * c.J2).scaled(epsilon());
  return {f.M2 * c.Scheck * f.M2 * k, c.Scheck * f.M2 * k * f.M2};
}

void require_q1(int n) {
  if (n != 1) throw PreconditionError("method q1 requires n = 1");
}

const RepAssignment& require_rep(int n) {
  const RepAssignment& rep = vector_rep(n, AlgebraMode::finite);
  if (!rep.verified) throw PreconditionError("no verified vector representation at n = " + std::to_string(n));
  return rep;
}

void require_method(Method m) {
  if (m == Method::exact) throw PreconditionError("method exact applies to operator identities only");
}

// Exact in the rank-1 normal form, coefficient by coefficient.
VerificationReport q1_report(const std::string& name, const TensorElement<NCPoly>& lhs,
                             const TensorElement<NCPoly>& rhs, const std::vector<Var>& params = {}) {
  VerificationReport r;
  r.identity = name;
  r.n = 1;
  r.method = "q1";
  r.status = Status::pass;
  auto comps = relation_components(lhs - rhs, params);
  r.metadata["free_algebra"] = comps.empty() ? "pass" : "fail";
  for (const auto& c : comps) {
    Q1Element e = q1_from_ncpoly(c.relation);
    if (e.is_zero()) continue;
    r.status = Status::fail;
    std::string loc = key::to_string(c.key, lhs.slots());
    if (!c.params.is_one()) loc += " " + c.params.to_string();
    r.witness = Witness{loc, e.to_string()};
    break;
  }
  return r;
}

// Free-algebra status of the same sides for a representation report.
void record_free_status(VerificationReport& r, const TensorElement<NCPoly>& lhs, const TensorElement<NCPoly>& rhs) {
  r.metadata["free_algebra"] = (lhs - rhs).is_zero() ? "pass" : "fail";
}

Factors<TensorElement<NCPoly>> nc_factors(const LbarM& b) {
  auto L = to_tensor(b.L);
  auto Lb = to_tensor(b.Lbar);
  auto M = to_tensor(b.M);
  return {embed_slots(L, {0}, 2),  embed_slots(L, {1}, 2), embed_slots(Lb, {0}, 2),
          embed_slots(Lb, {1}, 2), embed_slots(M, {0}, 2), embed_slots(M, {1}, 2)};
}

Factors<Tensor> rep_factors(const LbarM& b, const RepAssignment& rep) {
  Tensor L = represent(to_tensor(b.L), rep);
  Tensor Lb = represent(to_tensor(b.Lbar), rep);
  Tensor M = represent(to_tensor(b.M), rep);
  return {embed_slots(L, {0, 1}, 3),  embed_slots(L, {0, 2}, 3), embed_slots(Lb, {0, 1}, 3),
          embed_slots(Lb, {0, 2}, 3), embed_slots(M, {0, 1}, 3), embed_slots(M, {0, 2}, 3)};
}

AuxConstants<Tensor> rep_constants(int n) {
  return map_constants<Tensor>(scalar_constants(n), [](const Tensor& x) { return embed_slots(x, {1, 2}, 3); });
}

AuxConstants<TensorElement<NCPoly>> nc_constants(int n) {
  return map_constants<TensorElement<NCPoly>>(scalar_constants(n),
                                               [](const Tensor& x) { return lift<NCPoly>(x); });
}

}  // namespace

VerificationReport verify_evaluation(int n, Method method, bool corrupt) {
  require_method(method);
  return timed([&] {
    LbarM b = build_Lbar_M(n);
    if (corrupt) {
      for (int i : index_range(n)) {
        for (int j : index_range(n)) {
          if (matrix_parity(i, j)) b.Lbar.at(i, j) = -b.Lbar.at(i, j);
        }
      }
    }
    const RatFunc u = RatFunc::var(Var::u);
    const RatFunc v = RatFunc::var(Var::v);
    // x L(x) under ev: x L + Lbar.
    auto cleared = [&](const RatFunc& x) { return to_tensor(b.L).scaled(x) + to_tensor(b.Lbar); };
    Tensor st = build_S_uv_cleared(n, u, v);
    const std::string name = corrupt ? "ev.rtt.corrupted" : "ev.rtt";
    if (method == Method::q1) {
      require_q1(n);
      auto A1 = embed_slots(cleared(u), {0}, 2);
      auto A2 = embed_slots(cleared(v), {1}, 2);
      auto S = lift<NCPoly>(st);
      return q1_report(name, A1 * A2 * S, S * A2 * A1, {Var::u, Var::v});
    }
    const RepAssignment& rep = require_rep(n);
    Tensor A = represent(cleared(u), rep);
    Tensor A1 = embed_slots(A, {0, 1}, 3);
    Tensor A2 = embed_slots(substitute(A, {{Var::u, v}}), {0, 2}, 3);
    Tensor S = embed_slots(st, {1, 2}, 3);
    return verify_identity(name, n, A1 * A2 * S, S * A2 * A1, "rep");
  });
}

std::vector<VerificationReport> verify_ev_properties(int n, Method method, unsigned R) {
  require_method(method);
  std::vector<VerificationReport> out;
  out.push_back(timed([&] {
    VerificationReport r;
    r.identity = "ev.relations";
    r.n = n;
    r.method = method_name(method);
    r.status = Status::pass;
    r.metadata["R"] = std::to_string(R);
    const RepAssignment* rep = nullptr;
    if (method == Method::q1) {
      require_q1(n);
    } else {
      rep = &require_rep(n);
    }
    auto pres = presentation_loop(n, R);
    r.metadata["relations"] = std::to_string(pres.relations.size());
    for (EvSign sign : {EvSign::plus, EvSign::minus}) {
      for (const auto& rel : pres.relations) {
        NCPoly img = ev_image(n, rel, sign);
        bool zero = method == Method::q1 ? q1_from_ncpoly(img).is_zero() : rep_eval(img, *rep).is_zero();
        if (!zero) {
          r.status = Status::fail;
          r.witness = Witness{std::string(sign == EvSign::plus ? "ev " : "ev' ") + rel.to_string(), img.to_string()};
          return r;
        }
      }
    }
    return r;
  }));
  out.push_back(timed([&] {
    VerificationReport r;
    r.identity = "ev.embedding";
    r.n = n;
    r.method = "exact";
    r.status = Status::pass;
    for (int i : index_range(n)) {
      for (int j : index_range(n)) {
        if (i > j) continue;
        NCPoly x = NCPoly::letter(gen::finite(i, j));
        NCPoly back = ev_image(n, zero_mode_embedding(x), EvSign::plus);
        if (back != x) {
          r.status = Status::fail;
          r.witness = Witness{gen::to_string(gen::finite(i, j)), back.to_string()};
          return r;
        }
      }
    }
    return r;
  }));
  out.push_back(timed([&] {
    VerificationReport r;
    r.identity = "ev.twist";
    r.n = n;
    r.method = "exact";
    r.status = Status::pass;
    auto plus = ev_apply(n, EvSign::plus);
    auto minus = ev_apply(n, EvSign::minus);
    for (unsigned k = 0; k < plus.coeffs.size(); ++k) {
      OpMatrix<NCPoly> expect = k % 2 ? -plus.coeffs[k] : plus.coeffs[k];
      if (minus.coeffs[k] != expect) {
        r.status = Status::fail;
        r.witness = Witness{"u^-" + std::to_string(k), "coefficient differs"};
        return r;
      }
    }
    for (int i : index_range(n)) {
      for (int j : index_range(n)) {
        for (unsigned k = 0; k <= 3; ++k) {
          Letter g = gen::loop(i, j, k);
          NCPoly a = ev_letter(n, g, EvSign::minus);
          NCPoly b = ev_letter(n, g, EvSign::plus);
          if (a != (k % 2 ? -b : b)) {
            r.status = Status::fail;
            r.witness = Witness{gen::to_string(g), a.to_string()};
            return r;
          }
        }
      }
    }
    return r;
  }));
  return out;
}

std::vector<VerificationReport> verify_exchange_relations(int n, Method method) {
  require_method(method);
  if (method == Method::q1) require_q1(n);
  LbarM b = build_Lbar_M(n);
  auto ncf = nc_factors(b);
  auto ncc = nc_constants(n);
  std::vector<std::function<VerificationReport()>> jobs;
  for (std::size_t i = 0; i < exchange_names().size(); ++i) {
    jobs.push_back([&, i] {
      auto [lhs, rhs] = exchange_sides(i, ncf, ncc);
      if (method == Method::q1) return q1_report(exchange_names()[i], lhs, rhs);
      const RepAssignment& rep = require_rep(n);
      auto rf = rep_factors(b, rep);
      auto rc = rep_constants(n);
      auto [a, c] = exchange_sides(i, rf, rc);
      VerificationReport r = verify_identity(exchange_names()[i], n, a, c, "rep");
      record_free_status(r, lhs, rhs);
      return r;
    });
  }
  return run_checks(jobs);
}

std::vector<VerificationReport> verify_reflection(int n, Method method) {
  require_method(method);
  if (method == Method::q1) require_q1(n);
  LbarM b = build_Lbar_M(n);
  std::vector<VerificationReport> out;
  if (method == Method::q1) {
    auto f = nc_factors(b);
    auto c = nc_constants(n);
    auto Mt = to_tensor(b.M);
    auto J = lift<NCPoly>(build_J(n));
    out.push_back(timed([&] {
      return q1_report("refl.symmetry", Mt * J * Mt * J, -TensorElement<NCPoly>::identity(n, 1));
    }));
    auto [l1, r1] = reflection_sides(f, c);
    auto [l2, r2] = check_form_sides(f, c);
    out.push_back(timed([&] { return q1_report("refl.equation", l1, r1); }));
    out.push_back(timed([&] { return q1_report("refl.check-form", l2, r2); }));
    out.push_back(timed([&] {
      VerificationReport a = q1_report("refl.equivalence", c.P * l1 * c.P, l2);
      VerificationReport bb = q1_report("refl.equivalence", c.P * r1 * c.P, r2);
      return a.passed() ? bb : a;
    }));
    return out;
  }
  const RepAssignment& rep = require_rep(n);
  auto f = rep_factors(b, rep);
  auto c = rep_constants(n);
  Tensor M = represent(to_tensor(b.M), rep);
  Tensor J = embed_slots(build_J(n), {1}, 2);
  out.push_back(timed([&] {
    return verify_identity("refl.symmetry", n, M * J * M * J, -Tensor::identity(n, 2), "rep");
  }));
  auto [l1, r1] = reflection_sides(f, c);
  auto [l2, r2] = check_form_sides(f, c);
  out.push_back(timed([&] { return verify_identity("refl.equation", n, l1, r1, "rep"); }));
  out.push_back(timed([&] { return verify_identity("refl.check-form", n, l2, r2, "rep"); }));
  out.push_back(timed([&] {
    VerificationReport a = verify_identity("refl.equivalence", n, c.P * l1 * c.P, l2, "rep");
    VerificationReport bb = verify_identity("refl.equivalence", n, c.P * r1 * c.P, r2, "rep");
    return a.passed() ? bb : a;
  }));
  // Symbolic M against the operator inverse of the represented Lbar.
  out.push_back(timed([&] {
    Tensor L = represent(to_tensor(b.L), rep);
    Tensor Lb = represent(to_tensor(b.Lbar), rep);
    return verify_identity("refl.M-inverse-route", n, M, L * inverse(Lb), "rep");
  }));
  return out;
}

}  // namespace queerkit
