#include "doctest.h"
#include "queerkit/rmatrix.hpp"

using namespace queerkit;

namespace {

RatFunc rf(const char* s) { return RatFunc::parse(s); }
const RatFunc kU = RatFunc::var(Var::u);
const RatFunc kV = RatFunc::var(Var::v);

void check_all_pass(const std::vector<VerificationReport>& reps) {
  for (const auto& r : reps) {
    INFO(r.identity << " n=" << r.n << " " << (r.witness ? r.witness->location + " " + r.witness->value : ""));
    CHECK(r.passed());
  }
}

}  // namespace

TEST_CASE("build_S at n = 1 matches the hand expansion") {
  RatFunc eps = epsilon();
  Tensor expected = Tensor::build(1, 2,
                                  {{rf("q"), {{1, 1}, {1, 1}}},
                                   {rf("1/q"), {{-1, -1}, {-1, -1}}},
                                   {rf("1/q"), {{1, 1}, {-1, -1}}},
                                   {rf("q"), {{-1, -1}, {1, 1}}},
                                   {-eps, {{1, -1}, {-1, 1}}},
                                   {-eps, {{-1, 1}, {-1, 1}}}});
  CHECK(build_S(1) == expected);
  CHECK(build_S(1).size() == 6);
  for (int n = 1; n <= 3; ++n) {
    Tensor S = build_S(n);
    for (int i : index_range(n)) {
      const RatFunc* c = S.coefficient(key::make({{i, i}, {i, i}}));
      REQUIRE(c != nullptr);
      CHECK(*c == (i > 0 ? rf("q") : rf("1/q")));
    }
  }
  CHECK_THROWS_AS(build_S(0), InvalidInput);
}

TEST_CASE("build_S_uv degenerations") {
  for (int n = 1; n <= 2; ++n) {
    Tensor S = build_S(n);
    Tensor P = build_P(n);
    Tensor Suv = build_S_uv(n, kU, kV);
    Tensor PJJ = P * J_slot(n, 0) * J_slot(n, 1);
    Tensor expected = S - P.scaled(epsilon());
    // At v = 0 the PJJ summand tends to -eps PJJ, not zero.
    CHECK(substitute(Suv, {{Var::v, RatFunc()}}) == expected - PJJ.scaled(epsilon()));
    CHECK(series_coefficient_at_infinity(Suv, Var::u, 0) == expected);
    Tensor diff = Suv - build_S_uv(n, kV, kU);
    // diff = a P + b PJJ with scalar a, b.
    const auto& [k0, c0] = *P.terms().begin();
    RatFunc a = *diff.coefficient(k0) / c0;
    Tensor rest = diff - P.scaled(a);
    const auto& [k1, c1] = *PJJ.terms().begin();
    RatFunc b = rest.coefficient(k1) ? *rest.coefficient(k1) / c1 : RatFunc();
    CHECK(rest == PJJ.scaled(b));
    CHECK(build_S_uv_cleared(n, kU, kV) == Suv.scaled(spectral_clearing_factor(kU, kV)));
  }
}

TEST_CASE("P, J, D") {
  Tensor D = build_D(2);
  std::vector<RatFunc> diag;
  for (int i : index_range(2)) diag.push_back(*D.coefficient(key::make({{i, i}})));
  CHECK(diag == std::vector<RatFunc>{rf("q^-4"), rf("q^-2"), rf("q^-2"), rf("q^-4")});
  CHECK(supertrace(D).is_zero());
  Tensor J = build_J(2);
  for (int j = 1; j <= 2; ++j) {
    auto a = apply_to_vector(J, {j});
    REQUIRE(a.size() == 1);
    CHECK(a[0].first == std::vector<int>{-j});
    CHECK(a[0].second == RatFunc(-1));
    auto b = apply_to_vector(J, {-j});
    REQUIRE(b.size() == 1);
    CHECK(b[0].first == std::vector<int>{j});
    CHECK(b[0].second == RatFunc(1));
  }
  CHECK(J * J == -Tensor::identity(2, 1));
}

TEST_CASE("verify_identity") {
  Tensor S = build_S(2);
  CHECK(verify_identity("same", 2, S, S).passed());
  Tensor bad = S;
  bad.add_term(key::make({{1, 1}, {1, 1}}), rf("q^2 - q"));
  VerificationReport r = verify_identity("defect", 2, bad, S);
  CHECK(r.status == Status::fail);
  REQUIRE(r.witness);
  CHECK(r.witness->location == "(1,1) (1,1)");
  CHECK(r.witness->value == "q^2 - q");
  Tensor I2 = Tensor::identity(2, 2);
  CHECK(verify_identity("ssto", 2, S * slots_21(S), (S * build_P(2)).scaled(epsilon()) + I2).passed());
}

TEST_CASE("S inverse closed form and transposed actions") {
  for (int n = 1; n <= 3; ++n) {
    Tensor S = build_S(n);
    Tensor Sinv = inverse(S);
    CHECK(Sinv == slots_21(S) - build_P(n).scaled(epsilon()));
    Tensor St = supertranspose_slot(S, 0);
    Tensor Sit = supertranspose_slot(Sinv, 0);
    RatFunc eps = epsilon();
    for (int j = 1; j <= n; ++j) {
      std::map<std::vector<int>, RatFunc> expected;
      expected[{j, j}] = rf("q");
      for (int i : index_range(n))
        if (i < j) expected[{i, i}] += eps;
      std::map<std::vector<int>, RatFunc> got;
      for (const auto& [w, c] : apply_to_vector(St, {j, j})) got[w] = c;
      CHECK(got == expected);

      std::map<std::vector<int>, RatFunc> expected2;
      expected2[{j, -j}] = rf("1/q");
      for (int i : index_range(n))
        if (i > j) expected2[{i, -i}] -= eps;
      std::map<std::vector<int>, RatFunc> got2;
      for (const auto& [w, c] : apply_to_vector(St, {j, -j})) got2[w] = c;
      CHECK(got2 == expected2);

      // (S^{-1})^{t1}(e_j (x) e_j) = q^{-1} e_j (x) e_j - eps sum_{k<j} e_k (x) e_k.
      std::map<std::vector<int>, RatFunc> expected3;
      expected3[{j, j}] = rf("1/q");
      for (int k : index_range(n))
        if (k < j) expected3[{k, k}] -= eps;
      std::map<std::vector<int>, RatFunc> got3;
      for (const auto& [w, c] : apply_to_vector(Sit, {j, j})) got3[w] = c;
      CHECK(got3 == expected3);
    }
  }
}

TEST_CASE("named operators") {
  for (const auto& name : operator_names()) {
    NamedOperator op = named_operator(name, 1);
    CHECK((op.value.has_value() || op.scalar.has_value()));
  }
  CHECK(named_operator("T", 2).value == named_operator("Scheck", 2).value);
  CHECK_THROWS_AS(named_operator("X", 1), InvalidInput);
  CHECK_THROWS_AS(named_operator("S", 0), InvalidInput);
}

TEST_CASE("constant identity suite, n = 1, 2") {
  for (int n = 1; n <= 2; ++n) {
    auto reps = identity_suite_constant(n);
    CHECK(reps.size() == constant_identity_names().size());
    for (std::size_t i = 0; i < reps.size(); ++i) CHECK(reps[i].identity == constant_identity_names()[i]);
    check_all_pass(reps);
  }
}

TEST_CASE("constant suite flags a corrupted S") {
  Tensor bad = build_S(2);
  bad.add_term(key::make({{2, 1}, {1, 2}}), RatFunc(1));
  auto reps = identity_suite_constant(2, bad);
  auto it = std::find_if(reps.begin(), reps.end(), [](const auto& r) { return r.identity == "ybe.const"; });
  REQUIRE(it != reps.end());
  CHECK(it->status == Status::fail);
  CHECK(it->witness.has_value());
}

TEST_CASE("spectral identity suite, n = 1") {
  auto reps = identity_suite_spectral(1);
  CHECK(reps.size() == spectral_identity_names().size());
  check_all_pass(reps);
  CHECK(spectral_ybe_arrangement().standard);
}
