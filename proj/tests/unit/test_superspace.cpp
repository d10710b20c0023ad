#include <random>

#include "doctest.h"
#include "queerkit/linalg.hpp"
#include "queerkit/tensor.hpp"
#include "support/properties.hpp"

using namespace queerkit;
using namespace queerkit::testing;

namespace {

using Pairs = std::vector<std::pair<int, int>>;

int sgn(bool neg) { return neg ? -1 : 1; }

Tensor perm(int n) {
  std::vector<std::pair<RatFunc, Pairs>> s;
  for (int i : index_range(n))
    for (int j : index_range(n)) s.push_back({RatFunc(sgn(parity(j))), {{i, j}, {j, i}}});
  return Tensor::build(n, 2, s);
}

Tensor jmat(int n) {
  std::vector<std::pair<RatFunc, Pairs>> s;
  for (int i : index_range(n)) s.push_back({RatFunc(sgn(parity(i))), {{i, -i}}});
  return Tensor::build(n, 1, s);
}

Tensor elem(int n, int a, int b, RatFunc c = 1) { return Tensor::build(n, 1, {{c, {{a, b}}}}); }

}  // namespace

TEST_CASE("build_from_symbolic") {
  CHECK(perm(1).size() == 4);
  CHECK(jmat(2).size() == 4);
  CHECK(jmat(3).size() == 6);
  CHECK(Tensor::build(2, 1, {}).is_zero());
  CHECK_THROWS_AS(Tensor::build(1, 1, {{RatFunc(1), {{0, 1}}}}), InvalidIndex);
  CHECK_THROWS_AS(Tensor::build(1, 1, {{RatFunc(1), {{2, 1}}}}), InvalidIndex);
  Tensor j = jmat(2);
  for (const auto& [k, c] : j.terms()) CHECK(key::parity(k, 1) == 1);
}

TEST_CASE("tensor_mul basics") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(jmat(n) * jmat(n) == -Tensor::identity(n, 1));
    CHECK(perm(n) * perm(n) == Tensor::identity(n, 2));
    CHECK(perm(n) * Tensor::identity(n, 2) == perm(n));
  }
  CHECK(elem(2, 1, -2) * elem(2, -2, 2) == elem(2, 1, 2));
  CHECK((elem(2, 1, -2) * elem(2, 2, 2)).is_zero());
  CHECK_THROWS_AS(perm(1) * perm(2), ShapeError);
}

TEST_CASE("supertranspose examples") {
  CHECK(supertranspose_slot(elem(1, 1, -1), 0) == -elem(1, -1, 1));
  for (int a : index_range(2))
    for (int b : index_range(2)) {
      Tensor e = elem(2, a, b);
      Tensor tt = supertranspose_slot(supertranspose_slot(e, 0), 0);
      CHECK(tt == e.scaled(RatFunc(sgn((parity(a) + parity(b)) & 1))));
    }
  for (int n = 1; n <= 2; ++n) {
    std::vector<std::pair<RatFunc, Pairs>> s;
    for (int i : index_range(n))
      for (int j : index_range(n)) s.push_back({RatFunc(sgn(parity(i) * parity(j))), {{j, i}, {j, i}}});
    CHECK(supertranspose_slot(perm(n), 0) == Tensor::build(n, 2, s));
  }
  CHECK_THROWS_AS(supertranspose_slot(perm(1), 2), ShapeError);
}

TEST_CASE("supertrace examples") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::pair<RatFunc, Pairs>> d;
    for (int i : index_range(n)) d.push_back({RatFunc::var(Var::q).pow(-2 * std::abs(i)), {{i, i}}});
    CHECK(supertrace(Tensor::build(n, 1, d)).is_zero());
    CHECK(supertrace(Tensor::identity(n, 1)).is_zero());
    CHECK(supertrace_slot(supertranspose_slot(perm(n), 0), 1) == Tensor::identity(n, 1));
  }
  CHECK(supertrace(elem(1, -1, -1)) == RatFunc(-1));
  CHECK_THROWS_AS(supertrace_slot(perm(1), 5), ShapeError);
}

TEST_CASE("apply_to_vector") {
  for (int x : index_range(2))
    for (int y : index_range(2)) {
      auto r = apply_to_vector(perm(2), {x, y});
      REQUIRE(r.size() == 1);
      CHECK(r[0].first == std::vector<int>{y, x});
      CHECK(r[0].second == RatFunc(sgn(parity(x) * parity(y))));
    }
  auto j = apply_to_vector(jmat(2), {1});
  REQUIRE(j.size() == 1);
  CHECK(j[0].first == std::vector<int>{-1});
  CHECK(j[0].second == RatFunc(-1));
}

TEST_CASE("embed_slots") {
  Tensor j1 = embed_slots(jmat(2), {0}, 2);
  std::vector<std::pair<RatFunc, Pairs>> s;
  for (int i : index_range(2))
    for (int k : index_range(2)) s.push_back({RatFunc(sgn(parity(i))), {{i, -i}, {k, k}}});
  CHECK(j1 == Tensor::build(2, 2, s));
  CHECK(embed_slots(Tensor::identity(2, 1), {1}, 3) == Tensor::identity(2, 3));
  CHECK_THROWS_AS(embed_slots(perm(1), {1, 0}, 2), ShapeError);
  CHECK_THROWS_AS(embed_slots(perm(1), {0, 0}, 2), ShapeError);
}

TEST_CASE("P S P equals the Koszul slot swap") {
  std::mt19937 rng(5);
  for (int it = 0; it < 20; ++it) {
    Tensor x = random_element(rng, 2, 2, 6);
    CHECK(perm(2) * x * perm(2) == swap_adjacent(x, 0));
  }
}

TEST_CASE("property: graded trace cyclicity") {
  auto r = trace_cyclicity();
  CHECK(r.instances >= 100);
  CHECK(r.failures == 0);
}

TEST_CASE("property: supertransposition is a graded anti-automorphism") {
  auto r = supertranspose_antiautomorphism();
  CHECK(r.instances >= 100);
  CHECK(r.failures == 0);
}

TEST_CASE("property: tensor_mul is associative") {
  auto r = tensor_associativity();
  CHECK(r.instances >= 100);
  CHECK(r.failures == 0);
}

TEST_CASE("property: action is compatible with the product") {
  std::mt19937 rng(404);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + it % 2;
    Tensor x = random_element(rng, n, 2, 6);
    Tensor y = random_element(rng, n, 2, 6);
    auto idx = index_range(n);
    std::vector<int> v = {idx[it % idx.size()], idx[(it / 2) % idx.size()]};
    std::map<std::vector<int>, RatFunc> two;
    for (const auto& [w, c] : apply_to_vector(y, v))
      for (const auto& [w2, c2] : apply_to_vector(x, w)) two[w2] += c * c2;
    std::map<std::vector<int>, RatFunc> one;
    for (const auto& [w, c] : apply_to_vector(x * y, v)) one[w] = c;
    for (auto it2 = two.begin(); it2 != two.end();) it2 = it2->second.is_zero() ? two.erase(it2) : std::next(it2);
    CHECK(one == two);
  }
}

TEST_CASE("fraction-free Gauss-Jordan agrees with field elimination") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int it = 0; it < 30; ++it) {
    std::size_t m = 1 + it % 4;
    DenseMatrix a(m, std::vector<RatFunc>(m));
    for (auto& row : a)
      for (auto& e : row) e = RatFunc(c(rng)) + RatFunc(c(rng)) * RatFunc::var(Var::u) + RatFunc(c(rng)) / RatFunc::var(Var::q);
    DenseMatrix inv;
    try {
      inv = invert_dense(a);
    } catch (const InvalidInput&) {
      continue;
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        RatFunc s;
        for (std::size_t k = 0; k < m; ++k) s += a[i][k] * inv[k][j];
        CHECK(s == RatFunc(i == j ? 1 : 0));
      }
  }
  DenseMatrix sing = {{RatFunc(1), RatFunc(2)}, {RatFunc(2), RatFunc(4)}};
  CHECK_THROWS_AS(invert_dense(sing), InvalidInput);
}

TEST_CASE("tensor inverse") {
  std::mt19937 rng(12);
  for (int it = 0; it < 10; ++it) {
    Tensor x = Tensor::identity(2, 2) + random_element(rng, 2, 2, 4).scaled(RatFunc::var(Var::u));
    Tensor xi = inverse(x);
    CHECK(x * xi == Tensor::identity(2, 2));
    CHECK(xi * x == Tensor::identity(2, 2));
  }
}

TEST_CASE("exchange format round-trips") {
  std::mt19937 rng(13);
  for (int it = 0; it < 10; ++it) {
    Tensor x = random_element(rng, 2, 1 + it % 3, 7);
    std::string text = to_exchange(x);
    Tensor y = parse_exchange(text);
    CHECK(y == x);
    CHECK(to_exchange(y) == text);
  }
  CHECK_THROWS_AS(parse_exchange("n=1 slots=1 ring=Q(q)\n"), ParseError);
  CHECK_THROWS_AS(parse_exchange("n=1 slots=1 ring=Q(q,u,v,z)\n(2) (1) 1\n"), InvalidIndex);
  CHECK_THROWS_AS(parse_exchange("n=1 slots=1 ring=Q(q,u,v,z)\n(1) (1) 1\n(-1) (1) 1\n"), ParseError);
}
