#include "queerkit/linalg.hpp"

#include "queerkit/errors.hpp"

namespace queerkit {

MultiPoly fraction_free_gauss_jordan(std::vector<std::vector<MultiPoly>>& aug, std::size_t m) {
  const std::size_t width = aug.empty() ? 0 : aug[0].size();
  MultiPoly prev(1);
  for (std::size_t k = 0; k < m; ++k) {
    // Smallest nonzero pivot keeps intermediate entries short.
    std::size_t piv = m;
    for (std::size_t r = k; r < m; ++r) {
      if (aug[r][k].is_zero()) continue;
      if (piv == m || aug[r][k].size() < aug[piv][k].size()) piv = r;
    }
    if (piv == m) throw InvalidInput("matrix is singular");
    if (piv != k) std::swap(aug[piv], aug[k]);
    const MultiPoly p = aug[k][k];
    for (std::size_t i = 0; i < m; ++i) {
      if (i == k) continue;
      const MultiPoly f = aug[i][k];
      for (std::size_t j = 0; j < width; ++j) {
        if (j == k) continue;
        MultiPoly v = p * aug[i][j];
        if (!f.is_zero() && !aug[k][j].is_zero()) v -= f * aug[k][j];
        aug[i][j] = prev.is_one() ? std::move(v) : v.divide_exact(prev);
      }
      aug[i][k] = MultiPoly();
    }
    prev = p;
  }
  return prev;
}

DenseMatrix invert_dense(const DenseMatrix& a) {
  const std::size_t m = a.size();
  DenseMatrix out(m, std::vector<RatFunc>(m));
  if (m == 0) return out;
  MultiPoly l(1);
  for (const auto& row : a) {
    if (row.size() != m) throw ShapeError("matrix is not square");
    for (const auto& e : row) {
      if (!e.is_zero() && !e.is_polynomial()) l = lcm(l, e.den());
    }
  }
  std::vector<std::vector<MultiPoly>> aug(m, std::vector<MultiPoly>(2 * m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const RatFunc& e = a[i][j];
      if (!e.is_zero()) aug[i][j] = l.is_one() ? e.num() : e.num() * l.divide_exact(e.den());
    }
    aug[i][m + i] = MultiPoly(1);
  }
  MultiPoly d = fraction_free_gauss_jordan(aug, m);
  // (l A)^{-1} = adj / d, so A^{-1} = l * adj / d.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!aug[i][m + j].is_zero()) out[i][j] = RatFunc::normalize(aug[i][m + j] * l, d);
    }
  }
  return out;
}

}  // namespace queerkit
