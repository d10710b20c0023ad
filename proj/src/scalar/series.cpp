#include "queerkit/series.hpp"

#include "queerkit/errors.hpp"

namespace queerkit {

std::vector<RatFunc> series_expand_at_infinity(const RatFunc& f, Var x, unsigned order) {
  std::vector<RatFunc> out(order + 1);
  if (f.is_zero()) return out;
  auto nc = f.num().coefficients_in(x);
  auto dc = f.den().coefficients_in(x);
  const unsigned dn = static_cast<unsigned>(nc.size() - 1);
  const unsigned dd = static_cast<unsigned>(dc.size() - 1);
  if (dn > dd) throw InvalidInput(std::string("pole at ") + var_name(x) + " = infinity");
  // With t = 1/x: f = t^(dd - dn) * N~(t) / D~(t), N~_k = nc[dn - k], D~_k = dc[dd - k].
  const unsigned shift = dd - dn;
  if (shift > order) return out;
  const unsigned m = order - shift;
  RatFunc d0_inv = RatFunc(dc[dd]).inv();
  std::vector<RatFunc> g(m + 1);
  for (unsigned r = 0; r <= m; ++r) {
    RatFunc acc = r <= dn ? RatFunc(nc[dn - r]) : RatFunc();
    for (unsigned k = 1; k <= r && k <= dd; ++k) {
      if (dc[dd - k].is_zero() || g[r - k].is_zero()) continue;
      acc -= RatFunc(dc[dd - k]) * g[r - k];
    }
    g[r] = acc * d0_inv;
  }
  for (unsigned r = 0; r <= m; ++r) out[r + shift] = std::move(g[r]);
  return out;
}

std::vector<RatFunc> series_mul(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b, unsigned order) {
  std::vector<RatFunc> out(order + 1);
  for (unsigned i = 0; i < a.size() && i <= order; ++i) {
    if (a[i].is_zero()) continue;
    for (unsigned j = 0; j < b.size() && i + j <= order; ++j) {
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace queerkit
