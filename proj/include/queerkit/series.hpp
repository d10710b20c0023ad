#pragma once

#include <vector>

#include "queerkit/ratfunc.hpp"

namespace queerkit {

// Coefficients c_0..c_order of f = sum_r c_r x^-r + O(x^-order-1) at x = oo.
// Throws InvalidInput when f has a pole at infinity.
std::vector<RatFunc> series_expand_at_infinity(const RatFunc& f, Var x, unsigned order);

// Truncated Cauchy product of two coefficient lists.
std::vector<RatFunc> series_mul(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b, unsigned order);

}  // namespace queerkit
