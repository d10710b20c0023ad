#pragma once

#include <vector>

#include "queerkit/ratfunc.hpp"

namespace queerkit {

using DenseMatrix = std::vector<std::vector<RatFunc>>;

// Fraction-free Gauss-Jordan on the augmented polynomial matrix [A | B]
// (m rows, A square). On return the left block is d*I and the right block is
// d*A^{-1}B for the returned d = +-det A. Throws InvalidInput when singular.
MultiPoly fraction_free_gauss_jordan(std::vector<std::vector<MultiPoly>>& aug, std::size_t m);

// Exact inverse over Q(q,u,v,z) after clearing denominators.
DenseMatrix invert_dense(const DenseMatrix& a);

}  // namespace queerkit
