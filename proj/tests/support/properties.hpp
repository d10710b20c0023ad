#pragma once

#include <random>
#include <string>
#include <vector>

#include "queerkit/ncalg.hpp"
#include "queerkit/tensor.hpp"

namespace queerkit::testing {

struct PropertyOutcome {
  std::string name;
  unsigned seed = 0;
  unsigned instances = 0;
  unsigned failures = 0;

  bool passed(unsigned min_instances = 100) const { return failures == 0 && instances >= min_instances; }
};

// Random sparse generators with fixed-seed engines.
RatFunc random_coeff(std::mt19937& rng);
Tensor random_homogeneous(std::mt19937& rng, int n, int parity);
Tensor random_element(std::mt19937& rng, int n, int slots, int terms);
NCPoly random_rank1(std::mt19937& rng, int terms, int max_len);

// RTT component relations plus diagonal relations at n = 1.
std::vector<NCPoly> rank1_rtt();

PropertyOutcome trace_cyclicity(unsigned seed = 101, unsigned count = 120);
PropertyOutcome supertranspose_antiautomorphism(unsigned seed = 202, unsigned count = 120);
PropertyOutcome tensor_associativity(unsigned seed = 303, unsigned count = 120);
PropertyOutcome rewrite_idempotence(unsigned seed = 606, unsigned count = 120);
PropertyOutcome series_inverse_two_sided(unsigned seed = 4242, unsigned count = 100);

std::vector<PropertyOutcome> acceptance_properties();

}  // namespace queerkit::testing
