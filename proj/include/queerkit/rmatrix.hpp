#pragma once

#include <optional>
#include <string>
#include <vector>

#include "queerkit/report.hpp"
#include "queerkit/tensor.hpp"

namespace queerkit {

// Constant R-matrix S on two slots.
Tensor build_S(int n);
// P = sum E_ij (x) E_ji (-1)^j.
Tensor build_P(int n);
// J = sum E_{i,-i} (-1)^i, one slot.
Tensor build_J(int n);
// D^power with D = sum q^{-2|i|} E_ii, one slot.
Tensor build_D(int n, int power = 1);

// S(a,b) = S + eps P/(a^{-1}b - 1) + eps P J1 J2/(ab - 1).
Tensor build_S_uv(int n, const RatFunc& a, const RatFunc& b);
// (b - a)(ab - 1) S(a,b); polynomial in a, b.
Tensor build_S_uv_cleared(int n, const RatFunc& a, const RatFunc& b);
RatFunc spectral_clearing_factor(const RatFunc& a, const RatFunc& b);
// A(u,v) = 1 - eps^2 uv/(u - v)^2 - eps^2 uv/(uv - 1)^2.
RatFunc build_A(const RatFunc& u, const RatFunc& v);

// X_21 for a two-slot X.
Tensor slots_21(const Tensor& x);
// J placed in slot k of a two-slot tensor.
Tensor J_slot(int n, int k);

// Coefficientwise substitution.
Tensor substitute(const Tensor& x, const std::map<Var, RatFunc>& bindings);
// Coefficientwise coefficient of x^-r in the expansion at x = oo.
Tensor series_coefficient_at_infinity(const Tensor& x, Var var, unsigned r);

struct NamedOperator {
  std::string name;
  int n = 1;
  std::optional<Tensor> value;
  std::optional<RatFunc> scalar;  // A_uv only
};

const std::vector<std::string>& operator_names();
// Throws InvalidInput for unknown names or n < 1.
NamedOperator named_operator(const std::string& name, int n);

// Exact comparison; on failure the witness is the first differing entry.
template <class Ring>
VerificationReport verify_identity(const std::string& name, int n, const TensorElement<Ring>& lhs,
                                   const TensorElement<Ring>& rhs, const std::string& method = "exact") {
  lhs.check_shape(rhs);
  VerificationReport r;
  r.identity = name;
  r.n = n;
  r.method = method;
  TensorElement<Ring> diff = lhs - rhs;
  if (diff.is_zero()) {
    r.status = Status::pass;
  } else {
    r.status = Status::fail;
    const auto& [k, c] = *diff.terms().begin();
    r.witness = Witness{key::to_string(k, diff.slots()), ring_traits<Ring>::to_string(c)};
  }
  return r;
}

const std::vector<std::string>& constant_identity_names();
const std::vector<std::string>& spectral_identity_names();

// One report per constant-suite identity, sorted by name. A replacement for
// S may be supplied for defect injection.
std::vector<VerificationReport> identity_suite_constant(int n, const std::optional<Tensor>& s_override = std::nullopt);
// Spectral identities; when `only` is nonempty just those names run.
std::vector<VerificationReport> identity_suite_spectral(int n, const std::vector<std::string>& only = {});

// Spectral YBE arrangement detected at n = 1 and reused for every n.
struct YbeArrangement {
  std::string description;
  bool standard = true;
};
const YbeArrangement& spectral_ybe_arrangement();

}  // namespace queerkit
