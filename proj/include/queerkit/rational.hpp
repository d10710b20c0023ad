#pragma once

#include <gmpxx.h>

#include <string>

namespace queerkit {

// mpq_class keeps numerator and denominator coprime with a positive
// denominator after every operation.
using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace queerkit
