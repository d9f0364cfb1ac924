#pragma once

#include <gmpxx.h>

#include <string>

namespace pi2 {

// Exact arbitrary-precision rational, canonical form (reduced, positive
// denominator) maintained by GMP.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace pi2
