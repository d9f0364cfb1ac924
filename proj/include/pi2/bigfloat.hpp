#pragma once

#include <gmpxx.h>

#include "pi2/polynomial.hpp"
#include "pi2/rational.hpp"

namespace pi2 {

// Software floating point used by eval_numeric and root polishing. The
// mantissa size comes from PI2_PRECISION_BITS (default 64, clamped to
// [53, 8192]); it affects numeric evaluation only, never symbolic results.
using BigFloat = mpf_class;

int precision_bits();

BigFloat big(const Rational& q, int bits = 0);
BigFloat big(double x, int bits = 0);

// Cube root by Newton iteration (GMP has no native cbrt for mpf).
BigFloat cbrt_big(const BigFloat& a);

// Horner evaluation of a polynomial at a BigFloat point, exact coefficient
// conversion (no double round-trip).
BigFloat eval_poly_big(const Polynomial& p, const BigFloat& z0);

}  // namespace pi2
