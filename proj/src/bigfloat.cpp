#include "pi2/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace pi2 {

int precision_bits() {
  static const int bits = [] {
    const char* env = std::getenv("PI2_PRECISION_BITS");
    long v = 64;
    if (env && *env) {
      char* end = nullptr;
      long parsed = std::strtol(env, &end, 10);
      if (end != env && parsed > 0) v = parsed;
    }
    return static_cast<int>(std::clamp(v, 53L, 8192L));
  }();
  return bits;
}

BigFloat big(const Rational& q, int bits) {
  if (bits <= 0) bits = precision_bits();
  BigFloat f(0, bits);
  mpf_set_q(f.get_mpf_t(), q.get_mpq_t());
  return f;
}

BigFloat big(double x, int bits) {
  if (bits <= 0) bits = precision_bits();
  return BigFloat(x, bits);
}

BigFloat cbrt_big(const BigFloat& a) {
  if (a == 0) return a;
  int bits = static_cast<int>(a.get_prec());
  BigFloat x(0, bits);
  mpf_set_d(x.get_mpf_t(), std::cbrt(a.get_d()));
  for (int i = 0; i < 8; ++i) x = (2 * x + a / (x * x)) / 3;
  return x;
}

BigFloat eval_poly_big(const Polynomial& p, const BigFloat& z0) {
  int bits = static_cast<int>(z0.get_prec());
  BigFloat acc(0, bits);
  for (int i = p.degree(); i >= 0; --i) acc = acc * z0 + big(p.coeff(i), bits);
  return acc;
}

}  // namespace pi2
