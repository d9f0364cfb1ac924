#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "pi2/rational_function.hpp"

namespace pi2 {

// Thrown when a computation would need series coefficients beyond the valid
// truncation order; carries the order that would have been required.
struct TruncationError : std::runtime_error {
  int required;
  TruncationError(const std::string& what, int required_order)
      : std::runtime_error(what), required(required_order) {}
};

// Truncated Laurent series in w with RationalFunction-in-z coefficients.
// Coefficients for exponents lowest()..trunc() are known; every arithmetic
// result carries the tightest valid order of its operands, so stale tail
// coefficients can never be read back.
class LaurentSeries {
 public:
  // Truncation order used for finite series that are known exactly
  // (polynomial principal parts, monomials, the zero series).
  static constexpr int kExact = 1 << 20;

  LaurentSeries() = default;                          // zero series, exact
  static LaurentSeries zero(int trunc = kExact);
  static LaurentSeries constant(const RationalFunction& c, int trunc = kExact);
  static LaurentSeries monomial(int exp, const RationalFunction& c, int trunc = kExact);
  // Coefficients for exponents lo, lo+1, ... ; valid through `trunc`.
  LaurentSeries(int lo, std::vector<RationalFunction> coeffs, int trunc);

  bool is_zero() const { return c_.empty(); }
  int lowest() const;                                 // throws on zero series
  int trunc() const { return trunc_; }
  // Coefficient of w^m; exact zero below the support, throws beyond trunc().
  const RationalFunction& coeff(int m) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries operator*(const RationalFunction& s) const;
  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  bool operator==(const LaurentSeries& o) const;

  // Multiplies by w^k.
  LaurentSeries shifted(int k) const;
  // Restricts validity (and storage) to exponents <= T.
  LaurentSeries truncated(int T) const;

  // Series inverse; requires a nonzero leading coefficient. For an
  // exactly-known non-monomial series the result is infinite, so the target
  // order must be given via reciprocal_to.
  LaurentSeries reciprocal() const;
  LaurentSeries reciprocal_to(int T) const;
  // Integer power (n >= 1 uses repeated multiplication; n <= -1 inverts).
  LaurentSeries pow(int n) const;

  // Exponents < 0 (exact finite series) and >= 0 (keeps this->trunc()).
  LaurentSeries principal_part() const;
  LaurentSeries analytic_part() const;

  // Numeric value of the truncated series at (z0, w0): Horner in w of the
  // coefficient values at z0. Throws PoleError if a coefficient denominator
  // vanishes at z0.
  template <typename F>
  F eval_fp(const F& z0, const F& w0) const {
    F acc = F(0);
    for (int m = lo_ + static_cast<int>(c_.size()) - 1; m >= lo_; --m)
      acc = acc * w0 + c_[m - lo_].eval_fp(z0);
    for (int m = 0; m < lo_; ++m) acc *= w0;
    for (int m = 0; m > lo_; --m) acc /= w0;
    return acc;
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentSeries& s);

 private:
  void normalize();
  int lo_ = 0;
  int trunc_ = kExact;
  std::vector<RationalFunction> c_;   // exponents lo_ .. lo_+size-1
};

// 2x2 matrix of Laurent series sharing one truncation order.
class MatrixLaurentSeries {
 public:
  MatrixLaurentSeries() = default;
  MatrixLaurentSeries(LaurentSeries e11, LaurentSeries e12, LaurentSeries e21,
                      LaurentSeries e22);

  const LaurentSeries& at(int i, int j) const { return e_[i * 2 + j]; }
  int trunc() const { return trunc_; }
  bool is_zero() const;
  // Lowest exponent with a nonzero entry; kExact when the matrix is zero.
  int lowest() const;
  std::array<std::array<RationalFunction, 2>, 2> coeff(int m) const;

  friend MatrixLaurentSeries operator+(const MatrixLaurentSeries& a,
                                       const MatrixLaurentSeries& b);
  friend MatrixLaurentSeries operator*(const MatrixLaurentSeries& a,
                                       const MatrixLaurentSeries& b);
  MatrixLaurentSeries operator-() const;
  MatrixLaurentSeries operator*(const RationalFunction& s) const;

  MatrixLaurentSeries principal_part() const;
  MatrixLaurentSeries analytic_part() const;

  bool is_diagonal() const { return at(0, 1).is_zero() && at(1, 0).is_zero(); }
  bool is_anti_diagonal() const { return at(0, 0).is_zero() && at(1, 1).is_zero(); }

 private:
  void sync_trunc();
  std::array<LaurentSeries, 4> e_{};
  int trunc_ = LaurentSeries::kExact;
};

}  // namespace pi2
