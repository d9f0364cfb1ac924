#pragma once

#include <vector>

#include "pi2/cbrt6.hpp"
#include "pi2/expansion.hpp"

namespace pi2 {

// One-sided formal asymptotic series
//     f(x) = sum_{j,m} c_{j,m} t^m y^{-j/3},   y = |x|,
// with exact Q(6^{1/3}) coefficients. The side fixes the cube-root
// convention signs; builders below produce the series for the plus side
// (x -> +inf) or minus side (x -> -inf) accordingly. Like the Laurent layer,
// every series carries the largest j it is valid through.
class XtSeries {
 public:
  XtSeries() = default;
  explicit XtSeries(int jcap) : jcap_(jcap) {}

  int jmin() const { return jmin_; }
  int jcap() const { return jcap_; }
  int tdeg() const;
  bool is_zero() const;

  Cbrt6 coeff(int j, int m) const;          // throws beyond jcap
  void add_term(int j, int m, const Cbrt6& c);

  XtSeries operator-() const;
  friend XtSeries operator+(const XtSeries& a, const XtSeries& b);
  friend XtSeries operator-(const XtSeries& a, const XtSeries& b);
  friend XtSeries operator*(const XtSeries& a, const XtSeries& b);
  XtSeries scaled(const Cbrt6& s) const;
  XtSeries mul_t() const;                   // multiply by t
  XtSeries truncated(int jcap) const;

  // x-operations respecting the side (d/dx = side * d/dy).
  enum class Side { plus, minus };
  XtSeries d_dx(Side side) const;
  // Antiderivative in x; requires a vanishing y^{-1} lattice coefficient
  // (no log terms). The integration constant is the caller's business.
  XtSeries antiderivative_x(Side side) const;
  XtSeries mul_x(Side side) const;          // multiply by x = side * y

  long double eval(long double y, long double t) const;
  // Integral over the tail {x : |x| > L} on this one side; valid only when
  // every coefficient with j <= 3 vanishes (checked).
  long double tail_integral(long double L, long double t) const;
  // Largest j <= jcap with a nonzero coefficient such that all j' < j are
  // zero... (first nonzero lattice row; kNone when empty).
  int first_nonzero_j() const;

  static constexpr int kNone = 1 << 20;

 private:
  void ensure_row(int j);
  void normalize();
  int jmin_ = 0;
  int jcap_ = -1;                            // valid through y^{-jcap/3}
  std::vector<std::vector<Cbrt6>> rows_;     // rows_[j - jmin_][m]
};

inline XtSeries::Side side_of(Branch b) {
  return b == Branch::plus ? XtSeries::Side::plus : XtSeries::Side::minus;
}

// mu-power series of a rational function of z along z = z_branch(mu).
std::vector<Cbrt6> rf_along_z_series(const RationalFunction& f, Branch b, int order);

// Series of u(x,t) on one side, using e_1..e_K from the expansion table and
// the small-mu z series to mu^mu_order.
XtSeries u_xt_series(Branch b, int K, int mu_order, int jcap);

// H1 via its differential identity dH1/dx = u (integration constant -t^2),
// and via the composed expansion coefficients; both exact.
XtSeries h1_xt_series_from_u(Branch b, int K, int mu_order, int jcap);
XtSeries h1_xt_series_formula(Branch b, int mu_order, int jcap);

// H2 composed from the defining polynomial in (u, u_x, u_xx, u_xxx), and via
// the two-term expansion formula.
XtSeries h2_xt_series_from_u(Branch b, int K, int mu_order, int jcap);
XtSeries h2_xt_series_formula(Branch b, int mu_order, int jcap);

}  // namespace pi2
