#include "pi2/asym_series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pi2 {

int XtSeries::tdeg() const {
  int d = -1;
  for (const auto& row : rows_) d = std::max(d, static_cast<int>(row.size()) - 1);
  return d;
}

bool XtSeries::is_zero() const {
  for (const auto& row : rows_)
    for (const auto& c : row)
      if (!c.is_zero()) return false;
  return true;
}

Cbrt6 XtSeries::coeff(int j, int m) const {
  if (j > jcap_) {
    std::ostringstream os;
    os << "coefficient at y^{-" << j << "/3} beyond valid order " << jcap_;
    throw TruncationError(os.str(), j);
  }
  int r = j - jmin_;
  if (r < 0 || r >= static_cast<int>(rows_.size())) return Cbrt6();
  if (m < 0 || m >= static_cast<int>(rows_[r].size())) return Cbrt6();
  return rows_[r][m];
}

void XtSeries::ensure_row(int j) {
  if (rows_.empty()) {
    jmin_ = j;
    rows_.emplace_back();
    return;
  }
  if (j < jmin_) {
    rows_.insert(rows_.begin(), jmin_ - j, std::vector<Cbrt6>());
    jmin_ = j;
  }
  while (j >= jmin_ + static_cast<int>(rows_.size())) rows_.emplace_back();
}

void XtSeries::add_term(int j, int m, const Cbrt6& c) {
  if (c.is_zero()) return;
  if (j > jcap_) return;   // beyond validity: ignore
  ensure_row(j);
  auto& row = rows_[j - jmin_];
  if (m >= static_cast<int>(row.size())) row.resize(m + 1);
  row[m] += c;
}

void XtSeries::normalize() {
  while (!rows_.empty()) {
    bool zero = true;
    for (const auto& c : rows_.front())
      if (!c.is_zero()) { zero = false; break; }
    if (!zero) break;
    rows_.erase(rows_.begin());
    ++jmin_;
  }
  while (!rows_.empty()) {
    bool zero = true;
    for (const auto& c : rows_.back())
      if (!c.is_zero()) { zero = false; break; }
    if (!zero) break;
    rows_.pop_back();
  }
  if (rows_.empty()) jmin_ = 0;
}

XtSeries XtSeries::operator-() const {
  XtSeries r(*this);
  for (auto& row : r.rows_)
    for (auto& c : row) c = -c;
  return r;
}

XtSeries operator+(const XtSeries& a, const XtSeries& b) {
  XtSeries r(std::min(a.jcap_, b.jcap_));
  for (const XtSeries* s : {&a, &b})
    for (int j = s->jmin_; j < s->jmin_ + static_cast<int>(s->rows_.size()); ++j) {
      const auto& row = s->rows_[j - s->jmin_];
      for (int m = 0; m < static_cast<int>(row.size()); ++m) r.add_term(j, m, row[m]);
    }
  r.normalize();
  return r;
}

XtSeries operator-(const XtSeries& a, const XtSeries& b) { return a + (-b); }

XtSeries operator*(const XtSeries& a, const XtSeries& b) {
  if (a.is_zero() || b.is_zero())
    return XtSeries(std::min(a.jcap_, b.jcap_));
  XtSeries r(std::min(a.jcap_ + b.jmin_, b.jcap_ + a.jmin_));
  for (int ja = a.jmin_; ja < a.jmin_ + static_cast<int>(a.rows_.size()); ++ja) {
    const auto& rowa = a.rows_[ja - a.jmin_];
    for (int jb = b.jmin_; jb < b.jmin_ + static_cast<int>(b.rows_.size()); ++jb) {
      if (ja + jb > r.jcap_) break;
      const auto& rowb = b.rows_[jb - b.jmin_];
      for (int ma = 0; ma < static_cast<int>(rowa.size()); ++ma) {
        if (rowa[ma].is_zero()) continue;
        for (int mb = 0; mb < static_cast<int>(rowb.size()); ++mb) {
          if (rowb[mb].is_zero()) continue;
          r.add_term(ja + jb, ma + mb, rowa[ma] * rowb[mb]);
        }
      }
    }
  }
  r.normalize();
  return r;
}

XtSeries XtSeries::scaled(const Cbrt6& s) const {
  XtSeries r(*this);
  for (auto& row : r.rows_)
    for (auto& c : row) c = c * s;
  r.normalize();
  return r;
}

XtSeries XtSeries::mul_t() const {
  XtSeries r(jcap_);
  for (int j = jmin_; j < jmin_ + static_cast<int>(rows_.size()); ++j) {
    const auto& row = rows_[j - jmin_];
    for (int m = 0; m < static_cast<int>(row.size()); ++m) r.add_term(j, m + 1, row[m]);
  }
  return r;
}

XtSeries XtSeries::truncated(int jcap) const {
  XtSeries r(std::min(jcap, jcap_));
  for (int j = jmin_; j < jmin_ + static_cast<int>(rows_.size()); ++j) {
    if (j > r.jcap_) break;
    const auto& row = rows_[j - jmin_];
    for (int m = 0; m < static_cast<int>(row.size()); ++m) r.add_term(j, m, row[m]);
  }
  r.normalize();
  return r;
}

XtSeries XtSeries::d_dx(Side side) const {
  // d/dy of y^{-j/3} is -(j/3) y^{-(j+3)/3}; d/dx = +-d/dy.
  Rational sgn(side == Side::plus ? -1 : 1);
  XtSeries r(jcap_ + 3);
  for (int j = jmin_; j < jmin_ + static_cast<int>(rows_.size()); ++j) {
    const auto& row = rows_[j - jmin_];
    Cbrt6 f(sgn * rat(j, 3));
    for (int m = 0; m < static_cast<int>(row.size()); ++m)
      r.add_term(j + 3, m, row[m] * f);
  }
  return r;
}

XtSeries XtSeries::antiderivative_x(Side side) const {
  Rational sgn(side == Side::plus ? 1 : -1);
  XtSeries r(jcap_ - 3);
  for (int j = jmin_; j < jmin_ + static_cast<int>(rows_.size()); ++j) {
    const auto& row = rows_[j - jmin_];
    for (int m = 0; m < static_cast<int>(row.size()); ++m) {
      if (row[m].is_zero()) continue;
      if (j == 3)
        throw std::domain_error("antiderivative would produce a log term (j = 3)");
      r.add_term(j - 3, m, row[m] * Cbrt6(sgn * rat(3, 3 - j)));
    }
  }
  return r;
}

XtSeries XtSeries::mul_x(Side side) const {
  XtSeries r(jcap_ - 3);
  Rational sgn(side == Side::plus ? 1 : -1);
  for (int j = jmin_; j < jmin_ + static_cast<int>(rows_.size()); ++j) {
    const auto& row = rows_[j - jmin_];
    for (int m = 0; m < static_cast<int>(row.size()); ++m)
      r.add_term(j - 3, m, row[m] * Cbrt6(sgn));
  }
  return r;
}

long double XtSeries::eval(long double y, long double t) const {
  long double acc = 0;
  for (int j = jmin_ + static_cast<int>(rows_.size()) - 1; j >= jmin_; --j) {
    const auto& row = rows_[j - jmin_];
    long double tp = 1, rowval = 0;
    for (int m = 0; m < static_cast<int>(row.size()); ++m) {
      if (!row[m].is_zero()) rowval += row[m].to_ld() * tp;
      tp *= t;
    }
    acc += rowval * powl(y, -static_cast<long double>(j) / 3.0L);
  }
  return acc;
}

long double XtSeries::tail_integral(long double L, long double t) const {
  long double acc = 0;
  for (int j = jmin_; j < jmin_ + static_cast<int>(rows_.size()); ++j) {
    const auto& row = rows_[j - jmin_];
    bool nonzero = false;
    for (const auto& c : row) nonzero |= !c.is_zero();
    if (!nonzero) continue;
    if (j <= 3) {
      std::ostringstream os;
      os << "tail integrand has non-integrable term y^{-" << j << "/3}";
      throw std::domain_error(os.str());
    }
    long double tp = 1, rowval = 0;
    for (int m = 0; m < static_cast<int>(row.size()); ++m) {
      if (!row[m].is_zero()) rowval += row[m].to_ld() * tp;
      tp *= t;
    }
    acc += rowval * 3.0L / (j - 3) * powl(L, -static_cast<long double>(j - 3) / 3.0L);
  }
  return acc;
}

int XtSeries::first_nonzero_j() const {
  for (int j = jmin_; j < jmin_ + static_cast<int>(rows_.size()); ++j)
    for (const auto& c : rows_[j - jmin_])
      if (!c.is_zero()) return j;
  return kNone;
}

// ---------------------------------------------------------------------------

namespace {

using MuSeries = std::vector<Cbrt6>;   // coefficients of mu^0..mu^N

MuSeries mul(const MuSeries& a, const MuSeries& b) {
  MuSeries r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

MuSeries inv(const MuSeries& a) {
  MuSeries r(a.size());
  r[0] = a[0].inverse();
  for (size_t m = 1; m < a.size(); ++m) {
    Cbrt6 acc;
    for (size_t i = 1; i <= m; ++i) acc += a[i] * r[m - i];
    r[m] = -(r[0] * acc);
  }
  return r;
}

MuSeries poly_along(const Polynomial& p, const MuSeries& zs) {
  MuSeries acc(zs.size());
  for (int i = p.degree(); i >= 0; --i) {
    acc = mul(acc, zs);
    acc[0] += Cbrt6(p.coeff(i));
  }
  return acc;
}

MuSeries z_mu_series(Branch b, int order) {
  auto terms = z_series_small_mu(b, order);
  MuSeries z(order + 1);
  for (int i = 0; i <= order; ++i) z[i] = terms[i].value;
  return z;
}

}  // namespace

std::vector<Cbrt6> rf_along_z_series(const RationalFunction& f, Branch b, int order) {
  MuSeries zs = z_mu_series(b, order);
  return mul(poly_along(f.num(), zs), inv(poly_along(f.den(), zs)));
}

XtSeries u_xt_series(Branch b, int K, int mu_order, int jcap) {
  // u = y^{1/3} [ z(mu)/2 + sum_k e_k(mu) y^{-7k/3} ], mu = t y^{-2/3}:
  // the mu^n coefficient of the k-th block lands at j = 2n + 7k - 1.
  if (mu_order > 8) mu_order = 8;
  XtSeries u(std::min(jcap, std::min(2 * mu_order + 1, 7 * (K + 1) - 1) - 1));
  MuSeries zs = z_mu_series(b, mu_order);
  for (int n = 0; n <= mu_order; ++n)
    u.add_term(2 * n - 1, n, zs[n] * Cbrt6(rat(1, 2)));
  if (K > 0) {
    const ExpansionTable& tab = expansion_table(b, K);
    for (int k = 1; k <= K; ++k) {
      MuSeries ek = rf_along_z_series(tab.e_k(k), b, mu_order);
      for (int n = 0; n <= mu_order; ++n) u.add_term(2 * n + 7 * k - 1, n, ek[n]);
    }
  }
  return u;
}

XtSeries h1_xt_series_from_u(Branch b, int K, int mu_order, int jcap) {
  XtSeries u = u_xt_series(b, K, mu_order, jcap + 3);
  XtSeries h1 = u.antiderivative_x(side_of(b));
  h1.add_term(0, 2, Cbrt6(rat(-1)));   // integration constant -t^2
  return h1.truncated(jcap);
}

namespace {

// Composes  sum_n c_n(mu) t^? ... : a coefficient-function of mu placed on
// the lattice at base row j0 (for |x|^{-j0/3}).
XtSeries place_mu_series(const MuSeries& c, int j0, int jcap) {
  XtSeries r(jcap);
  for (int n = 0; n < static_cast<int>(c.size()); ++n) r.add_term(j0 + 2 * n, n, c[n]);
  return r;
}

}  // namespace

XtSeries h1_xt_series_formula(Branch b, int mu_order, int jcap) {
  if (mu_order > 8) mu_order = 8;
  HExpansionCoeffs h = h_expansion_coeffs(b);
  XtSeries lead = place_mu_series(rf_along_z_series(h.h1_lead, b, mu_order), -4,
                                  std::min(jcap, 2 * mu_order - 4));
  XtSeries corr = place_mu_series(rf_along_z_series(h.h1_corr, b, mu_order), 3,
                                  std::min(jcap, 2 * mu_order + 3));
  return lead + corr;
}

XtSeries h2_xt_series_formula(Branch b, int mu_order, int jcap) {
  if (mu_order > 8) mu_order = 8;
  HExpansionCoeffs h = h_expansion_coeffs(b);
  XtSeries lead = place_mu_series(rf_along_z_series(h.h2_lead, b, mu_order), -5,
                                  std::min(jcap, 2 * mu_order - 5));
  XtSeries corr = place_mu_series(rf_along_z_series(h.h2_corr, b, mu_order), 2,
                                  std::min(jcap, 2 * mu_order + 2));
  return lead + corr;
}

XtSeries h2_xt_series_from_u(Branch b, int K, int mu_order, int jcap) {
  XtSeries::Side s = side_of(b);
  XtSeries u = u_xt_series(b, K, mu_order, jcap + 9);
  XtSeries ux = u.d_dx(s).truncated(jcap + 6);
  XtSeries uxx = ux.d_dx(s).truncated(jcap + 3);
  XtSeries uxxx = uxx.d_dx(s).truncated(jcap);
  u = u.truncated(jcap + 9);
  auto c = [](long num, long den) { return Cbrt6(rat(num, den)); };
  XtSeries h2 =
      (uxxx * uxxx).scaled(c(1, 1920)) + (u * ux * uxxx).scaled(c(1, 80)) +
      (u * u * ux * ux).scaled(c(1, 16)) + (u * u * u * u * u).scaled(c(1, 10)) +
      (u * u * u * uxx).scaled(c(1, 24)) + (u * uxx * uxx).scaled(c(1, 240)) -
      (ux * ux * uxx).scaled(c(1, 480)) - ux.scaled(c(1, 4)) +
      (u * u).mul_x(s).scaled(c(3, 2)) + uxx.mul_x(s).scaled(c(1, 4)) -
      (u * u * u).mul_t() - (u * uxx).mul_t().scaled(c(1, 4)) +
      (ux * ux).mul_t().scaled(c(1, 8));
  return h2.truncated(jcap);
}

}  // namespace pi2
