#include "pi2/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace pi2 {

namespace {
const RationalFunction kZeroRF;
}

LaurentSeries LaurentSeries::zero(int trunc) {
  LaurentSeries s;
  s.trunc_ = trunc;
  return s;
}

LaurentSeries LaurentSeries::constant(const RationalFunction& c, int trunc) {
  return monomial(0, c, trunc);
}

LaurentSeries LaurentSeries::monomial(int exp, const RationalFunction& c, int trunc) {
  LaurentSeries s;
  s.trunc_ = trunc;
  if (!c.is_zero()) {
    s.lo_ = exp;
    s.c_ = {c};
  }
  return s;
}

LaurentSeries::LaurentSeries(int lo, std::vector<RationalFunction> coeffs, int trunc)
    : lo_(lo), trunc_(trunc), c_(std::move(coeffs)) {
  normalize();
}

void LaurentSeries::normalize() {
  // Drop stored coefficients above trunc_, then strip zero fringes.
  if (trunc_ != kExact) {
    long hi = static_cast<long>(lo_) + static_cast<long>(c_.size()) - 1;
    if (hi > trunc_) c_.resize(c_.size() - (hi - trunc_));
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  size_t skip = 0;
  while (skip < c_.size() && c_[skip].is_zero()) ++skip;
  if (skip) {
    c_.erase(c_.begin(), c_.begin() + skip);
    lo_ += static_cast<int>(skip);
  }
  if (c_.empty()) lo_ = 0;
}

int LaurentSeries::lowest() const {
  if (is_zero()) throw std::logic_error("lowest() of zero series");
  return lo_;
}

const RationalFunction& LaurentSeries::coeff(int m) const {
  if (m > trunc_) {
    std::ostringstream os;
    os << "coefficient of w^" << m << " requested beyond valid order " << trunc_;
    throw TruncationError(os.str(), m);
  }
  if (is_zero() || m < lo_ || m >= lo_ + static_cast<int>(c_.size())) return kZeroRF;
  return c_[m - lo_];
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.is_zero()) {
    LaurentSeries r = b;
    r.trunc_ = std::min(a.trunc_, b.trunc_);
    r.normalize();
    return r;
  }
  if (b.is_zero()) {
    LaurentSeries r = a;
    r.trunc_ = std::min(a.trunc_, b.trunc_);
    r.normalize();
    return r;
  }
  int lo = std::min(a.lo_, b.lo_);
  int trunc = std::min(a.trunc_, b.trunc_);
  int hi = std::min(trunc, std::max(a.lo_ + static_cast<int>(a.c_.size()),
                                    b.lo_ + static_cast<int>(b.c_.size())) - 1);
  std::vector<RationalFunction> c;
  c.reserve(hi - lo + 1);
  for (int m = lo; m <= hi; ++m) c.push_back(a.coeff(m) + b.coeff(m));
  return LaurentSeries(lo, std::move(c), trunc);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.is_zero() || b.is_zero()) {
    // Product with an (exactly known) zero is exactly zero; otherwise the
    // zero factor's validity still caps what is known about the product.
    int t = LaurentSeries::kExact;
    if (a.is_zero() && a.trunc_ != LaurentSeries::kExact && !b.is_zero())
      t = a.trunc_ + b.lo_;
    if (b.is_zero() && b.trunc_ != LaurentSeries::kExact && !a.is_zero())
      t = b.trunc_ + a.lo_;
    return LaurentSeries::zero(t);
  }
  long ta = (a.trunc_ == LaurentSeries::kExact) ? LaurentSeries::kExact
                                                : static_cast<long>(a.trunc_) + b.lo_;
  long tb = (b.trunc_ == LaurentSeries::kExact) ? LaurentSeries::kExact
                                                : static_cast<long>(b.trunc_) + a.lo_;
  int trunc = static_cast<int>(std::min({ta, tb, static_cast<long>(LaurentSeries::kExact)}));
  int lo = a.lo_ + b.lo_;
  long hi = std::min(static_cast<long>(trunc),
                     static_cast<long>(lo) + static_cast<long>(a.c_.size()) +
                         static_cast<long>(b.c_.size()) - 2);
  if (hi < lo) return LaurentSeries::zero(trunc);
  std::vector<RationalFunction> c(hi - lo + 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      long m = static_cast<long>(lo) + i + j;
      if (m > hi) break;
      if (b.c_[j].is_zero()) continue;
      c[m - lo] += a.c_[i] * b.c_[j];
    }
  }
  return LaurentSeries(lo, std::move(c), trunc);
}

LaurentSeries LaurentSeries::operator*(const RationalFunction& s) const {
  if (s.is_zero()) return LaurentSeries::zero(trunc_);
  LaurentSeries r(*this);
  for (auto& x : r.c_) x = x * s;
  r.normalize();
  return r;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
  return lo_ == o.lo_ && c_ == o.c_ && trunc_ == o.trunc_;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries r(*this);
  r.lo_ += k;
  if (r.trunc_ != kExact) r.trunc_ += k;
  return r;
}

LaurentSeries LaurentSeries::truncated(int T) const {
  LaurentSeries r(*this);
  r.trunc_ = std::min(trunc_, T);
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::reciprocal() const {
  if (is_zero()) throw std::invalid_argument("reciprocal of zero Laurent series");
  if (trunc_ == kExact) {
    if (c_.size() == 1)   // monomial: reciprocal is again exact
      return LaurentSeries::monomial(-lo_, c_.front().reciprocal());
    throw std::invalid_argument(
        "reciprocal of an exactly-known series is an infinite series; use "
        "reciprocal_to(T)");
  }
  return reciprocal_to(trunc_ - 2 * lo_);
}

LaurentSeries LaurentSeries::reciprocal_to(int T) const {
  if (is_zero()) throw std::invalid_argument("reciprocal of zero Laurent series");
  const RationalFunction& lead = c_.front();
  if (lead.is_zero()) throw std::invalid_argument("zero leading coefficient");
  if (trunc_ != kExact && T > trunc_ - 2 * lo_)
    throw TruncationError("reciprocal valid order exceeds operand validity",
                          T + 2 * lo_);
  // S = w^lo (u0 + u1 w + ...): invert the unit part order by order.
  int unit_order = T + lo_;
  if (unit_order < 0) return LaurentSeries::zero(T);
  RationalFunction inv0 = lead.reciprocal();
  std::vector<RationalFunction> v(unit_order + 1);
  v[0] = inv0;
  for (int m = 1; m <= unit_order; ++m) {
    RationalFunction acc;
    for (int i = 1; i <= m; ++i) {
      const RationalFunction& ui =
          (i < static_cast<int>(c_.size())) ? c_[i] : kZeroRF;
      if (ui.is_zero() || v[m - i].is_zero()) continue;
      acc += ui * v[m - i];
    }
    v[m] = -(inv0 * acc);
  }
  return LaurentSeries(-lo_, std::move(v), T);
}

LaurentSeries LaurentSeries::pow(int n) const {
  if (n == 0) return LaurentSeries::constant(RationalFunction(Rational(1)), trunc_);
  if (n < 0) return reciprocal().pow(-n);
  LaurentSeries acc = *this;
  for (int i = 1; i < n; ++i) acc = acc * (*this);
  return acc;
}

LaurentSeries LaurentSeries::principal_part() const {
  if (is_zero() || lo_ >= 0) return LaurentSeries::zero(kExact);
  if (trunc_ < -1) throw TruncationError("principal part needs orders up to -1", -1);
  std::vector<RationalFunction> c;
  for (int m = lo_; m < 0 && m < lo_ + static_cast<int>(c_.size()); ++m)
    c.push_back(c_[m - lo_]);
  return LaurentSeries(lo_, std::move(c), kExact);
}

LaurentSeries LaurentSeries::analytic_part() const {
  if (is_zero()) return LaurentSeries::zero(trunc_);
  std::vector<RationalFunction> c;
  for (int m = std::max(lo_, 0); m < lo_ + static_cast<int>(c_.size()); ++m)
    c.push_back(c_[m - lo_]);
  return LaurentSeries(std::max(lo_, 0), std::move(c), trunc_);
}

std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) {
  if (s.is_zero()) return os << "0 + O(w^" << s.trunc_ + 1 << ")";
  for (int m = s.lo_; m < s.lo_ + static_cast<int>(s.c_.size()); ++m) {
    const auto& c = s.coeff(m);
    if (c.is_zero()) continue;
    os << (m > s.lo_ ? " + " : "") << c << "*w^" << m;
  }
  if (s.trunc_ != LaurentSeries::kExact) os << " + O(w^" << s.trunc_ + 1 << ")";
  return os;
}

MatrixLaurentSeries::MatrixLaurentSeries(LaurentSeries e11, LaurentSeries e12,
                                         LaurentSeries e21, LaurentSeries e22)
    : e_{std::move(e11), std::move(e12), std::move(e21), std::move(e22)} {
  sync_trunc();
}

void MatrixLaurentSeries::sync_trunc() {
  trunc_ = LaurentSeries::kExact;
  for (const auto& e : e_) trunc_ = std::min(trunc_, e.trunc());
  for (auto& e : e_)
    if (!e.is_zero()) e = e.truncated(trunc_);
}

bool MatrixLaurentSeries::is_zero() const {
  for (const auto& e : e_)
    if (!e.is_zero()) return false;
  return true;
}

int MatrixLaurentSeries::lowest() const {
  int lo = LaurentSeries::kExact;
  for (const auto& e : e_)
    if (!e.is_zero()) lo = std::min(lo, e.lowest());
  return lo;
}

std::array<std::array<RationalFunction, 2>, 2> MatrixLaurentSeries::coeff(int m) const {
  return {{{at(0, 0).coeff(m), at(0, 1).coeff(m)},
           {at(1, 0).coeff(m), at(1, 1).coeff(m)}}};
}

MatrixLaurentSeries operator+(const MatrixLaurentSeries& a, const MatrixLaurentSeries& b) {
  return MatrixLaurentSeries(a.at(0, 0) + b.at(0, 0), a.at(0, 1) + b.at(0, 1),
                             a.at(1, 0) + b.at(1, 0), a.at(1, 1) + b.at(1, 1));
}

MatrixLaurentSeries operator*(const MatrixLaurentSeries& a, const MatrixLaurentSeries& b) {
  return MatrixLaurentSeries(
      a.at(0, 0) * b.at(0, 0) + a.at(0, 1) * b.at(1, 0),
      a.at(0, 0) * b.at(0, 1) + a.at(0, 1) * b.at(1, 1),
      a.at(1, 0) * b.at(0, 0) + a.at(1, 1) * b.at(1, 0),
      a.at(1, 0) * b.at(0, 1) + a.at(1, 1) * b.at(1, 1));
}

MatrixLaurentSeries MatrixLaurentSeries::operator-() const {
  return MatrixLaurentSeries(-at(0, 0), -at(0, 1), -at(1, 0), -at(1, 1));
}

MatrixLaurentSeries MatrixLaurentSeries::operator*(const RationalFunction& s) const {
  return MatrixLaurentSeries(at(0, 0) * s, at(0, 1) * s, at(1, 0) * s, at(1, 1) * s);
}

MatrixLaurentSeries MatrixLaurentSeries::principal_part() const {
  return MatrixLaurentSeries(at(0, 0).principal_part(), at(0, 1).principal_part(),
                             at(1, 0).principal_part(), at(1, 1).principal_part());
}

MatrixLaurentSeries MatrixLaurentSeries::analytic_part() const {
  return MatrixLaurentSeries(at(0, 0).analytic_part(), at(0, 1).analytic_part(),
                             at(1, 0).analytic_part(), at(1, 1).analytic_part());
}

}  // namespace pi2
