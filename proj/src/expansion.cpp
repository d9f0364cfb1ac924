#include "pi2/expansion.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace pi2 {

namespace {
const Polynomial kZ = Polynomial::variable();

Rational pow_rat(const Rational& b, int n) {
  Rational r(1);
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}
}  // namespace

RationalFunction mu_of_z(Branch b) {
  Polynomial num({Rational(b == Branch::plus ? 48 : -48), Rational(0), Rational(0), Rational(1)});
  Polynomial den = Polynomial::monomial(1, Rational(24));
  return RationalFunction(num, den);
}

RationalFunction s_of_z(Branch b) {
  RationalFunction z2(Polynomial::monomial(2));
  RationalFunction s = z2 - RationalFunction(Rational(8)) * mu_of_z(b);
  return s.reciprocal();
}

GCoefficients g_coeffs(Branch b) {
  GCoefficients g;
  g.branch = b;
  g.c1 = RationalFunction(rat(1, 105));
  g.c2 = RationalFunction(Polynomial::monomial(1, rat(1, 30)));
  RationalFunction z2(Polynomial::monomial(2, rat(1, 24)));
  g.c3 = z2 - mu_of_z(b) * RationalFunction(rat(1, 3));
  return g;
}

AiryConstants airy_constants(int k) {
  if (k < 1) throw std::invalid_argument("airy_constants requires k >= 1");
  AiryConstants a;
  a.k = k;
  Rational prod(1);
  for (int j = k; j <= 3 * k - 1; ++j) prod *= rat(2 * j + 1, 2);
  Rational fact(1);
  for (int j = 2; j <= k; ++j) fact *= j;
  a.t_hat = prod / (fact * pow_rat(Rational(36), k));
  a.t = -rat(6 * k + 1, 6 * k - 1) * a.t_hat;
  return a;
}

int pole_order(int k) { return (k % 2 == 0) ? 3 * (k / 2) : 3 * ((k + 1) / 2) - 1; }

namespace {

// P(w) = c3 + c2 w + c1 w^2; (3g/2)^{-n} = (2/3)^n w^{-3n/2} P^{-n}.
LaurentSeries p_of_w(Branch b) {
  GCoefficients g = g_coeffs(b);
  return LaurentSeries(0, {g.c3, g.c2, g.c1}, LaurentSeries::kExact);
}

MatrixLaurentSeries q_from_pinv(int k, int T, const LaurentSeries& pinv_k) {
  // pinv_k must be P^{-k} valid to at least the order consumed below.
  RationalFunction pref(pow_rat(rat(2, 3), k));
  if (k % 2 == 0) {
    int kk = k / 2;
    AiryConstants c = airy_constants(2 * kk);
    LaurentSeries base = pinv_k.shifted(-3 * kk).truncated(T);
    return MatrixLaurentSeries(base * (pref * RationalFunction(c.t_hat)),
                               LaurentSeries::zero(),
                               LaurentSeries::zero(),
                               base * (pref * RationalFunction(c.t)));
  }
  int kk = (k + 1) / 2;
  AiryConstants c = airy_constants(2 * kk - 1);
  LaurentSeries e12 = pinv_k.shifted(1 - 3 * kk).truncated(T) *
                      (pref * RationalFunction(c.t_hat));
  LaurentSeries e21 = pinv_k.shifted(2 - 3 * kk).truncated(T) *
                      (pref * RationalFunction(c.t));
  return MatrixLaurentSeries(LaurentSeries::zero(), e12, e21, LaurentSeries::zero());
}

}  // namespace

MatrixLaurentSeries q_series(int k, int T, Branch b) {
  if (k < 1) throw std::invalid_argument("q_series requires k >= 1");
  int nk = pole_order(k);
  if (T < -nk) {
    std::ostringstream os;
    os << "q_series(" << k << ") needs truncation order >= " << -nk;
    throw TruncationError(os.str(), -nk);
  }
  int kk = (k + 1) / 2;
  LaurentSeries pinv = p_of_w(b).reciprocal_to(T + 3 * kk);
  LaurentSeries pk = pinv;
  for (int i = 1; i < k; ++i) pk = pk * pinv;
  return q_from_pinv(k, T, pk);
}

ExpansionTable r_recursion(int K, Branch b) {
  if (K < 1) throw std::invalid_argument("r_recursion requires K >= 1");
  const int twoK = 2 * K;
  const int pad = 4;
  ExpansionTable t;
  t.branch = b;
  t.K = K;
  t.n.resize(twoK);
  t.trunc_orders.resize(twoK);
  for (int k = 1; k <= twoK; ++k) t.n[k - 1] = pole_order(k);

  // Interior orders: carrying R_j to n_{2K-j} + pad keeps every coefficient
  // that later convolutions can pull down to exponent -1 (and below) exact;
  // the series bookkeeping turns any shortfall into a hard error.
  auto target = [&](int k) { return (k < twoK ? pole_order(twoK - k) : 0) + pad; };

  int max_unit = 0;
  for (int k = 1; k <= twoK; ++k)
    max_unit = std::max(max_unit, target(k) + 3 * ((k + 1) / 2));
  LaurentSeries pinv1 = p_of_w(b).reciprocal_to(max_unit);
  std::vector<LaurentSeries> pinv(twoK + 1);
  pinv[1] = pinv1;
  for (int n = 2; n <= twoK; ++n) pinv[n] = pinv[n - 1] * pinv1;

  t.Q.reserve(twoK);
  for (int k = 1; k <= twoK; ++k) t.Q.push_back(q_from_pinv(k, target(k), pinv[k]));

  std::vector<MatrixLaurentSeries> r_in(twoK + 1);
  t.R.reserve(twoK);
  for (int k = 1; k <= twoK; ++k) {
    if (t.Q[k - 1].lowest() != -t.n[k - 1])
      throw std::logic_error("Q_k pole order mismatch");
    MatrixLaurentSeries J = t.Q[k - 1];
    for (int j = 1; j < k; ++j) J = J + r_in[j] * t.Q[k - j - 1];
    if (J.lowest() < -t.n[k - 1])
      throw std::logic_error("R_k pole order exceeds n_k");
    if (J.trunc() < -1)
      throw TruncationError("R recursion ran out of valid orders", -1);
    MatrixLaurentSeries out = J.principal_part();
    MatrixLaurentSeries in = -J.analytic_part();
    bool parity_ok = (k % 2 == 0) ? (out.is_diagonal() && in.is_diagonal())
                                  : (out.is_anti_diagonal() && in.is_anti_diagonal());
    if (!parity_ok) throw std::logic_error("parity violation in R recursion");
    r_in[k] = in;
    t.trunc_orders[k - 1] = in.trunc();
    t.R.push_back(out + in);
  }

  t.e.reserve(K);
  for (int k = 1; k <= K; ++k) {
    RationalFunction ek = RationalFunction(Rational(2)) * t.r(2 * k).coeff(-1)[0][0];
    for (int i = 1; i <= k; ++i)
      ek -= t.r(2 * i - 1).coeff(-1)[0][1] * t.r(2 * (k - i) + 1).coeff(-1)[0][1];
    t.e.push_back(ek);
  }
  return t;
}

const ExpansionTable& expansion_table(Branch b, int K) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, ExpansionTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(b), K);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, r_recursion(K, b)).first;
  return it->second;
}

std::vector<RationalFunction> e_coeffs(int K, Branch b) {
  return expansion_table(b, K).e;
}

long double ExpansionTable::e_eval(int k, double mu, double M) const {
  if (precision_bits() > 64) {
    // honor PI2_PRECISION_BITS: refined root, coefficient-exact Horner
    BigFloat z = z_plus_big(mu, 0, M);
    if (branch == Branch::minus) z = -z;
    BigFloat num = eval_poly_big(e_k(k).num(), z);
    BigFloat den = eval_poly_big(e_k(k).den(), z);
    BigFloat v = num / den;
    return static_cast<long double>(v.get_d());
  }
  long double z = z_root(branch, mu, M);
  return e_k(k).eval_fp<long double>(z);
}

Rational ExpansionTable::e_eval_exact(int k, const Rational& z0) const {
  return e_k(k).eval(z0);
}

Cbrt6 ExpansionTable::e_eval_mu0(int k) const {
  Cbrt6 z0(Rational(0), branch == Branch::plus ? rat(-2) : rat(2));
  const RationalFunction& f = e_k(k);
  auto horner = [&](const Polynomial& p) {
    Cbrt6 acc;
    for (int i = p.degree(); i >= 0; --i) acc = acc * z0 + Cbrt6(p.coeff(i));
    return acc;
  };
  return horner(f.num()) / horner(f.den());
}

HExpansionCoeffs h_expansion_coeffs(Branch b) {
  HExpansionCoeffs h;
  h.branch = b;
  RationalFunction z(kZ);
  RationalFunction mu = mu_of_z(b);
  RationalFunction s = s_of_z(b);
  Rational sign(b == Branch::plus ? 1 : -1);
  h.h1_lead = RationalFunction(Polynomial::monomial(1, sign * rat(1, 4))) -
              RationalFunction(Polynomial::monomial(4, rat(1, 384)));
  h.h1_corr = RationalFunction(Polynomial::monomial(1, rat(4, 3))) * s * s;
  h.h2_lead = RationalFunction(Polynomial::monomial(5, rat(1, 320))) +
              RationalFunction(Polynomial::monomial(2, sign * rat(3, 8))) -
              mu * RationalFunction(Polynomial::monomial(3, rat(1, 8)));
  h.h2_corr = (RationalFunction(Polynomial::monomial(2, Rational(3))) -
               RationalFunction(Rational(8)) * mu) * s * s;
  return h;
}

namespace {

nlohmann::json poly_json(const Polynomial& p) {
  nlohmann::json a = nlohmann::json::array();
  // integer coefficient lists: common denominator first, then numerators
  BigInt lcm = 1;
  for (const auto& c : p.coeffs()) {
    BigInt den = c.get_den(), g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  for (const auto& c : p.coeffs()) {
    Rational scaled = c * Rational(lcm);
    a.push_back(scaled.get_num().get_str());
  }
  return nlohmann::json{{"scale_den", lcm.get_str()}, {"coeffs", a}};
}

nlohmann::json rf_json(const RationalFunction& f) {
  return nlohmann::json{{"num", poly_json(f.num())}, {"den", poly_json(f.den())}};
}

nlohmann::json matrix_json(const MatrixLaurentSeries& m) {
  nlohmann::json entries = nlohmann::json::array();
  int lo = m.is_zero() ? 0 : m.lowest();
  for (int e = lo; e <= std::min(m.trunc(), lo + 64); ++e) {
    auto c = m.coeff(e);
    bool any = false;
    for (int i = 0; i < 2 && !any; ++i)
      for (int j = 0; j < 2 && !any; ++j) any = !c[i][j].is_zero();
    if (!any) continue;
    entries.push_back({{"exp", e},
                       {"m11", rf_json(c[0][0])},
                       {"m12", rf_json(c[0][1])},
                       {"m21", rf_json(c[1][0])},
                       {"m22", rf_json(c[1][1])}});
  }
  return entries;
}

}  // namespace

nlohmann::json to_json(const ExpansionTable& t) {
  nlohmann::json j;
  j["branch"] = branch_name(t.branch);
  j["K"] = t.K;
  j["pole_orders"] = t.n;
  j["truncation_orders"] = t.trunc_orders;
  nlohmann::json rs = nlohmann::json::array(), es = nlohmann::json::array();
  for (int k = 1; k <= 2 * t.K; ++k)
    rs.push_back({{"k", k}, {"R", matrix_json(t.r(k))}});
  for (int k = 1; k <= t.K; ++k) es.push_back({{"k", k}, {"e", rf_json(t.e_k(k))}});
  j["R"] = rs;
  j["e"] = es;
  return j;
}

}  // namespace pi2
