#pragma once

#include <vector>

#include "pi2/branch.hpp"
#include "pi2/laurent.hpp"

#include "json.hpp"

namespace pi2 {

// mu eliminated through the branch cubic: mu(z) = (z^3 +- 48)/(24 z).
// All symbolic work downstream is univariate in z because of this.
RationalFunction mu_of_z(Branch b);

// 1/(z^2 - 8 mu) with mu eliminated; equals 3z/(2(z^3 -+ 24)).
RationalFunction s_of_z(Branch b);

// Coefficients of the g-function g(zeta) = c1 w^{7/2} + c2 w^{5/2} + c3 w^{3/2},
// w = zeta - z_branch, after mu-elimination.
struct GCoefficients {
  Branch branch;
  RationalFunction c1, c2, c3;
};
GCoefficients g_coeffs(Branch b);

// Constants of the Airy-parametrix expansion: t_hat_k > 0 exactly via the
// telescoping ratio Gamma(3k+1/2)/Gamma(k+1/2) = prod_{j=k}^{3k-1} (j+1/2),
// and t_k = -(6k+1)/(6k-1) t_hat_k.
struct AiryConstants {
  int k;
  Rational t_hat, t;
};
AiryConstants airy_constants(int k);

// Pole order n_k of the k-th Laurent datum: n_{2k} = 3k, n_{2k-1} = 3k - 1.
int pole_order(int k);

// Laurent data of the jump expansion on the circle around z_branch, as an
// integer-indexed 2x2 series in w valid through order T. The half-integer
// powers cancel inside the matrix entries.
MatrixLaurentSeries q_series(int k, int T, Branch b);

// R_k Laurent data: negative exponents hold the exterior (principal-part)
// representation, nonnegative exponents the interior one. Both come from the
// Plemelj split of J_k = Q_k + sum_j R_j^in Q_{k-j}.
struct ExpansionTable {
  Branch branch = Branch::plus;
  int K = 0;                            // e_k available for k = 1..K
  std::vector<MatrixLaurentSeries> Q;   // index k-1, k = 1..2K
  std::vector<MatrixLaurentSeries> R;
  std::vector<int> n;                   // pole orders n_k
  std::vector<int> trunc_orders;        // interior validity per k
  std::vector<RationalFunction> e;      // e[k-1], k = 1..K

  const MatrixLaurentSeries& q(int k) const { return Q.at(k - 1); }
  const MatrixLaurentSeries& r(int k) const { return R.at(k - 1); }
  const RationalFunction& e_k(int k) const { return e.at(k - 1); }

  long double e_eval(int k, double mu, double M = kDefaultMuBound) const;
  Rational e_eval_exact(int k, const Rational& z0) const;
  Cbrt6 e_eval_mu0(int k) const;        // exact value at mu = 0
};

ExpansionTable r_recursion(int K, Branch b);

// Shared, lazily built tables (immutable once constructed).
const ExpansionTable& expansion_table(Branch b, int K);

std::vector<RationalFunction> e_coeffs(int K, Branch b);

// Leading and first-correction coefficients of the Hamiltonian expansions,
// as exact rational functions of z (mu eliminated).
struct HExpansionCoeffs {
  Branch branch;
  RationalFunction h1_lead;    // +-z/4 - z^4/384
  RationalFunction h1_corr;    // (4z/3) s^2
  RationalFunction h2_lead;    // z^5/320 +- 3z^2/8 - mu z^3/8
  RationalFunction h2_corr;    // (3z^2 - 8 mu) s^2
};
HExpansionCoeffs h_expansion_coeffs(Branch b);

nlohmann::json to_json(const ExpansionTable& t);

}  // namespace pi2
