#pragma once

#include <string>
#include <vector>

#include "pi2/bigfloat.hpp"
#include "pi2/cbrt6.hpp"
#include "pi2/rational.hpp"

namespace pi2 {

// Side of the real line the expansion lives on. The plus branch (x -> +inf)
// uses the cubic z^3 - 24 mu z + 48 = 0, the minus branch z^3 - 24 mu z - 48 = 0.
enum class Branch { plus, minus };

inline const char* branch_name(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

// Largest admissible mu. Must stay strictly below 2^{-2/3} 3^{-1/3} ~ 0.43679
// so the expansion is uniform on both branches.
inline constexpr double kDefaultMuBound = 0.43;

struct AdmissibilityError : std::domain_error {
  explicit AdmissibilityError(const std::string& what) : std::domain_error(what) {}
};

struct MuDiagnostics {
  bool admissible = false;
  double discriminant = 0;   // of z^3 + p z + q; negative means one real root
  std::string reason;
};

MuDiagnostics mu_admissible(double mu, double M = kDefaultMuBound);

// The unique real root of the branch cubic. Newton from the mu = 0 root with
// a bisection safeguard on the bracket (-480^{1/3}, 0) proved for the plus
// branch; the minus branch root is the exact mirror -z_plus(mu).
long double z_plus(double mu, double M = kDefaultMuBound);
long double z_minus(double mu, double M = kDefaultMuBound);
long double z_root(Branch b, double mu, double M = kDefaultMuBound);

// Root refined to the precision of PI2_PRECISION_BITS (or `bits`).
BigFloat z_plus_big(double mu, int bits = 0, double M = kDefaultMuBound);

// Coefficient of mu^n in the small-mu expansion of z_branch(mu), exact in
// Q(6^{1/3}). Every coefficient is a monomial r * 6^{k/3}.
struct ZSeriesTerm {
  Rational coef;       // r
  int sixth_power;     // k in {0,1,2}
  Cbrt6 value;         // r * 6^{k/3}
};
std::vector<ZSeriesTerm> z_series_small_mu(Branch b, int order);

}  // namespace pi2
