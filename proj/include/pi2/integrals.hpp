#pragma once

#include <string>
#include <vector>

#include "pi2/asym_series.hpp"
#include "pi2/solver.hpp"

namespace pi2 {

enum class Quantity { u, H1, u2, xu };

const char* quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& name);

// Fixed numerical budgets added to the analytically estimated first omitted
// tail order: they cover composite-Simpson and solver discretization error at
// the default grids.
inline constexpr double kTailErrorFloor = 5e-4;
inline constexpr double kH1ErrorFloor = 2e-3;

struct IntegralReport {
  Quantity quantity = Quantity::u;
  double t = 0, L = 0;
  int tail_order = 0;            // e_k depth used in the tail
  double core_value = 0;         // regularized integrand over [-L, L]
  double counterterm_value = 0;  // closed-form part of the core, itemized
  double tail_correction = 0;
  double total = 0;              // core + tail
  double error_estimate = 0;
};

int default_tail_order(Quantity q);

// Exact [-L, L] integral of the counterterm part of the regularized
// integrand (odd terms vanish, even ones reduce to one-sided closed forms).
double counterterm_closed_form(Quantity q, double t, double L);

// Pointwise counterterm value (infinite at x = 0 for the singular terms).
double counterterm_value_at(Quantity q, double t, double x);

// Analytic tail integral of the regularized integrand over |x| > L, from the
// exact composed asymptotic series plus the closed-form remainder of the
// rational counterterm. Throws if a non-integrable term survives.
double tail_correction(Quantity q, double t, double L, int K);

// Composite-Simpson quadrature of the counterterms alone over [-L, L] with
// the same singular-cell treatment used for the real integrand (test hook).
double counterterm_quadrature(Quantity q, double t, double L, int n);

IntegralReport total_integral(Quantity q, double t, const SolutionGrid& sol, int K);
IntegralReport total_integral(Quantity q, double t, const SolutionGrid& sol);

}  // namespace pi2
