#pragma once

#include <string>
#include <vector>

#include "pi2/branch.hpp"

namespace pi2 {

struct SolverConfig {
  double t = 0;
  double L = 12;
  int n = 4001;                  // odd, >= 401
  double newton_tol = 1e-10;     // on the max box residual
  int max_newton = 50;
  double continuation_step = 0.1;
  int max_step_halvings = 6;
  int bc_K = 2;                  // e_k depth of the boundary data
  // Richardson levels against doubled grids: 0 = raw box scheme (O(h^2)),
  // 1 = one extrapolation (O(h^4)), 2 = two (O(h^6)). Two levels are needed
  // for the t-derivative identity residuals to scale cleanly with delta^2.
  int richardson_levels = 2;
  double M = kDefaultMuBound;
};

// Discrete solution; derivative columns are the first-order-system unknowns
// (Richardson-combined when enabled), residual is the converged box-scheme
// residual of the underlying fine solve.
struct SolutionGrid {
  double t = 0, L = 0;
  int n = 0;
  std::vector<double> x, u, ux, uxx, uxxx, H1, H2, residual;
  int newton_iterations = 0;     // worst Newton count among the solves
  double max_residual = 0;
  int richardson_levels = 0;
};

struct SolveError : std::runtime_error {
  std::vector<double> residual_profile;
  SolveError(const std::string& what, std::vector<double> profile = {})
      : std::runtime_error(what), residual_profile(std::move(profile)) {}
};

SolutionGrid solve_bvp(const SolverConfig& cfg);

// Fills H1/H2 by direct substitution of the stored derivative columns.
void hamiltonians_on_grid(SolutionGrid& sol, double t);

struct IdentityReport {
  double delta = 0;
  double max_dh1dx_minus_u = 0;        // |dH1/dx - u|
  double max_dh1dt_identity = 0;       // |dH1/dt + u^2/2 + u_xx/12|
  double max_kdv_residual = 0;         // |du/dt + u u_x + u_xxx/12|
};

// Requires three solves on the same grid at t - delta, t, t + delta.
IdentityReport identity_residuals(const SolutionGrid& sol_t,
                                  const SolutionGrid& sol_tp,
                                  const SolutionGrid& sol_tm, double delta);

// Max deviation between the assembled Newton Jacobian and a central
// finite-difference Jacobian, relative to the largest Jacobian entry.
double jacobian_fd_max_relative_deviation(const SolverConfig& cfg);

void write_csv(const SolutionGrid& sol, const std::string& path);
SolutionGrid read_csv(const std::string& path);

}  // namespace pi2
