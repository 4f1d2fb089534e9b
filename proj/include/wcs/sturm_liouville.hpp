#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wcs/warped_model.hpp"

namespace wcs {

// Closed-form axial test function on [-eps, 0]. `second` is only needed by
// consumers that apply the operator directly (index-form quadrature).
struct AxialFunction {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::function<double(double)> second;
};

enum class SolveMethod { finite_difference, shooting };

// Dirichlet eigenvalue problem on [-eps, 0]:
//   (lambda^n g')' + c (n+1) lambda^n g + delta lambda^{n-2} g = 0,
// i.e. p = lambda^n, weight = lambda^{n-2}, potential term c(n+1) lambda^n.
struct SturmLiouvilleProblem {
  ConeDensity density;
  int num_eigen = 1;
  int grid_size = 1024;  // interior nodes for the FD discretization
};

SturmLiouvilleProblem make_problem(const WarpedModel& model, double eps, int num_eigen = 1,
                                   int grid_size = 1024);

struct SpectralResult {
  std::string model_name;
  int n = 0;
  double c = 0.0;
  double eps = 0.0;
  SolveMethod method = SolveMethod::finite_difference;
  int grid_size = 0;  // as requested
  // Ascending; the FD values carry one Richardson step (grids h and h/2).
  std::vector<double> eigenvalues;
  std::vector<double> t;       // sample nodes including both endpoints
  std::vector<double> weight;  // lambda^{n-2} at the nodes
  // Weighted-L2 normalized, first interior lobe positive; g(-eps) = g(0) = 0.
  std::vector<std::vector<double>> eigenfunctions;
  std::vector<double> residuals;  // conservative-form ODE residual per pair
};

// Conservative second-order finite differences; symmetric tridiagonal
// generalized eigenproblem solved by Sturm-count bisection plus inverse
// iteration; eigenvalues Richardson-extrapolated from the two nested grids.
// Eigenfunctions are reported on the fine grid.
SpectralResult solve_fd(const SturmLiouvilleProblem& problem);

// Independent route: adaptive RK45 shooting from t = -eps with g' = 1,
// oscillation counting to bracket each eigenvalue, then bisection on the
// sign of g(0) until the bracket width drops below tol.
SpectralResult solve_shooting(const SturmLiouvilleProblem& problem, double tol = 1e-9);

// integral lambda^n ((g')^2 - c(n+1) g^2) dt / integral lambda^{n-2} g^2 dt
// by adaptive quadrature. Requires g(-eps) = g(0) = 0 (checked) and g != 0.
double rayleigh_quotient_axial(const ConeDensity& density, const AxialFunction& g);

// Max over interior nodes of |(p g')' + c(n+1) p g + delta w g| with p
// evaluated at half-nodes, normalized by max|g| * max weight. `t` must be a
// uniform grid including both endpoints.
double residual(const ConeDensity& density, double delta, const std::vector<double>& t,
                const std::vector<double>& g);

// Weighted inner product <g_i, g_j>_w of stored eigenfunctions, using the
// quadrature rule under which the method's samples are exact: trapezoid for
// FD (the discrete eigenvectors are orthonormal under it), Simpson for
// shooting point samples.
double weighted_inner(const SpectralResult& result, int i, int j);

std::string to_json(const SpectralResult& result);
std::string eigenfunctions_csv(const SpectralResult& result);

}  // namespace wcs
