#pragma once

#include <string>
#include <vector>

#include "wcs/hypersurface.hpp"
#include "wcs/sturm_liouville.hpp"
#include "wcs/warped_model.hpp"

namespace wcs {

// Index form of a separable variation expanded in the product eigenbasis:
// I = sum_ij a_ij^2 (lambda_i + delta_j) ||f_i||^2 ||g_j||^2_w with the
// surface factors normalized (||f_i||^2 = 1) and the axial norms taken from
// the stored samples.
struct SeparableVariation {
  std::vector<std::vector<double>> coeffs;  // a[i][j]
};

double index_form(const SeparableVariation& v, const std::vector<double>& l1_eigenvalues,
                  const SpectralResult& axial);

// Convenience wrapper that builds both spectra itself (FD axial solve).
double index_form(const SeparableVariation& v, const WarpedModel& model,
                  const MinimalHypersurface& s, double eps, int grid_size = 1024);

// Independent route for a single separable term f_i (x) g: direct quadrature
// of  w (mu_i - ||A||^2) g^2 - c(n+1) p g^2 - g (p g'' + n lambda^{n-1} lambda' g')
// with analytic derivatives (closed-form g) or central differences plus a
// subsample Richardson step (sampled g).
double index_form_quadrature(const ConeDensity& d, double mu_i, double normA2,
                             const AxialFunction& g);
double index_form_quadrature(const ConeDensity& d, double mu_i, double normA2,
                             const std::vector<double>& t, const std::vector<double>& g);

// Distinguished axial test function on the spherical model:
// h(t) = sin(pi t / eps) / cos(t)^{(n-2)/2}; closed-form derivatives.
AxialFunction bound_test_function(int n, double eps);

// The three integrals behind the closed-form estimate, by adaptive
// quadrature over [-eps, 0]:
//   i1 = int (pi/eps)^2 cos^2(pi t/eps) cos^2 t
//        + ((n-2)^2/4) sin^2(pi t/eps) sin^2 t
//        + (pi/eps)((n-2)/4) sin(2 pi t/eps) sin(2t)
//   i2 = (n+1) int cos^2 t sin^2(pi t/eps)
//   i3 = int sin^2(pi t/eps)
// i1 is exactly int cos^n t (h')^2 dt for the test function above, so the
// Rayleigh quotient of h equals (i1 - i2)/i3 for every eps. The cross term
// integrates to zero at eps = pi/2, where the limit forms below take over.
struct BoundIntegrals {
  double i1 = 0.0, i2 = 0.0, i3 = 0.0;
};
BoundIntegrals bound_integrals(int n, double eps);

// Limits at eps = pi/2: (pi/2)(1 + ((n-2)/4)^2), (n+1) pi/8, pi/4.
BoundIntegrals bound_integrals_limit(int n);

// Closed-form upper bound for lambda_1 + delta_1 on the spherical cone as
// eps -> pi/2: n^2/8 - 2n + 2.
double closed_form_sum_bound(int n);

// Sign of the bound in exact integer arithmetic: sign(n^2 - 16 n + 16).
int sum_bound_sign(int n);

struct VerdictOptions {
  int grid_size = 1024;
  double shooting_tol = 1e-9;
  std::string lambda1_mode = "exact";  // "exact" (catalog) or "bound" (Simons)
  double agreement_rel = 1e-6;         // FD vs shooting refusal threshold
};

struct StabilityReport {
  std::string model_name;
  std::string surface_name;
  int n = 0;
  double eps = 0.0;
  double lambda1 = 0.0;
  std::string lambda1_source;  // "exact" or "simons_bound"
  double delta1 = 0.0;         // FD value (cross-checked)
  double delta1_fd = 0.0;
  double delta1_shooting = 0.0;
  double methods_disagreement = 0.0;
  double sum = 0.0;  // lambda1 + delta1
  std::string verdict;  // "unstable" | "stable_under_fixed_boundary_normal_variations"
                        // | "not_decided_by_criterion"
  bool has_closed_form_bound = false;
  double closed_form_bound = 0.0;  // spherical model only
};

// Instability criterion lambda_1 + delta_1 < 0 with delta_1 computed by both
// solvers; throws solver_error (reporting both values) if they disagree
// beyond max(agreement_rel, agreement_rel * |delta1|).
StabilityReport verdict(const WarpedModel& model, const MinimalHypersurface& s, double eps,
                        const VerdictOptions& opt = {});

std::string to_json(const StabilityReport& r);
std::string to_plain(const StabilityReport& r);

}  // namespace wcs
