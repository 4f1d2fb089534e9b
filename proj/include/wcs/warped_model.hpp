#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace wcs {

// Warping data for an ambient warped product I x_f F^{n+1} of constant
// sectional curvature c whose fiber F has constant curvature k.
// The warping function must satisfy f''/f = -c and ((f')^2 - k)/f^2 = -c.
struct WarpedModel {
  std::string name;
  int n = 0;        // hypersurface dimension; the truncated cone has dimension n+1
  double c = 0.0;   // ambient sectional curvature
  double k = 0.0;   // fiber curvature (-1, 0, or 1)
  std::function<double(double)> f, f_prime, f_second;
  double interval_lo = 0.0;  // open interval of definition of f
  double interval_hi = 0.0;
  double eps_max = 0.0;      // sup of admissible truncation depths (may be +inf)
  bool validated = false;
};

// Safety margin below eps_max: solvers refuse eps > eps_max - EPS_GUARD to
// keep the weighted problem uniformly regular on [-eps, 0].
inline constexpr double EPS_GUARD = 1e-6;

// Axis restriction lambda(t) = f(t) on [-eps, 0] together with the powers the
// eigenvalue solvers need: p = lambda^n, weight = lambda^{n-2}.
struct ConeDensity {
  std::string model_name;
  int n = 0;
  double c = 0.0;
  double eps = 0.0;
  std::function<double(double)> f, f_prime;

  double lambda(double t) const { return f(t); }
  double lambda_prime(double t) const { return f_prime(t); }
  double p(double t) const { return std::pow(f(t), n); }
  double weight(double t) const { return std::pow(f(t), n - 2); }
};

// Built-in catalog: sphere, euclidean, hyperbolic_cosh, hyperbolic_exp, flat.
// The returned model is already validated. Throws std::invalid_argument for
// unknown names or n < 2.
WarpedModel builtin_model(const std::string& name, int n);

std::vector<std::string> builtin_model_names();

// Checks the two curvature identities on a 201-point grid (tolerance 1e-8)
// and positivity of f; sets model.validated. Throws verification_error with
// the offending t and residual otherwise.
void validate_model(WarpedModel& model);

// Key-value config file defining a custom model (see README for the format
// and the expression grammar). The result is validated.
WarpedModel load_model_config(const std::string& path);
WarpedModel parse_model_config(const std::string& text);

// Restriction to [-eps, 0]. Requires a validated model, 0 < eps, eps within
// the admissible range (eps <= eps_max - EPS_GUARD for finite eps_max), and
// f > 0 on [-eps, 0].
ConeDensity density(const WarpedModel& model, double eps);

}  // namespace wcs
