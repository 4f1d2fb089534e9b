#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wcs {

// Closed minimal hypersurface M^n inside the fiber F^{n+1}, with the data
// the stability criterion consumes. Catalog volumes are normalized to 1, so
// integral_A2 = ||A||^2 for the constant-||A||^2 entries.
struct MinimalHypersurface {
  enum class Kind { equator, clifford, flat_subtorus, custom };
  Kind kind = Kind::custom;
  std::string name;
  int n = 0;
  double fiber_k = 0.0;  // curvature of the fiber containing M
  bool totally_geodesic = false;
  bool normA2_constant = false;
  double normA2 = 0.0;       // valid when normA2_constant
  double integral_A2 = 0.0;  // integral of ||A||^2 over M (volume-normalized)
  double volume = 1.0;
  int clifford_p = 0, clifford_q = 0;
};

// Spectrum of L1 = -Delta - ||A||^2 together with the underlying Laplace
// eigenvalues (ascending, repeated with multiplicity).
struct HypersurfaceSpectrum {
  std::vector<double> laplace;
  std::vector<double> l1;
  std::string source;  // "exact_constant_A" or "catalog_formula"
};

// Catalog:
//   equator(n)        totally geodesic S^n in S^{n+1}, fiber_k = 1
//   clifford(p, q)    S^p(sqrt(p/n)) x S^q(sqrt(q/n)), p+q = n, fiber_k = 1
//   flat_subtorus(n)  totally geodesic T^n in T^{n+1}, fiber_k = 0
MinimalHypersurface equator_surface(int n);
MinimalHypersurface clifford_surface(int p, int q);
MinimalHypersurface flat_subtorus_surface(int n);

// CLI grammar: "equator" | "flat_subtorus" | "clifford:p,q"; the first two
// take their dimension from `n`.
MinimalHypersurface parse_surface_spec(const std::string& spec, std::optional<int> n);

std::vector<std::string> surface_catalog_names();

// First `count` Laplace eigenvalues of M with multiplicity.
std::vector<double> laplace_spectrum(const MinimalHypersurface& s, int count);

// lambda_i = mu_i - ||A||^2; requires constant ||A||^2.
HypersurfaceSpectrum l1_spectrum(const MinimalHypersurface& s, int count);

double lambda1(const MinimalHypersurface& s);

// Variational upper bound -(n+tau) * int ||A||^2 / int (||A||^2 + tau) from
// the test function (||A||^2 + tau)^{1/2}. Requires tau > 0, fiber_k = 1 and
// a non-totally-geodesic surface. Tends to -n as tau -> 0.
double simons_lambda1_bound(const MinimalHypersurface& s, double tau);

// Rayleigh quotient of L1 for a function given by coefficients in the
// Laplace eigenbasis: sum a_i^2 mu_i / sum a_i^2 - ||A||^2.
double rayleigh_quotient_surface(const MinimalHypersurface& s, const std::vector<double>& coeffs);

}  // namespace wcs
