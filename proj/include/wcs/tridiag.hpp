#pragma once

#include <cstdint>
#include <vector>

namespace wcs {

// Symmetric tridiagonal matrix: diagonal d[0..N-1], off-diagonal e[0..N-2]
// coupling rows i and i+1.
struct SymTridiag {
  std::vector<double> d;
  std::vector<double> e;
  int size() const { return static_cast<int>(d.size()); }
};

// Number of eigenvalues strictly below x (Sturm sequence sign count).
int count_below(const SymTridiag& T, double x);

// The m smallest eigenvalues, ascending, by bisection on the Sturm count
// (bracketed by Gershgorin bounds, refined to machine-level tolerance).
std::vector<double> lowest_eigenvalues(const SymTridiag& T, int m);

// Unit eigenvector for an eigenvalue estimate, by inverse iteration with a
// pivoted tridiagonal solve. `orthogonalize_against` guards clustered
// eigenvalues; seed fixes the start vector (deterministic).
std::vector<double> eigenvector(const SymTridiag& T, double eigenvalue,
                                const std::vector<std::vector<double>>& orthogonalize_against = {},
                                std::uint64_t seed = 0x9e3779b97f4a7c15ull);

}  // namespace wcs
