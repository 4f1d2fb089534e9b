#include "wcs/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "wcs/errors.hpp"

namespace wcs {

namespace {

double matrix_scale(const SymTridiag& T) {
  double s = 0.0;
  for (double v : T.d) s = std::max(s, std::abs(v));
  for (double v : T.e) s = std::max(s, std::abs(v));
  return s > 0.0 ? s : 1.0;
}

// Solves (T - shift*I) x = b with partial pivoting; the factorization keeps
// two superdiagonals because of row swaps.
void shifted_solve(const SymTridiag& T, double shift, std::vector<double>& x) {
  const int n = T.size();
  std::vector<double> diag(n), sup1(std::max(0, n - 1), 0.0), sup2(std::max(0, n - 2), 0.0),
      sub(std::max(0, n - 1), 0.0);
  for (int i = 0; i < n; ++i) diag[i] = T.d[i] - shift;
  for (int i = 0; i + 1 < n; ++i) {
    sup1[i] = T.e[i];
    sub[i] = T.e[i];
  }
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(sub[i]) > std::abs(diag[i])) {
      std::swap(diag[i], sub[i]);
      std::swap(sup1[i], diag[i + 1]);
      if (i + 2 < n) {
        sup2[i] = sup1[i + 1];
        sup1[i + 1] = 0.0;
      }
      std::swap(x[i], x[i + 1]);
    }
    double piv = diag[i];
    if (std::abs(piv) < tiny) piv = (piv < 0.0 ? -tiny : tiny);
    const double mult = sub[i] / piv;
    diag[i + 1] -= mult * sup1[i];
    if (i + 2 < n) sup1[i + 1] -= mult * sup2[i];
    x[i + 1] -= mult * x[i];
    diag[i] = piv;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    if (i + 1 < n) s -= sup1[i] * x[i + 1];
    if (i + 2 < n) s -= sup2[i] * x[i + 2];
    double piv = diag[i];
    if (std::abs(piv) < tiny) piv = (piv < 0.0 ? -tiny : tiny);
    x[i] = s / piv;
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

int count_below(const SymTridiag& T, double x) {
  const int n = T.size();
  if (n == 0) return 0;
  const double safe = std::numeric_limits<double>::min() * 4.0 /
                      std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = T.d[0] - x;
  if (q < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    double denom = q;
    if (std::abs(denom) < safe) denom = (denom < 0.0 ? -safe : safe);
    q = (T.d[i] - x) - T.e[i - 1] * T.e[i - 1] / denom;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const SymTridiag& T, int m) {
  const int n = T.size();
  if (m < 1 || m > n) throw std::invalid_argument("lowest_eigenvalues: bad m");
  // Gershgorin bounds.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(T.e[i - 1]);
    if (i + 1 < n) r += std::abs(T.e[i]);
    lo = std::min(lo, T.d[i] - r);
    hi = std::max(hi, T.d[i] + r);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(std::abs(lo), std::abs(hi));
  std::vector<double> out(m);
  for (int k = 1; k <= m; ++k) {
    double a = lo, b = hi;
    // Invariant: count_below(a) < k <= count_below(b).
    for (int iter = 0; iter < 200 && (b - a) > 2.0 * eps * scale; ++iter) {
      const double mid = 0.5 * (a + b);
      if (count_below(T, mid) >= k) b = mid;
      else a = mid;
    }
    out[k - 1] = 0.5 * (a + b);
  }
  return out;
}

std::vector<double> eigenvector(const SymTridiag& T, double eigenvalue,
                                const std::vector<std::vector<double>>& orthogonalize_against,
                                std::uint64_t seed) {
  const int n = T.size();
  const double scale = matrix_scale(T);
  // Tiny shift off the exact eigenvalue keeps the pivots finite.
  const double shift = eigenvalue + scale * std::numeric_limits<double>::epsilon() * 8.0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = uni(rng);

  auto orthogonalize = [&]() {
    for (const auto& w : orthogonalize_against) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += x[i] * w[i];
      for (int i = 0; i < n; ++i) x[i] -= dot * w[i];
    }
  };

  for (int iter = 0; iter < 4; ++iter) {
    orthogonalize();
    double nx = norm2(x);
    if (nx == 0.0) throw solver_error("eigenvector: start vector vanished");
    for (double& v : x) v /= nx;
    shifted_solve(T, shift, x);
    nx = norm2(x);
    if (!std::isfinite(nx) || nx == 0.0)
      throw solver_error("eigenvector: inverse iteration diverged");
    for (double& v : x) v /= nx;
  }
  orthogonalize();
  double nx = norm2(x);
  for (double& v : x) v /= nx;

  // Residual check: ||(T - eigenvalue) x|| should be a small multiple of
  // machine epsilon times the matrix scale.
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = (T.d[i] - eigenvalue) * x[i];
    if (i > 0) r += T.e[i - 1] * x[i - 1];
    if (i + 1 < n) r += T.e[i] * x[i + 1];
    res = std::max(res, std::abs(r));
  }
  if (res > 1e-8 * scale)
    throw solver_error("eigenvector: inverse iteration residual " + std::to_string(res) +
                       " too large for scale " + std::to_string(scale));
  return x;
}

}  // namespace wcs
