#include "wcs/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wcs/errors.hpp"
#include "wcs/util.hpp"

namespace wcs {

namespace {

// Dimension of the degree-l spherical harmonic space on S^p:
// C(l+p, p) - C(l-2+p, p). Capped to keep the expansion finite.
double harmonic_multiplicity(int p, int l) {
  auto choose = [](int a, int b) -> double {
    if (a < b || b < 0) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  return choose(l + p, p) - choose(l - 2 + p, p);
}

struct Level {
  double mu;
  double mult;
};

void expand_levels(std::vector<Level> levels, int count, std::vector<double>& out) {
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.mu < b.mu; });
  out.clear();
  for (const Level& lv : levels) {
    long long m = static_cast<long long>(std::min<double>(lv.mult, count));
    for (long long i = 0; i < m && static_cast<int>(out.size()) < count; ++i) out.push_back(lv.mu);
    if (static_cast<int>(out.size()) >= count) return;
  }
  throw solver_error("laplace_spectrum: enumeration bound too small for requested count");
}

// Number of lattice vectors k in Z^n with |k|^2 = m.
std::vector<double> lattice_counts(int n, int max_m) {
  std::vector<double> ways(max_m + 1, 0.0), next(max_m + 1, 0.0);
  ways[0] = 1.0;
  for (int d = 0; d < n; ++d) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int m = 0; m <= max_m; ++m) {
      if (ways[m] == 0.0) continue;
      next[m] += ways[m];  // k_d = 0
      for (int j = 1; j * j + m <= max_m; ++j) next[m + j * j] += 2.0 * ways[m];
    }
    ways.swap(next);
  }
  return ways;
}

}  // namespace

MinimalHypersurface equator_surface(int n) {
  if (n < 1) throw std::invalid_argument("equator: n must be >= 1");
  MinimalHypersurface s;
  s.kind = MinimalHypersurface::Kind::equator;
  s.name = "equator";
  s.n = n;
  s.fiber_k = 1.0;
  s.totally_geodesic = true;
  s.normA2_constant = true;
  s.normA2 = 0.0;
  s.integral_A2 = 0.0;
  s.volume = 1.0;
  return s;
}

MinimalHypersurface clifford_surface(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("clifford: p, q must be >= 1");
  MinimalHypersurface s;
  s.kind = MinimalHypersurface::Kind::clifford;
  s.name = "clifford(" + std::to_string(p) + "," + std::to_string(q) + ")";
  s.n = p + q;
  s.fiber_k = 1.0;
  s.totally_geodesic = false;
  s.normA2_constant = true;
  s.normA2 = static_cast<double>(s.n);
  s.integral_A2 = static_cast<double>(s.n);
  s.volume = 1.0;
  s.clifford_p = p;
  s.clifford_q = q;
  return s;
}

MinimalHypersurface flat_subtorus_surface(int n) {
  if (n < 1) throw std::invalid_argument("flat_subtorus: n must be >= 1");
  MinimalHypersurface s;
  s.kind = MinimalHypersurface::Kind::flat_subtorus;
  s.name = "flat_subtorus";
  s.n = n;
  s.fiber_k = 0.0;
  s.totally_geodesic = true;
  s.normA2_constant = true;
  s.normA2 = 0.0;
  s.integral_A2 = 0.0;
  s.volume = 1.0;
  return s;
}

MinimalHypersurface parse_surface_spec(const std::string& spec, std::optional<int> n) {
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  if (name == "clifford") {
    if (colon == std::string::npos)
      throw std::invalid_argument("surface spec: clifford needs ':p,q'");
    const std::string args = spec.substr(colon + 1);
    const std::size_t comma = args.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("surface spec: clifford needs ':p,q'");
    const int p = std::stoi(args.substr(0, comma));
    const int q = std::stoi(args.substr(comma + 1));
    if (n && *n != p + q)
      throw std::invalid_argument("surface spec: clifford p+q = " + std::to_string(p + q) +
                                  " disagrees with n = " + std::to_string(*n));
    return clifford_surface(p, q);
  }
  if (colon != std::string::npos)
    throw std::invalid_argument("surface spec: only clifford takes parameters");
  if (name == "equator") {
    if (!n) throw std::invalid_argument("surface spec: equator needs --n");
    return equator_surface(*n);
  }
  if (name == "flat_subtorus") {
    if (!n) throw std::invalid_argument("surface spec: flat_subtorus needs --n");
    return flat_subtorus_surface(*n);
  }
  throw std::invalid_argument("unknown surface '" + name + "'");
}

std::vector<std::string> surface_catalog_names() {
  return {"equator", "clifford:p,q", "flat_subtorus"};
}

std::vector<double> laplace_spectrum(const MinimalHypersurface& s, int count) {
  if (count < 1) throw std::invalid_argument("laplace_spectrum: count must be >= 1");
  std::vector<double> out;
  switch (s.kind) {
    case MinimalHypersurface::Kind::equator: {
      std::vector<Level> levels;
      for (int l = 0; l <= count + 2; ++l)
        levels.push_back({static_cast<double>(l) * (l + s.n - 1), harmonic_multiplicity(s.n, l)});
      expand_levels(std::move(levels), count, out);
      break;
    }
    case MinimalHypersurface::Kind::clifford: {
      const int p = s.clifford_p, q = s.clifford_q, n = s.n;
      const int amax = std::max(60, count + 2);
      std::vector<Level> levels;
      for (int a = 0; a <= amax; ++a)
        for (int b = 0; b <= amax; ++b) {
          const double mu = static_cast<double>(a) * (a + p - 1) * n / p +
                            static_cast<double>(b) * (b + q - 1) * n / q;
          levels.push_back({mu, harmonic_multiplicity(p, a) * harmonic_multiplicity(q, b)});
        }
      // Everything missing from the enumeration lies above this threshold.
      const double boundary =
          std::min(static_cast<double>(amax + 1) * (amax + p) * n / p,
                   static_cast<double>(amax + 1) * (amax + q) * n / q);
      expand_levels(std::move(levels), count, out);
      if (out.back() >= boundary)
        throw solver_error("laplace_spectrum: clifford enumeration bound reached");
      break;
    }
    case MinimalHypersurface::Kind::flat_subtorus: {
      // Unit torus R^n / (2 pi Z)^n: eigenvalues |k|^2, k in Z^n.
      int max_m = 16;
      for (;;) {
        std::vector<double> counts = lattice_counts(s.n, max_m);
        std::vector<Level> levels;
        double total = 0.0;
        for (int m = 0; m <= max_m; ++m)
          if (counts[m] > 0.0) {
            levels.push_back({static_cast<double>(m), counts[m]});
            total += std::min(counts[m], static_cast<double>(count));
          }
        if (total >= count) {
          expand_levels(std::move(levels), count, out);
          break;
        }
        max_m *= 2;
        if (max_m > 1 << 20) throw solver_error("laplace_spectrum: torus enumeration too deep");
      }
      break;
    }
    case MinimalHypersurface::Kind::custom:
      throw std::invalid_argument("laplace_spectrum: no spectrum generator for custom surface '" +
                                  s.name + "'");
  }
  return out;
}

HypersurfaceSpectrum l1_spectrum(const MinimalHypersurface& s, int count) {
  if (!s.normA2_constant)
    throw std::invalid_argument("l1_spectrum: surface '" + s.name +
                                "' does not have constant ||A||^2");
  HypersurfaceSpectrum spec;
  spec.laplace = laplace_spectrum(s, count);
  spec.l1.resize(spec.laplace.size());
  for (std::size_t i = 0; i < spec.laplace.size(); ++i) spec.l1[i] = spec.laplace[i] - s.normA2;
  spec.source = (s.normA2 > 0.0) ? "exact_constant_A" : "catalog_formula";
  return spec;
}

double lambda1(const MinimalHypersurface& s) { return l1_spectrum(s, 1).l1[0]; }

double simons_lambda1_bound(const MinimalHypersurface& s, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("simons_lambda1_bound: tau must be > 0");
  if (s.fiber_k != 1.0)
    throw std::invalid_argument("simons_lambda1_bound: only defined for fiber_k = 1");
  if (s.totally_geodesic || !(s.integral_A2 > 0.0))
    throw std::invalid_argument(
        "simons_lambda1_bound: surface is totally geodesic; the test function degenerates");
  return -(s.n + tau) * s.integral_A2 / (s.integral_A2 + tau * s.volume);
}

double rayleigh_quotient_surface(const MinimalHypersurface& s, const std::vector<double>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("rayleigh_quotient_surface: empty coefficients");
  if (!s.normA2_constant)
    throw std::invalid_argument("rayleigh_quotient_surface: needs constant ||A||^2");
  std::vector<double> mu = laplace_spectrum(s, static_cast<int>(coeffs.size()));
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    num += coeffs[i] * coeffs[i] * mu[i];
    den += coeffs[i] * coeffs[i];
  }
  if (!(den > 0.0)) throw std::invalid_argument("rayleigh_quotient_surface: all coefficients zero");
  return num / den - s.normA2;
}

}  // namespace wcs
