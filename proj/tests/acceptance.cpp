// Acceptance gate: seven end-to-end checks against frozen mathematical
// oracles, one pass/fail line each. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "wcs/cone_geometry.hpp"
#include "wcs/hypersurface.hpp"
#include "wcs/stability.hpp"
#include "wcs/sturm_liouville.hpp"
#include "wcs/sweep.hpp"
#include "wcs/warped_model.hpp"

using namespace wcs;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s - criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. flat model: delta_j = (j pi / eps)^2, both solvers, < 1 s per solve.
void criterion1() {
  double worst_rel = 0.0, worst_time = 0.0;
  bool pass = true;
  for (int n : {2, 5, 10}) {
    const WarpedModel m = builtin_model("flat", n);
    for (double eps : {0.3, 0.5, 1.0}) {
      const double exact = (M_PI / eps) * (M_PI / eps);
      const auto prob = make_problem(m, eps, 1, 1024);

      auto t0 = std::chrono::steady_clock::now();
      const double fd = solve_fd(prob).eigenvalues[0];
      worst_time = std::max(worst_time, seconds_since(t0));

      t0 = std::chrono::steady_clock::now();
      const double sh = solve_shooting(prob).eigenvalues[0];
      worst_time = std::max(worst_time, seconds_since(t0));

      worst_rel = std::max(worst_rel, std::abs(fd - exact) / exact);
      worst_rel = std::max(worst_rel, std::abs(sh - exact) / exact);
    }
  }
  pass = worst_rel <= 1e-6 && worst_time < 1.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max rel err %.3g, max solve %.3g s", worst_rel, worst_time);
  report(1, pass, "flat-model spectrum matches (j pi / eps)^2 under both solvers", buf);
}

// 2. euclidean model: Euler closed form, plus the n <= 5 instability window
// from the eps -> 1 limit in exact integer arithmetic.
void criterion2() {
  double worst_rel = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const WarpedModel m = builtin_model("euclidean", n);
    for (double eps : {0.3, 0.5, 0.9}) {
      const double om = M_PI / std::log(1.0 / (1.0 - eps));
      const double exact = 0.25 * (n - 1.0) * (n - 1.0) + om * om;
      const auto prob = make_problem(m, eps, 1, 1024);
      const double fd = solve_fd(prob).eigenvalues[0];
      const double sh = solve_shooting(prob).eigenvalues[0];
      worst_rel = std::max(worst_rel, std::abs(fd - exact) / exact);
      worst_rel = std::max(worst_rel, std::abs(sh - exact) / exact);
    }
  }
  bool window_ok = true;
  for (int n = 2; n <= 30; ++n) {
    const bool unstable_in_limit = (n - 1) * (n - 1) < 4 * n;  // (n-1)^2/4 - n < 0
    if (unstable_in_limit != (n <= 5)) window_ok = false;
  }
  const bool pass = worst_rel <= 1e-6 && window_ok;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max rel err %.3g, limit window %s", worst_rel,
                window_ok ? "= {2..5}" : "WRONG");
  report(2, pass, "euclidean-model spectrum matches the Euler closed form", buf);
}

// 3. the three estimate integrals at eps = pi/2 and the sign window of the
// closed-form bound n^2/8 - 2n + 2.
void criterion3() {
  double worst_rel = 0.0;
  for (int n = 2; n <= 16; ++n) {
    const BoundIntegrals q = bound_integrals(n, M_PI / 2);
    const BoundIntegrals lim = bound_integrals_limit(n);
    worst_rel = std::max(worst_rel, std::abs(q.i1 - lim.i1) / lim.i1);
    worst_rel = std::max(worst_rel, std::abs(q.i2 - lim.i2) / lim.i2);
    worst_rel = std::max(worst_rel, std::abs(q.i3 - lim.i3) / lim.i3);
  }
  bool sign_ok = true;
  for (int n = 2; n <= 30; ++n) {
    if ((sum_bound_sign(n) < 0) != (n >= 2 && n <= 14)) sign_ok = false;
    const double b = closed_form_sum_bound(n);
    if (((b > 0.0) - (b < 0.0)) != sum_bound_sign(n)) sign_ok = false;
  }
  const bool pass = worst_rel <= 1e-8 && sign_ok;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max rel err %.3g, bound negative exactly for 2<=n<=14: %s",
                worst_rel, sign_ok ? "yes" : "NO");
  report(3, pass, "estimate integrals at eps = pi/2 and exact sign window", buf);
}

// 4. spherical cones over balanced clifford tori at eps = pi/2 - 0.01 are
// unstable for every n in 2..14; full sweep under 30 s.
void criterion4() {
  RunConfig cfg;
  cfg.model = "sphere";
  cfg.surface_family = "clifford";
  cfg.n_min = 2;
  cfg.n_max = 14;
  cfg.eps_values = {M_PI / 2 - 0.01};
  cfg.grid_size = 1024;

  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = sweep_serial(cfg);
  const double elapsed = seconds_since(t0);

  bool pass = elapsed < 30.0 && r.cells.size() == 13;
  double worst_dis = 0.0;
  for (const SweepCell& c : r.cells) {
    if (!c.ok || c.report.verdict != "unstable" || c.report.sum >= 0.0) pass = false;
    if (c.ok && c.report.lambda1 != -static_cast<double>(c.n)) pass = false;
    if (c.ok) worst_dis = std::max(worst_dis, c.report.methods_disagreement);
  }
  if (worst_dis > 1e-6) pass = false;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "13 cells, max fd/shooting gap %.3g, sweep %.2f s", worst_dis,
                elapsed);
  report(4, pass, "deep spherical cones over clifford tori are unstable for n = 2..14", buf);
}

// 5. finite-difference geometry of the cone over clifford(1,1) in S^4.
void criterion5() {
  const ConeImmersion cone = cone_over(clifford_surface(1, 1));
  const auto u = default_chart_point(cone);
  const double root2 = std::sqrt(2.0);

  bool pass = true;
  double worst_scaling = 0.0, worst_H = 0.0, worst_density = 0.0, worst_ratio = 1e30;
  for (double t : {-0.3, -0.6}) {
    const auto s = fd_shape_operator(cone, t, u, 1e-4);
    worst_scaling = std::max(worst_scaling, std::abs(s.normA * std::cos(t) - root2));
    worst_H = std::max(worst_H, std::abs(s.mean_curvature));
    worst_density = std::max(
        worst_density,
        std::abs(fd_volume_density(cone, t, u, 1e-4) - std::pow(std::cos(t), 2)));

    // truncation-dominated residual: volume density against cos^2 t
    const double e_coarse =
        std::abs(fd_volume_density(cone, t, u, 2e-3) - std::pow(std::cos(t), 2));
    const double e_fine =
        std::abs(fd_volume_density(cone, t, u, 1e-3) - std::pow(std::cos(t), 2));
    if (!(e_fine > 0.0)) {
      pass = false;
      continue;
    }
    worst_ratio = std::min(worst_ratio, e_coarse / e_fine);
  }
  if (worst_scaling > 1e-4 || worst_H > 1e-4 || worst_density > 1e-5 || worst_ratio < 3.5)
    pass = false;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "scaling err %.3g, |H| %.3g, density err %.3g, halving ratio %.2f", worst_scaling,
                worst_H, worst_density, worst_ratio);
  report(5, pass, "cone geometry identities over clifford(1,1)", buf);
}

// 6. index form of separable variations factors through the two spectra.
void criterion6() {
  bool pass = true;
  double worst = 0.0;

  // flat cylinder, closed-form axial eigenfunctions
  {
    const WarpedModel m = builtin_model("flat", 3);
    const MinimalHypersurface s = flat_subtorus_surface(3);
    const double eps = 1.0;
    const ConeDensity d = density(m, eps);
    const auto spec = l1_spectrum(s, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        const double om = j * M_PI / eps;
        const double scale = std::sqrt(2.0 / eps);
        AxialFunction g;
        g.value = [om, scale, eps](double t) { return scale * std::sin(om * (t + eps)); };
        g.deriv = [om, scale, eps](double t) { return scale * om * std::cos(om * (t + eps)); };
        g.second = [om, scale, eps](double t) {
          return -scale * om * om * std::sin(om * (t + eps));
        };
        const double quad = index_form_quadrature(d, spec.laplace[i], s.normA2, g);
        const double factored = spec.l1[i] + om * om;  // unit weighted norm
        const double err = std::abs(quad - factored);
        worst = std::max(worst, err / std::max(1e-2, std::abs(factored)));
        if (err > std::max(1e-8, 1e-6 * std::abs(factored))) pass = false;
      }
  }
  // spherical cone over clifford(1,1), sampled FD eigenfunctions
  {
    const WarpedModel m = builtin_model("sphere", 2);
    const MinimalHypersurface s = clifford_surface(1, 1);
    const double eps = 1.2;
    const ConeDensity d = density(m, eps);
    const auto spec = l1_spectrum(s, 2);
    const SpectralResult axial = solve_fd(make_problem(m, eps, 2, 1024));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double quad = index_form_quadrature(d, spec.laplace[i], s.normA2, axial.t,
                                                  axial.eigenfunctions[j]);
        const double factored =
            (spec.l1[i] + axial.eigenvalues[j]) * weighted_inner(axial, j, j);
        const double err = std::abs(quad - factored);
        worst = std::max(worst, err / std::max(1e-2, std::abs(factored)));
        if (err > std::max(1e-8, 1e-6 * std::abs(factored))) pass = false;
      }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max rel mismatch %.3g", worst);
  report(6, pass, "index form factors as (lambda_i + delta_j) ||f_i||^2 ||g_j||^2", buf);
}

// 7. property suites: orthogonality, variational floor, monotonicity,
// byte-identical reports.
void criterion7() {
  bool pass = true;
  std::string detail;

  // (a) weighted orthonormality under both solvers
  double worst_orth = 0.0;
  {
    const auto prob = make_problem(builtin_model("sphere", 3), 1.2, 3, 1024);
    for (const auto& r : {solve_fd(prob), solve_shooting(prob)})
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          worst_orth = std::max(
              worst_orth, std::abs(weighted_inner(r, i, j) - (i == j ? 1.0 : 0.0)));
    if (worst_orth > 1e-8) pass = false;
  }

  // (b) 100 random admissible variations per problem never beat delta_1
  double worst_gap = 0.0;  // delta1 - RQ, should stay <= 1e-8
  {
    struct Problem {
      const char* model;
      int n;
      double eps;
    };
    std::mt19937 rng(987654321);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (const Problem& pr : {Problem{"sphere", 3, 1.2}, Problem{"euclidean", 4, 0.7}}) {
      const WarpedModel m = builtin_model(pr.model, pr.n);
      const ConeDensity d = density(m, pr.eps);
      const double delta1 = solve_fd(make_problem(m, pr.eps, 1, 2048)).eigenvalues[0];
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(4);
        for (double& x : a) x = U(rng);
        a[trial % 4] += 0.5;
        const double eps = pr.eps;
        AxialFunction g;
        g.value = [a, eps](double t) {
          double s = 0.0;
          for (int k = 1; k <= 4; ++k) s += a[k - 1] * std::sin(k * M_PI * (t + eps) / eps);
          return s;
        };
        g.deriv = [a, eps](double t) {
          double s = 0.0;
          for (int k = 1; k <= 4; ++k)
            s += a[k - 1] * (k * M_PI / eps) * std::cos(k * M_PI * (t + eps) / eps);
          return s;
        };
        worst_gap = std::max(worst_gap, delta1 - rayleigh_quotient_axial(d, g));
      }
    }
    if (worst_gap > 1e-8) pass = false;
  }

  // (c) delta_1 strictly decreasing in eps on every tested grid
  bool monotone = true;
  {
    struct Grid {
      const char* model;
      int n;
      std::vector<double> eps;
    };
    for (const Grid& g : {Grid{"sphere", 3, {0.3, 0.6, 0.9, 1.2, 1.5}},
                          Grid{"flat", 2, {0.5, 1.0, 1.5, 2.0}},
                          Grid{"euclidean", 5, {0.2, 0.4, 0.6, 0.8}}}) {
      double prev = std::numeric_limits<double>::infinity();
      for (double eps : g.eps) {
        const double d1 = solve_fd(make_problem(builtin_model(g.model, g.n), eps)).eigenvalues[0];
        if (!(d1 < prev)) monotone = false;
        prev = d1;
      }
    }
    if (!monotone) pass = false;
  }

  // (d) byte-identical reports for a fixed configuration
  bool deterministic = true;
  {
    RunConfig cfg;
    cfg.model = "sphere";
    cfg.surface_family = "clifford";
    cfg.n_min = 2;
    cfg.n_max = 4;
    cfg.eps_values = {0.9, 1.4};
    cfg.grid_size = 256;
    const SweepResult r1 = sweep_serial(cfg);
    const SweepResult r2 = sweep_serial(cfg);
    if (sweep_csv(r1) != sweep_csv(r2) || sweep_json(r1) != sweep_json(r2)) deterministic = false;

    const auto prob = make_problem(builtin_model("sphere", 2), 1.0, 2, 256);
    if (to_json(solve_fd(prob)) != to_json(solve_fd(prob))) deterministic = false;
    if (eigenfunctions_csv(solve_shooting(prob)) != eigenfunctions_csv(solve_shooting(prob)))
      deterministic = false;
    if (!deterministic) pass = false;
  }

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "orthogonality %.3g, variational gap %.3g, monotone %s, deterministic %s",
                worst_orth, worst_gap, monotone ? "yes" : "NO", deterministic ? "yes" : "NO");
  report(7, pass, "spectral property suites", buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  return failures == 0 ? 0 : 1;
}
