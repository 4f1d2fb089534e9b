#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "wcs/errors.hpp"
#include "wcs/sturm_liouville.hpp"
#include "wcs/util.hpp"
#include "wcs/warped_model.hpp"

using namespace wcs;

namespace {

double flat_delta(int j, double eps) { return (j * M_PI / eps) * (j * M_PI / eps); }

// Euler equation for the euclidean model (lambda = 1 + t): eigenvalues
// (n-1)^2/4 + omega_j^2 with omega_j = j pi / ln(1/(1-eps)) and eigenfunctions
// (1+t)^{-(n-1)/2} sin(omega_j ln(1+t)).
double euclid_delta(int n, int j, double eps) {
  const double w = j * M_PI / std::log(1.0 / (1.0 - eps));
  return 0.25 * (n - 1.0) * (n - 1.0) + w * w;
}

AxialFunction euclid_eigenfunction(int n, int j, double eps) {
  const double a = -0.5 * (n - 1.0);
  const double w = j * M_PI / std::log(1.0 / (1.0 - eps));
  AxialFunction g;
  g.value = [a, w](double t) {
    const double x = 1.0 + t;
    return std::pow(x, a) * std::sin(w * std::log(x));
  };
  g.deriv = [a, w](double t) {
    const double x = 1.0 + t, s = std::log(x);
    return std::pow(x, a - 1.0) * (a * std::sin(w * s) + w * std::cos(w * s));
  };
  g.second = [a, w](double t) {
    const double x = 1.0 + t, s = std::log(x);
    return std::pow(x, a - 2.0) *
           ((a * (a - 1.0) - w * w) * std::sin(w * s) + w * (2.0 * a - 1.0) * std::cos(w * s));
  };
  return g;
}

}  // namespace

TEST_CASE("flat model reproduces the sine spectrum with both methods") {
  for (int n : {2, 3, 5}) {
    const WarpedModel m = builtin_model("flat", n);
    for (double eps : {0.3, 1.0, 2.5}) {
      const auto prob = make_problem(m, eps, 3);
      const auto fd = solve_fd(prob);
      const auto sh = solve_shooting(prob);
      REQUIRE(fd.eigenvalues.size() == 3);
      REQUIRE(sh.eigenvalues.size() == 3);
      for (int j = 1; j <= 3; ++j) {
        const double exact = flat_delta(j, eps);
        CHECK(std::abs(fd.eigenvalues[j - 1] - exact) <= 1e-6 * exact);
        CHECK(std::abs(sh.eigenvalues[j - 1] - exact) <= 1e-6 * exact);
      }
    }
  }
}

TEST_CASE("euclidean model: Euler closed form as an independent oracle") {
  // The closed form is validated on its own terms before it judges the
  // solvers: the exact eigenfunction must reproduce the eigenvalue through
  // the Rayleigh quotient and annihilate the conservative-form residual.
  const int n = 4;
  const double eps = 0.7;
  const WarpedModel m = builtin_model("euclidean", n);
  const ConeDensity d = density(m, eps);
  for (int j : {1, 2}) {
    const double exact = euclid_delta(n, j, eps);
    const AxialFunction g = euclid_eigenfunction(n, j, eps);
    CHECK(std::abs(rayleigh_quotient_axial(d, g) - exact) <= 1e-9 * exact);

    const auto tt = linspace(-eps, 0.0, 2001);
    std::vector<double> gv(tt.size());
    for (std::size_t i = 0; i < tt.size(); ++i) gv[i] = g.value(tt[i]);
    CHECK(residual(d, exact, tt, gv) <= 1e-5);
    CHECK(residual(d, exact + 1.0, tt, gv) >= 0.1);  // wrong eigenvalue is loud
  }

  for (int nn : {2, 5, 8}) {
    const WarpedModel mm = builtin_model("euclidean", nn);
    for (double ee : {0.3, 0.5, 0.9}) {
      const auto prob = make_problem(mm, ee, 2);
      const auto fd = solve_fd(prob);
      const auto sh = solve_shooting(prob);
      for (int j : {1, 2}) {
        const double exact = euclid_delta(nn, j, ee);
        CHECK(std::abs(fd.eigenvalues[j - 1] - exact) <= 1e-6 * exact);
        CHECK(std::abs(sh.eigenvalues[j - 1] - exact) <= 1e-6 * exact);
      }
    }
  }
}

TEST_CASE("finite differences and shooting agree across the catalog") {
  for (const std::string& name : builtin_model_names()) {
    for (int n : {2, 3, 8, 15}) {
      const WarpedModel m = builtin_model(name, n);
      const double top = std::isfinite(m.eps_max) ? m.eps_max : 3.0;
      for (double frac : {0.25, 0.6, 0.85}) {
        const double eps = frac * top;
        const auto prob = make_problem(m, eps, 1);
        const double fd = solve_fd(prob).eigenvalues[0];
        const double sh = solve_shooting(prob).eigenvalues[0];
        CHECK(std::abs(fd - sh) <= 1e-6 * std::max(1.0, std::abs(fd)));
      }
    }
  }
  // deep sphere truncation: the weight cos^{n-2} nearly vanishes at -eps
  const WarpedModel sphere = builtin_model("sphere", 14);
  const auto prob = make_problem(sphere, M_PI / 2 - 0.01, 1);
  const double fd = solve_fd(prob).eigenvalues[0];
  const double sh = solve_shooting(prob).eigenvalues[0];
  CHECK(std::abs(fd - sh) <= 1e-6 * std::max(1.0, std::abs(fd)));
}

TEST_CASE("eigenfunctions: normalization, orthogonality, sign, boundary") {
  const WarpedModel m = builtin_model("sphere", 3);
  const auto prob = make_problem(m, 1.2, 3);
  for (const auto& r : {solve_fd(prob), solve_shooting(prob)}) {
    REQUIRE(r.eigenfunctions.size() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(r.eigenfunctions[i].front() == 0.0);
      CHECK(r.eigenfunctions[i].back() == 0.0);
      CHECK(r.eigenfunctions[i][1] > 0.0);
      for (int j = 0; j < 3; ++j) {
        const double expect = (i == j) ? 1.0 : 0.0;
        CHECK(std::abs(weighted_inner(r, i, j) - expect) <= 1e-8);
      }
    }
    // stencil truncation on point samples scales like h^2 times the mode's
    // fourth derivative; 1e-3 still separates cleanly from a wrong eigenvalue
    for (double res : r.residuals) CHECK(res <= 1e-3);
  }
}

TEST_CASE("random admissible variations never beat the ground state") {
  const WarpedModel m = builtin_model("sphere", 3);
  const double eps = 1.2;
  const ConeDensity d = density(m, eps);
  const double delta1 = solve_fd(make_problem(m, eps, 1, 2048)).eigenvalues[0];

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(4);
    for (double& x : a) x = U(rng);
    a[trial % 4] += 0.5;  // keep the combination away from zero
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
    CHECK(rayleigh_quotient_axial(d, g) >= delta1 - 1e-6 * (1.0 + std::abs(delta1)));
  }
}

TEST_CASE("first eigenvalue decreases strictly as the cone deepens") {
  const WarpedModel m = builtin_model("sphere", 3);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {0.3, 0.6, 0.9, 1.2, 1.5}) {
    const double d1 = solve_fd(make_problem(m, eps)).eigenvalues[0];
    CHECK(d1 < prev);
    prev = d1;
  }
}

TEST_CASE("report serialization is deterministic and complete") {
  const WarpedModel m = builtin_model("euclidean", 3);
  const auto prob = make_problem(m, 0.5, 2, 128);
  const auto r1 = solve_fd(prob);
  const auto r2 = solve_fd(prob);
  CHECK(to_json(r1) == to_json(r2));
  CHECK(eigenfunctions_csv(r1) == eigenfunctions_csv(r2));

  const std::string json = to_json(r1);
  CHECK(json.find("\"model\": \"euclidean\"") != std::string::npos);
  CHECK(json.find("\"method\": \"finite_difference\"") != std::string::npos);
  CHECK(json.find("\"grid_size\": 128") != std::string::npos);

  const std::string csv = eigenfunctions_csv(r1);
  CHECK(csv.rfind("t,g1,g2\n", 0) == 0);
  CHECK(csv.back() == '\n');

  const auto sh = solve_shooting(prob);
  CHECK(to_json(sh).find("\"method\": \"shooting\"") != std::string::npos);
}

TEST_CASE("inadmissible truncation depths are refused") {
  const WarpedModel sphere = builtin_model("sphere", 3);
  CHECK_THROWS_AS(make_problem(sphere, M_PI / 2), std::invalid_argument);
  CHECK_THROWS_AS(make_problem(sphere, -0.5), std::invalid_argument);
  const WarpedModel euc = builtin_model("euclidean", 3);
  CHECK_THROWS_AS(make_problem(euc, 1.0), std::invalid_argument);
}
