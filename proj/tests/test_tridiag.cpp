#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <doctest.h>

#include "wcs/tridiag.hpp"

using namespace wcs;

namespace {

SymTridiag laplacian_1d(int N) {
  SymTridiag T;
  T.d.assign(N, 2.0);
  T.e.assign(N - 1, -1.0);
  return T;
}

// eigenpairs of the Dirichlet 1-D Laplacian stencil: 2 - 2 cos(k pi / (N+1)),
// eigenvector components sin(k pi i / (N+1))
double laplacian_eig(int N, int k) { return 2.0 - 2.0 * std::cos(k * M_PI / (N + 1)); }

}  // namespace

TEST_CASE("Toeplitz Laplacian eigenvalues match the closed form") {
  const int N = 50;
  const SymTridiag T = laplacian_1d(N);
  const auto ev = lowest_eigenvalues(T, N);
  REQUIRE(static_cast<int>(ev.size()) == N);
  for (int k = 1; k <= N; ++k)
    CHECK(ev[k - 1] == doctest::Approx(laplacian_eig(N, k)).epsilon(1e-12).scale(4.0));
  for (int k = 1; k < N; ++k) CHECK(ev[k - 1] < ev[k]);
}

TEST_CASE("Sturm count brackets the spectrum") {
  const int N = 20;
  const SymTridiag T = laplacian_1d(N);
  CHECK(count_below(T, -1.0) == 0);
  CHECK(count_below(T, 5.0) == N);
  const double mid = 0.5 * (laplacian_eig(N, 7) + laplacian_eig(N, 8));
  CHECK(count_below(T, mid) == 7);
}

TEST_CASE("inverse iteration recovers the sine profile") {
  const int N = 40;
  const SymTridiag T = laplacian_1d(N);
  const double lam = lowest_eigenvalues(T, 1)[0];
  const auto v = eigenvector(T, lam);
  REQUIRE(static_cast<int>(v.size()) == N);

  double norm2 = 0.0, dot = 0.0, ref_norm2 = 0.0;
  std::vector<double> ref(N);
  for (int i = 0; i < N; ++i) {
    ref[i] = std::sin((i + 1) * M_PI / (N + 1));
    norm2 += v[i] * v[i];
    dot += v[i] * ref[i];
    ref_norm2 += ref[i] * ref[i];
  }
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
  // alignment up to sign
  CHECK(std::abs(dot) / std::sqrt(ref_norm2) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("random matrices agree with a dense solver") {
  std::mt19937 rng(20240517);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const int N = 30;

  for (int trial = 0; trial < 5; ++trial) {
    SymTridiag T;
    T.d.resize(N);
    T.e.resize(N - 1);
    for (double& x : T.d) x = 3.0 * U(rng);
    for (double& x : T.e) x = U(rng);

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) M(i, i) = T.d[i];
    for (int i = 0; i + 1 < N; ++i) M(i, i + 1) = M(i + 1, i) = T.e[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(M);
    REQUIRE(dense.info() == Eigen::Success);

    const auto ev = lowest_eigenvalues(T, 4);
    const double scale = std::abs(dense.eigenvalues()(0)) + std::abs(dense.eigenvalues()(N - 1));
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(ev[k] - dense.eigenvalues()(k)) <= 1e-10 * scale);

    // residual || T v - lambda v || for the ground state
    const auto v = eigenvector(T, ev[0]);
    double res2 = 0.0;
    for (int i = 0; i < N; ++i) {
      double r = T.d[i] * v[i] - ev[0] * v[i];
      if (i > 0) r += T.e[i - 1] * v[i - 1];
      if (i + 1 < N) r += T.e[i] * v[i + 1];
      res2 += r * r;
    }
    CHECK(std::sqrt(res2) <= 1e-8 * scale);
  }
}

TEST_CASE("clustered eigenvalues stay orthogonal with deflation") {
  // two nearly degenerate low modes: block-diagonal pair of 1-D Laplacians
  // coupled weakly through one tiny off-diagonal entry
  const int half = 15, N = 2 * half;
  SymTridiag T;
  T.d.assign(N, 2.0);
  T.e.assign(N - 1, -1.0);
  T.e[half - 1] = 1e-9;

  const auto ev = lowest_eigenvalues(T, 2);
  CHECK(std::abs(ev[1] - ev[0]) < 1e-6);

  const auto v0 = eigenvector(T, ev[0]);
  const auto v1 = eigenvector(T, ev[1], {v0});
  double dot = 0.0;
  for (int i = 0; i < N; ++i) dot += v0[i] * v1[i];
  CHECK(std::abs(dot) <= 1e-8);
}
