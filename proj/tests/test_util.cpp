#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "wcs/util.hpp"

using namespace wcs;

TEST_CASE("fmt12 pins 12 significant digits") {
  CHECK(fmt12(0.1) == "0.1");
  CHECK(fmt12(-2.0) == "-2");
  CHECK(fmt12(4.0 * M_PI * M_PI) == "39.4784176044");
  CHECK(fmt12(M_PI) == "3.14159265359");
  CHECK(fmt12(INFINITY) == "inf");
  CHECK(fmt12(-INFINITY) == "-inf");
  CHECK(fmt12(1.5e-300) == "1.5e-300");
}

TEST_CASE("round12 is the reparsed printed value") {
  CHECK(round12(M_PI) == doctest::Approx(M_PI).epsilon(1e-11));
  CHECK(round12(round12(M_PI)) == round12(M_PI));  // idempotent
  CHECK(round12(-2.0) == -2.0);
}

TEST_CASE("trapezoid is exact on linear data") {
  for (int m : {2, 5, 17}) {
    std::vector<double> y;
    const double dt = 1.0 / (m - 1);
    for (int i = 0; i < m; ++i) y.push_back(2.0 * i * dt + 1.0);
    CHECK(trapezoid_samples(y, dt) == doctest::Approx(2.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(trapezoid_samples({1.0}, 0.1), std::invalid_argument);
}

TEST_CASE("simpson is exact on cubics, both parities") {
  for (int m : {5, 6, 9, 12}) {  // odd m = even interval count; even m uses a 3/8 tail
    std::vector<double> y;
    const double dt = 1.0 / (m - 1);
    for (int i = 0; i < m; ++i) {
      const double x = i * dt;
      y.push_back(x * x * x);
    }
    CHECK(simpson_samples(y, dt) == doctest::Approx(0.25).epsilon(1e-13));
  }
  CHECK_THROWS_AS(simpson_samples({1.0, 2.0}, 0.1), std::invalid_argument);
}

TEST_CASE("simpson converges at fourth order on sin") {
  std::vector<double> y;
  const int m = 33;
  const double dt = M_PI / (m - 1);
  for (int i = 0; i < m; ++i) y.push_back(std::sin(i * dt));
  CHECK(simpson_samples(y, dt) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("linspace") {
  const std::vector<double> g = linspace(-1.0, 2.0, 7);
  REQUIRE(g.size() == 7);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 2.0);
  for (int i = 0; i + 1 < 7; ++i)
    CHECK(g[i + 1] - g[i] == doctest::Approx(0.5).epsilon(1e-14));
}
