#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "wcs/errors.hpp"

namespace wcs {

// Dormand-Prince 5(4) adaptive integrator for small fixed-size systems.
// rhs(t, y, dydt); observer(t_prev, y_prev, t_new, y_new) runs after each
// accepted step. Throws solver_error on step underflow.
template <std::size_t N, class Rhs, class Observer>
std::array<double, N> integrate_dopri(Rhs&& rhs, double t0, double t1,
                                      std::array<double, N> y, double rtol, double atol,
                                      double h_max, Observer&& observer) {
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0, e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                          e4 = 125.0 / 192.0 - 393.0 / 640.0,
                          e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                          e6 = 11.0 / 84.0 - 187.0 / 2100.0, e7 = -1.0 / 40.0;

  if (!(t1 > t0)) throw std::invalid_argument("integrate_dopri: need t1 > t0");
  const double span = t1 - t0;
  double h = std::min(h_max, span / 16.0);
  const double h_min = span * 1e-14;

  std::array<double, N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  rhs(t0, y, k1);
  double t = t0;

  while (t < t1) {
    h = std::min(h, t1 - t);
    if (h < h_min) throw solver_error("integrate_dopri: step underflow at t=" + std::to_string(t));

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + h / 5.0, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + 3.0 * h / 10.0, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + 4.0 * h / 5.0, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + 8.0 * h / 9.0, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(ei) / sc);
    }

    if (err <= 1.0) {
      observer(t, y, t + h, ynew);
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
    }
    const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
    h = std::min(h, h_max);
  }
  return y;
}

}  // namespace wcs
