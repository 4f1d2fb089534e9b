#pragma once

#include <functional>

namespace wcs {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

// Adaptive Gauss-Kronrod (G7/K15): repeatedly bisects the interval with the
// largest Kronrod error estimate until the summed estimate drops below
// max(abs_tol, rel_tol * |value|). Throws solver_error if the interval
// budget is exhausted first.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, double rel_tol = 1e-10,
                     int max_intervals = 4000);

}  // namespace wcs
