#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "wcs/hypersurface.hpp"
#include "wcs/sturm_liouville.hpp"
#include "wcs/warped_model.hpp"

namespace wcs {

// Spherical cone over a parametrized base surface: the base chart maps
// u in R^n to x(u) on S^{n+1} in R^{n+2}, and the cone point is
// Phi(t, u) = (cos t * x(u), sin t) on S^{n+2} in R^{n+3}.
struct ConeImmersion {
  std::string name;
  int n = 0;             // base dimension
  int base_ambient = 0;  // n+2
  std::function<void(const std::vector<double>&, std::vector<double>&)> chart;
};

// Catalog charts (fiber_k = 1 surfaces only: equator and clifford).
ConeImmersion cone_over(const MinimalHypersurface& s);

// Cone over the latitude circle S^1(r) in S^2; non-minimal for r != 1.
ConeImmersion cone_over_latitude_circle(double r);

// A chart point away from coordinate degeneracies.
std::vector<double> default_chart_point(const ConeImmersion& c);

Eigen::VectorXd cone_point(const ConeImmersion& c, double t, const std::vector<double>& u);

// Unit normal of the cone inside S^{n+2} by central-difference tangents and
// an SVD null vector; sign aligned with the (deterministically oriented)
// normal at t = 0.
Eigen::VectorXd fd_normal(const ConeImmersion& c, double t, const std::vector<double>& u, double h);

struct ShapeOperatorSample {
  Eigen::MatrixXd A;         // Weingarten matrix in the orthonormalized frame,
                             // axial direction first; symmetrized
  double normA = 0.0;        // Frobenius norm ||A||
  double mean_curvature = 0.0;
  double axial_row_norm = 0.0;    // |A e_t|, zero in exact arithmetic
  double metric_block_max = 0.0;  // max |<dPhi/dt, dPhi/du_i>|
  double asymmetry = 0.0;         // max |b - b^T| before symmetrization
};

// Central-difference Weingarten map at (t, u) with step h.
ShapeOperatorSample fd_shape_operator(const ConeImmersion& c, double t,
                                      const std::vector<double>& u, double h);

double fd_mean_curvature(const ConeImmersion& c, double t, const std::vector<double>& u, double h);

// sqrt(det) of the FD induced metric of Phi at (t, u) divided by the base
// surface density at t = 0; equals cos^n t for these cones.
double fd_volume_density(const ConeImmersion& c, double t, const std::vector<double>& u, double h);

// Consistency of the warped splitting of the Laplacian on separable
// functions phi(point) * h(t) with -Delta phi = mu phi: compares
//   -mu h / f^2 + n (f'/f) h' + h''            (analytic derivatives)
// against the same expression with the axial part rebuilt through the
// conservative discretization (f^n h')'/f^n used by the FD solver,
// Richardson-extrapolated from grids N and 2N+1. Returns the max residual
// over interior nodes of the coarse grid.
double laplacian_splitting_residual(const WarpedModel& model, double mu, const AxialFunction& h,
                                    double eps, int grid_size);

}  // namespace wcs
