#include "wcs/cone_geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "wcs/errors.hpp"
#include "wcs/util.hpp"

namespace wcs {

namespace {

// Spherical coordinates on S^p in R^{p+1}; nondegenerate while sin(u_i) != 0
// for i < p.
void spherical_chart(int p, const double* u, double* x) {
  double sines = 1.0;
  for (int i = 0; i < p; ++i) {
    x[i] = sines * std::cos(u[i]);
    sines *= std::sin(u[i]);
  }
  x[p] = sines;
}

Eigen::VectorXd chart_eval(const ConeImmersion& c, const std::vector<double>& u) {
  std::vector<double> x(c.base_ambient);
  c.chart(u, x);
  return Eigen::Map<Eigen::VectorXd>(x.data(), c.base_ambient);
}

// FD tangents of Phi at (t, u): column 0 is the axial direction, then the
// n chart directions. Steps of size h in every coordinate.
Eigen::MatrixXd fd_tangents(const ConeImmersion& c, double t, const std::vector<double>& u,
                            double h) {
  const int dim = c.base_ambient + 1;
  Eigen::MatrixXd V(dim, c.n + 1);
  V.col(0) = (cone_point(c, t + h, u) - cone_point(c, t - h, u)) / (2.0 * h);
  std::vector<double> up = u, um = u;
  for (int i = 0; i < c.n; ++i) {
    up[i] += h;
    um[i] -= h;
    V.col(i + 1) = (cone_point(c, t, up) - cone_point(c, t, um)) / (2.0 * h);
    up[i] = u[i];
    um[i] = u[i];
  }
  return V;
}

// Unit null vector of span{Phi, tangents}; orientation not yet fixed.
Eigen::VectorXd raw_normal(const ConeImmersion& c, double t, const std::vector<double>& u,
                           double h) {
  const int dim = c.base_ambient + 1;
  Eigen::MatrixXd rows(c.n + 2, dim);
  rows.row(0) = cone_point(c, t, u).transpose();
  rows.bottomRows(c.n + 1) = fd_tangents(c, t, u, h).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(c.n + 1) > 1e-6 * sv(0)))
    throw verification_error("fd_normal: chart is degenerate at the requested point (sigma_min=" +
                             fmt12(sv(c.n + 1)) + ")");
  return svd.matrixV().col(dim - 1);
}

}  // namespace

Eigen::VectorXd cone_point(const ConeImmersion& c, double t, const std::vector<double>& u) {
  if (static_cast<int>(u.size()) != c.n)
    throw std::invalid_argument("cone_point: chart point has wrong dimension");
  Eigen::VectorXd x = chart_eval(c, u);
  Eigen::VectorXd phi(c.base_ambient + 1);
  phi.head(c.base_ambient) = std::cos(t) * x;
  phi(c.base_ambient) = std::sin(t);
  return phi;
}

Eigen::VectorXd fd_normal(const ConeImmersion& c, double t, const std::vector<double>& u,
                          double h) {
  Eigen::VectorXd ref = raw_normal(c, 0.0, u, h);
  // Deterministic orientation of the reference: largest component positive.
  int imax = 0;
  for (int i = 1; i < ref.size(); ++i)
    if (std::abs(ref(i)) > std::abs(ref(imax))) imax = i;
  if (ref(imax) < 0.0) ref = -ref;
  Eigen::VectorXd nrm = raw_normal(c, t, u, h);
  if (nrm.dot(ref) < 0.0) nrm = -nrm;
  return nrm;
}

ShapeOperatorSample fd_shape_operator(const ConeImmersion& c, double t,
                                      const std::vector<double>& u, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_shape_operator: h must be positive");
  const int m = c.n + 1;
  Eigen::MatrixXd V = fd_tangents(c, t, u, h);
  Eigen::MatrixXd G = V.transpose() * V;

  ShapeOperatorSample out;
  out.metric_block_max = 0.0;
  for (int i = 1; i < m; ++i) out.metric_block_max = std::max(out.metric_block_max, std::abs(G(0, i)));

  // dN along every coordinate direction, all stencil normals consistently
  // oriented (fd_normal aligns against the t=0 reference).
  Eigen::MatrixXd dN(V.rows(), m);
  dN.col(0) = (fd_normal(c, t + h, u, h) - fd_normal(c, t - h, u, h)) / (2.0 * h);
  std::vector<double> up = u, um = u;
  for (int i = 0; i < c.n; ++i) {
    up[i] += h;
    um[i] -= h;
    dN.col(i + 1) = (fd_normal(c, t, up, h) - fd_normal(c, t, um, h)) / (2.0 * h);
    up[i] = u[i];
    um[i] = u[i];
  }

  Eigen::MatrixXd b = -(dN.transpose() * V);  // second fundamental form, coordinates

  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw verification_error("fd_shape_operator: induced metric is not positive definite");
  // Orthonormal frame E = V L^{-T} (Gram-Schmidt order: axial first), so the
  // Weingarten matrix in that frame is L^{-1} b L^{-T}.
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd A = L.triangularView<Eigen::Lower>().solve(b);
  A = L.triangularView<Eigen::Lower>().solve(A.transpose()).transpose();

  out.asymmetry = (A - A.transpose()).cwiseAbs().maxCoeff();
  out.A = 0.5 * (A + A.transpose());
  out.normA = out.A.norm();
  out.mean_curvature = out.A.trace();
  out.axial_row_norm = out.A.row(0).norm();
  return out;
}

double fd_mean_curvature(const ConeImmersion& c, double t, const std::vector<double>& u,
                         double h) {
  return fd_shape_operator(c, t, u, h).mean_curvature;
}

double fd_volume_density(const ConeImmersion& c, double t, const std::vector<double>& u,
                         double h) {
  Eigen::MatrixXd V = fd_tangents(c, t, u, h);
  Eigen::MatrixXd G = V.transpose() * V;
  Eigen::MatrixXd V0 = fd_tangents(c, 0.0, u, h);
  // Base block at t = 0: chart directions only.
  Eigen::MatrixXd G0 = V0.rightCols(c.n).transpose() * V0.rightCols(c.n);
  const double det_full = G.determinant();
  const double det_base = G0.determinant();
  if (!(det_base > 0.0))
    throw verification_error("fd_volume_density: degenerate base metric");
  return std::sqrt(det_full / det_base);
}

ConeImmersion cone_over(const MinimalHypersurface& s) {
  if (s.fiber_k != 1.0)
    throw std::invalid_argument("cone_over: only spherical-fiber surfaces have catalog charts");
  ConeImmersion c;
  c.name = s.name;
  c.n = s.n;
  c.base_ambient = s.n + 2;
  if (s.kind == MinimalHypersurface::Kind::equator) {
    const int n = s.n;
    c.chart = [n](const std::vector<double>& u, std::vector<double>& x) {
      spherical_chart(n, u.data(), x.data());
      x[n + 1] = 0.0;  // equator of S^{n+1}
    };
  } else if (s.kind == MinimalHypersurface::Kind::clifford) {
    const int p = s.clifford_p, q = s.clifford_q, n = s.n;
    const double rp = std::sqrt(static_cast<double>(p) / n);
    const double rq = std::sqrt(static_cast<double>(q) / n);
    c.chart = [p, q, rp, rq](const std::vector<double>& u, std::vector<double>& x) {
      spherical_chart(p, u.data(), x.data());
      spherical_chart(q, u.data() + p, x.data() + p + 1);
      for (int i = 0; i <= p; ++i) x[i] *= rp;
      for (int i = p + 1; i <= p + q + 1; ++i) x[i] *= rq;
    };
  } else {
    throw std::invalid_argument("cone_over: no chart for surface '" + s.name + "'");
  }
  return c;
}

ConeImmersion cone_over_latitude_circle(double r) {
  if (!(r > 0.0 && r < 1.0 + 1e-12))
    throw std::invalid_argument("cone_over_latitude_circle: need 0 < r <= 1");
  ConeImmersion c;
  c.name = "latitude_circle(r=" + fmt12(r) + ")";
  c.n = 1;
  c.base_ambient = 3;
  const double z = std::sqrt(std::max(0.0, 1.0 - r * r));
  c.chart = [r, z](const std::vector<double>& u, std::vector<double>& x) {
    x[0] = r * std::cos(u[0]);
    x[1] = r * std::sin(u[0]);
    x[2] = z;
  };
  return c;
}

std::vector<double> default_chart_point(const ConeImmersion& c) {
  // Mid-latitude angles keep every spherical factor away from its poles.
  std::vector<double> u(c.n);
  for (int i = 0; i < c.n; ++i) u[i] = 1.1 + 0.13 * i;
  return u;
}

double laplacian_splitting_residual(const WarpedModel& model, double mu, const AxialFunction& h,
                                    double eps, int grid_size) {
  if (!model.validated) throw std::invalid_argument("laplacian_splitting_residual: model not validated");
  if (!h.value || !h.deriv || !h.second)
    throw std::invalid_argument("laplacian_splitting_residual: h needs value, deriv and second");
  if (grid_size < 8) throw std::invalid_argument("laplacian_splitting_residual: grid too small");
  if (!(eps > 0.0)) throw std::invalid_argument("laplacian_splitting_residual: eps must be > 0");

  const int n = model.n;
  auto pn = [&](double t) { return std::pow(model.f(t), n); };

  // Conservative reconstruction (f^n h')'/f^n on a uniform grid with
  // `interior` nodes; evaluated at node index i (1-based over the interior).
  auto route_b = [&](int interior, int i) {
    const double step = eps / (interior + 1);
    const double t = -eps + i * step;
    const double hm = h.value(t - step), h0 = h.value(t), hp = h.value(t + step);
    const double div = (pn(t + 0.5 * step) * (hp - h0) - pn(t - 0.5 * step) * (h0 - hm)) /
                       (step * step);
    const double f = model.f(t);
    return -mu * h0 / (f * f) + div / pn(t);
  };

  const int coarse = grid_size;
  const int fine = 2 * coarse + 1;  // halves the step; coarse node i = fine node 2i
  double max_res = 0.0;
  for (int i = 1; i <= coarse; ++i) {
    const double t = -eps + i * eps / (coarse + 1);
    const double f = model.f(t);
    const double a = -mu * h.value(t) / (f * f) +
                     n * (model.f_prime(t) / f) * h.deriv(t) + h.second(t);
    const double b = (4.0 * route_b(fine, 2 * i) - route_b(coarse, i)) / 3.0;
    max_res = std::max(max_res, std::abs(a - b));
  }
  return max_res;
}

}  // namespace wcs
