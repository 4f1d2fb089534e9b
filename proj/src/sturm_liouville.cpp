#include "wcs/sturm_liouville.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wcs/errors.hpp"
#include "wcs/ode.hpp"
#include "wcs/quadrature.hpp"
#include "wcs/tridiag.hpp"
#include "wcs/util.hpp"

namespace wcs {

namespace {

double max_lambda(const ConeDensity& d, int samples = 129) {
  double m = 0.0;
  for (double t : linspace(-d.eps, 0.0, samples)) m = std::max(m, d.lambda(t));
  return m;
}

// Fixes the overall sign: first interior sample carrying real mass positive.
void fix_sign(std::vector<double>& g) {
  double amp = 0.0;
  for (double v : g) amp = std::max(amp, std::abs(v));
  if (amp == 0.0) return;
  for (double v : g) {
    if (std::abs(v) > 1e-6 * amp) {
      if (v < 0.0)
        for (double& x : g) x = -x;
      return;
    }
  }
}

struct FdGrid {
  double h;
  std::vector<double> w;       // weight at interior nodes
  SymTridiag T;                // symmetrized generalized problem
};

FdGrid assemble(const ConeDensity& d, int interior) {
  const double eps = d.eps;
  const double h = eps / (interior + 1);
  FdGrid g;
  g.h = h;
  g.w.resize(interior);
  std::vector<double> p_half(interior + 1);
  for (int j = 0; j <= interior; ++j) p_half[j] = d.p(-eps + (j + 0.5) * h);
  std::vector<double> a(interior), b(std::max(0, interior - 1));
  for (int i = 0; i < interior; ++i) {
    const double ti = -eps + (i + 1) * h;
    g.w[i] = d.weight(ti);
    const double q = d.c * (d.n + 1) * d.p(ti);
    a[i] = (p_half[i] + p_half[i + 1]) / (h * h) - q;
    if (i + 1 < interior) b[i] = -p_half[i + 1] / (h * h);
  }
  g.T.d.resize(interior);
  g.T.e.resize(std::max(0, interior - 1));
  for (int i = 0; i < interior; ++i) g.T.d[i] = a[i] / g.w[i];
  for (int i = 0; i + 1 < interior; ++i) g.T.e[i] = b[i] / std::sqrt(g.w[i] * g.w[i + 1]);
  return g;
}

void check_ascending(const std::vector<double>& ev, const char* method) {
  for (std::size_t j = 1; j < ev.size(); ++j)
    if (!(ev[j] > ev[j - 1]))
      throw solver_error(std::string(method) + ": eigenvalues not strictly ascending");
}

}  // namespace

SturmLiouvilleProblem make_problem(const WarpedModel& model, double eps, int num_eigen,
                                   int grid_size) {
  if (num_eigen < 1) throw std::invalid_argument("make_problem: num_eigen must be >= 1");
  if (grid_size < 16) throw std::invalid_argument("make_problem: grid_size must be >= 16");
  if (grid_size < 16 * num_eigen)
    throw solver_error("make_problem: grid too coarse to resolve " + std::to_string(num_eigen) +
                       " eigenpairs (need grid_size >= " + std::to_string(16 * num_eigen) + ")");
  SturmLiouvilleProblem p{density(model, eps), num_eigen, grid_size};
  return p;
}

SpectralResult solve_fd(const SturmLiouvilleProblem& problem) {
  const ConeDensity& d = problem.density;
  const int m = problem.num_eigen;
  const int coarse_n = problem.grid_size;
  const int fine_n = 2 * coarse_n + 1;  // exactly halves the step

  FdGrid coarse = assemble(d, coarse_n);
  FdGrid fine = assemble(d, fine_n);
  std::vector<double> ev_coarse = lowest_eigenvalues(coarse.T, m);
  std::vector<double> ev_fine = lowest_eigenvalues(fine.T, m);
  check_ascending(ev_fine, "solve_fd");

  SpectralResult r;
  r.model_name = d.model_name;
  r.n = d.n;
  r.c = d.c;
  r.eps = d.eps;
  r.method = SolveMethod::finite_difference;
  r.grid_size = coarse_n;
  r.eigenvalues.resize(m);
  for (int j = 0; j < m; ++j)
    r.eigenvalues[j] = (4.0 * ev_fine[j] - ev_coarse[j]) / 3.0;
  check_ascending(r.eigenvalues, "solve_fd (extrapolated)");

  r.t.resize(fine_n + 2);
  for (int i = 0; i < fine_n + 2; ++i) r.t[i] = -d.eps + i * fine.h;
  r.t.back() = 0.0;
  r.weight.resize(r.t.size());
  for (std::size_t i = 0; i < r.t.size(); ++i) r.weight[i] = d.weight(r.t[i]);

  const double tscale = [&] {
    double s = 0.0;
    for (double v : fine.T.d) s = std::max(s, std::abs(v));
    return s > 0.0 ? s : 1.0;
  }();

  std::vector<std::vector<double>> prev;
  for (int j = 0; j < m; ++j) {
    std::vector<std::vector<double>> guard;
    for (int i = 0; i < j; ++i)
      if (std::abs(ev_fine[j] - ev_fine[i]) < 1e-6 * tscale) guard.push_back(prev[i]);
    std::vector<double> y = eigenvector(fine.T, ev_fine[j], guard,
                                        0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(j));
    prev.push_back(y);
    std::vector<double> g(fine_n + 2, 0.0);
    const double scale = 1.0 / std::sqrt(fine.h);
    for (int i = 0; i < fine_n; ++i) g[i + 1] = scale * y[i] / std::sqrt(fine.w[i]);
    fix_sign(g);
    r.eigenfunctions.push_back(std::move(g));
  }
  r.residuals.resize(m);
  for (int j = 0; j < m; ++j) r.residuals[j] = residual(d, r.eigenvalues[j], r.t, r.eigenfunctions[j]);
  return r;
}

namespace {

struct ShootOutcome {
  int zeros = 0;     // interior sign changes of g
  double g_end = 0;  // g(0), possibly rescaled by a positive factor
};

class Shooter {
 public:
  Shooter(const ConeDensity& d) : d_(d) {}

  ShootOutcome run(double delta) const {
    auto rhs = [&](double t, const std::array<double, 2>& y, std::array<double, 2>& dy) {
      const double lam = d_.lambda(t);
      const double lp = d_.lambda_prime(t);
      dy[0] = y[1];
      dy[1] = -d_.n * (lp / lam) * y[1] - (d_.c * (d_.n + 1) + delta / (lam * lam)) * y[0];
    };
    const int chunks = 64;
    const double eps = d_.eps;
    std::array<double, 2> y{0.0, 1.0};
    ShootOutcome out;
    double prev_sign = 0.0;
    auto observe = [&](double, const std::array<double, 2>&, double tn,
                       const std::array<double, 2>& yn) {
      if (tn >= -1e-14) return;  // endpoint zero is a boundary condition, not a node
      const double s = yn[0] > 0.0 ? 1.0 : (yn[0] < 0.0 ? -1.0 : 0.0);
      if (s != 0.0) {
        if (prev_sign != 0.0 && s != prev_sign) ++out.zeros;
        prev_sign = s;
      }
    };
    for (int k = 0; k < chunks; ++k) {
      const double a = -eps + eps * k / chunks;
      const double b = -eps + eps * (k + 1) / chunks;
      y = integrate_dopri<2>(rhs, a, b, y, 1e-10, 1e-14, (b - a), observe);
      const double amp = std::max(std::abs(y[0]), std::abs(y[1]));
      if (amp > 1e150) {  // rescale by a positive factor: zeros and signs survive
        y[0] /= amp;
        y[1] /= amp;
      }
    }
    out.g_end = y[0];
    return out;
  }

 private:
  const ConeDensity& d_;
};

}  // namespace

SpectralResult solve_shooting(const SturmLiouvilleProblem& problem, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_shooting: tol must be positive");
  const ConeDensity& d = problem.density;
  const int m = problem.num_eigen;
  Shooter shooter(d);

  const double lam_max = max_lambda(d);
  const double ceiling = d.c * (d.n + 1) * lam_max * lam_max +
                         std::pow(50.0 * M_PI / d.eps, 2);
  double floor = std::min(0.0, -d.c * (d.n + 1) * lam_max * lam_max) - 1.0;

  SpectralResult r;
  r.model_name = d.model_name;
  r.n = d.n;
  r.c = d.c;
  r.eps = d.eps;
  r.method = SolveMethod::shooting;
  r.grid_size = problem.grid_size;

  double lo_start = floor;
  for (int j = 1; j <= m; ++j) {
    double lo = lo_start;
    ShootOutcome at_lo = shooter.run(lo);
    if (at_lo.zeros > j - 1)
      throw solver_error("solve_shooting: lower scan point already oscillates");
    double hi = lo;
    double step = std::max(1.0, std::pow(M_PI / d.eps, 2));
    ShootOutcome at_hi = at_lo;
    while (at_hi.zeros < j) {
      hi += step;
      step *= 2.0;
      if (hi > ceiling)
        throw solver_error("solve_shooting: no bracket for eigenvalue " + std::to_string(j) +
                           " below ceiling " + fmt12(ceiling));
      at_hi = shooter.run(hi);
    }
    // Shrink until the bracket contains exactly the j-th eigenvalue.
    for (int iter = 0; (at_lo.zeros < j - 1 || at_hi.zeros > j) && iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      ShootOutcome at_mid = shooter.run(mid);
      if (at_mid.zeros >= j) {
        hi = mid;
        at_hi = at_mid;
      } else {
        lo = mid;
        at_lo = at_mid;
      }
    }
    const double s_lo = at_lo.g_end > 0.0 ? 1.0 : -1.0;
    const double s_hi = at_hi.g_end > 0.0 ? 1.0 : -1.0;
    if (s_lo == s_hi)
      throw solver_error("solve_shooting: endpoint value does not change sign across bracket");
    int iter = 0;
    while (hi - lo > tol && iter++ < 300) {
      const double mid = 0.5 * (lo + hi);
      const ShootOutcome at_mid = shooter.run(mid);
      const double s_mid = at_mid.g_end > 0.0 ? 1.0 : -1.0;
      if (s_mid == s_lo) lo = mid;
      else hi = mid;
    }
    r.eigenvalues.push_back(0.5 * (lo + hi));
    lo_start = hi;  // next eigenvalue lies above
  }
  check_ascending(r.eigenvalues, "solve_shooting");

  // Final pass: sample each certified eigenfunction on a uniform grid.
  const int interior = problem.grid_size;
  const double h = d.eps / (interior + 1);
  r.t.resize(interior + 2);
  for (int i = 0; i < interior + 2; ++i) r.t[i] = -d.eps + i * h;
  r.t.back() = 0.0;
  r.weight.resize(r.t.size());
  for (std::size_t i = 0; i < r.t.size(); ++i) r.weight[i] = d.weight(r.t[i]);
  for (int j = 0; j < m; ++j) {
    const double delta = r.eigenvalues[j];
    auto rhs = [&](double t, const std::array<double, 2>& y, std::array<double, 2>& dy) {
      const double lam = d.lambda(t);
      const double lp = d.lambda_prime(t);
      dy[0] = y[1];
      dy[1] = -d.n * (lp / lam) * y[1] - (d.c * (d.n + 1) + delta / (lam * lam)) * y[0];
    };
    std::vector<double> g(interior + 2, 0.0);
    std::array<double, 2> y{0.0, 1.0};
    for (int i = 0; i + 1 < interior + 2; ++i) {
      y = integrate_dopri<2>(rhs, r.t[i], r.t[i + 1], y, 1e-11, 1e-15, r.t[i + 1] - r.t[i],
                             [](double, const std::array<double, 2>&, double,
                                const std::array<double, 2>&) {});
      g[i + 1] = y[0];
    }
    g.back() = 0.0;  // certified boundary zero
    std::vector<double> wg2(interior + 2);
    for (int i = 0; i < interior + 2; ++i) wg2[i] = d.weight(r.t[i]) * g[i] * g[i];
    const double norm2 = simpson_samples(wg2, h);
    if (!(norm2 > 0.0)) throw solver_error("solve_shooting: eigenfunction has zero weighted norm");
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& v : g) v *= scale;
    fix_sign(g);
    r.eigenfunctions.push_back(std::move(g));
  }
  r.residuals.resize(m);
  for (int j = 0; j < m; ++j) r.residuals[j] = residual(d, r.eigenvalues[j], r.t, r.eigenfunctions[j]);
  return r;
}

double rayleigh_quotient_axial(const ConeDensity& d, const AxialFunction& g) {
  if (!g.value || !g.deriv)
    throw std::invalid_argument("rayleigh_quotient_axial: g needs value and deriv");
  double amp = 0.0;
  for (double t : linspace(-d.eps, 0.0, 33)) amp = std::max(amp, std::abs(g.value(t)));
  const double bc_tol = 1e-8 * std::max(1.0, amp);
  if (std::abs(g.value(-d.eps)) > bc_tol || std::abs(g.value(0.0)) > bc_tol)
    throw std::invalid_argument("rayleigh_quotient_axial: g must vanish at both endpoints");
  const double num = integrate(
                         [&](double t) {
                           const double gv = g.value(t), gp = g.deriv(t);
                           return d.p(t) * (gp * gp - d.c * (d.n + 1) * gv * gv);
                         },
                         -d.eps, 0.0)
                         .value;
  const double den = integrate(
                         [&](double t) {
                           const double gv = g.value(t);
                           return d.weight(t) * gv * gv;
                         },
                         -d.eps, 0.0)
                         .value;
  if (!(den > 0.0)) throw std::invalid_argument("rayleigh_quotient_axial: g is essentially zero");
  return num / den;
}

double residual(const ConeDensity& d, double delta, const std::vector<double>& t,
                const std::vector<double>& g) {
  const std::size_t m = t.size();
  if (m < 3 || g.size() != m)
    throw std::invalid_argument("residual: need matching sample arrays with >= 3 nodes");
  const double h = t[1] - t[0];
  for (std::size_t i = 1; i < m; ++i)
    if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * h)
      throw std::invalid_argument("residual: grid must be uniform");
  double max_res = 0.0, max_g = 0.0, max_w = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    max_g = std::max(max_g, std::abs(g[i]));
    max_w = std::max(max_w, d.weight(t[i]));
  }
  if (max_g == 0.0) throw std::invalid_argument("residual: g is identically zero");
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double pl = d.p(t[i] - 0.5 * h);
    const double pr = d.p(t[i] + 0.5 * h);
    const double div = (pr * (g[i + 1] - g[i]) - pl * (g[i] - g[i - 1])) / (h * h);
    const double res = div + d.c * (d.n + 1) * d.p(t[i]) * g[i] + delta * d.weight(t[i]) * g[i];
    max_res = std::max(max_res, std::abs(res));
  }
  return max_res / (max_g * max_w);
}

double weighted_inner(const SpectralResult& r, int i, int j) {
  if (i < 0 || j < 0 || i >= static_cast<int>(r.eigenfunctions.size()) ||
      j >= static_cast<int>(r.eigenfunctions.size()))
    throw std::invalid_argument("weighted_inner: index out of range");
  const double h = r.t[1] - r.t[0];
  std::vector<double> prod(r.t.size());
  for (std::size_t k = 0; k < r.t.size(); ++k)
    prod[k] = r.weight[k] * r.eigenfunctions[i][k] * r.eigenfunctions[j][k];
  return r.method == SolveMethod::finite_difference ? trapezoid_samples(prod, h)
                                                    : simpson_samples(prod, h);
}

std::string to_json(const SpectralResult& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model_name;
  j["n"] = r.n;
  j["c"] = round12(r.c);
  j["eps"] = round12(r.eps);
  j["method"] = r.method == SolveMethod::finite_difference ? "finite_difference" : "shooting";
  j["grid_size"] = r.grid_size;
  j["eigenvalues"] = nlohmann::ordered_json::array();
  for (double v : r.eigenvalues) j["eigenvalues"].push_back(round12(v));
  j["residuals"] = nlohmann::ordered_json::array();
  for (double v : r.residuals) j["residuals"].push_back(round12(v));
  return j.dump(2) + "\n";
}

std::string eigenfunctions_csv(const SpectralResult& r) {
  std::ostringstream out;
  out << "t";
  for (std::size_t j = 0; j < r.eigenfunctions.size(); ++j) out << ",g" << (j + 1);
  out << "\n";
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    out << fmt12(r.t[i]);
    for (const auto& g : r.eigenfunctions) out << "," << fmt12(g[i]);
    out << "\n";
  }
  return out.str();
}

}  // namespace wcs
