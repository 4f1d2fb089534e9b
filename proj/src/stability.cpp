#include "wcs/stability.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wcs/errors.hpp"
#include "wcs/quadrature.hpp"
#include "wcs/util.hpp"

namespace wcs {

double index_form(const SeparableVariation& v, const std::vector<double>& l1_eigenvalues,
                  const SpectralResult& axial) {
  const std::size_t rows = v.coeffs.size();
  if (rows == 0) throw std::invalid_argument("index_form: empty coefficient matrix");
  const std::size_t cols = v.coeffs[0].size();
  if (cols == 0 || cols > axial.eigenvalues.size())
    throw std::invalid_argument("index_form: coefficient columns exceed axial eigenvalues");
  if (rows > l1_eigenvalues.size())
    throw std::invalid_argument("index_form: coefficient rows exceed surface eigenvalues");

  std::vector<double> axial_norm(cols);
  for (std::size_t j = 0; j < cols; ++j)
    axial_norm[j] = weighted_inner(axial, static_cast<int>(j), static_cast<int>(j));

  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (v.coeffs[i].size() != cols)
      throw std::invalid_argument("index_form: ragged coefficient matrix");
    for (std::size_t j = 0; j < cols; ++j) {
      const double a = v.coeffs[i][j];
      total += a * a * (l1_eigenvalues[i] + axial.eigenvalues[j]) * axial_norm[j];
    }
  }
  return total;
}

double index_form(const SeparableVariation& v, const WarpedModel& model,
                  const MinimalHypersurface& s, double eps, int grid_size) {
  if (v.coeffs.empty()) throw std::invalid_argument("index_form: empty coefficient matrix");
  const int rows = static_cast<int>(v.coeffs.size());
  const int cols = static_cast<int>(v.coeffs[0].size());
  const std::vector<double> l1 = l1_spectrum(s, rows).l1;
  const SpectralResult axial = solve_fd(make_problem(model, eps, cols, grid_size));
  return index_form(v, l1, axial);
}

namespace {

double index_integrand(const ConeDensity& d, double mu_i, double normA2, double t, double g,
                       double gp, double gpp) {
  const double lam = d.lambda(t);
  const double lamp = d.lambda_prime(t);
  const double p = std::pow(lam, d.n);
  const double w = std::pow(lam, d.n - 2);
  return w * (mu_i - normA2) * g * g - d.c * (d.n + 1) * p * g * g -
         g * (p * gpp + d.n * std::pow(lam, d.n - 1) * lamp * gp);
}

}  // namespace

double index_form_quadrature(const ConeDensity& d, double mu_i, double normA2,
                             const AxialFunction& g) {
  if (!g.second) throw std::invalid_argument("index_form_quadrature: need second derivative");
  auto f = [&](double t) {
    return index_integrand(d, mu_i, normA2, t, g.value(t), g.deriv(t), g.second(t));
  };
  return integrate(f, -d.eps, 0.0).value;
}

double index_form_quadrature(const ConeDensity& d, double mu_i, double normA2,
                             const std::vector<double>& t, const std::vector<double>& g) {
  const std::size_t m = t.size();
  if (m < 7 || g.size() != m)
    throw std::invalid_argument("index_form_quadrature: need matching samples, at least 7");
  if (m % 2 == 0)
    throw std::invalid_argument("index_form_quadrature: need an odd sample count");
  const double h = (t.back() - t.front()) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (std::abs(t[i + 1] - t[i] - h) > 1e-9 * std::abs(h))
      throw std::invalid_argument("index_form_quadrature: non-uniform grid");

  // One pass at stride s (step s*h), differencing stride-s neighbours; the
  // endpoint derivative terms vanish with the Dirichlet data g = 0.
  auto pass = [&](std::size_t s) {
    const double step = h * static_cast<double>(s);
    std::vector<double> vals;
    vals.reserve((m - 1) / s + 1);
    for (std::size_t i = 0; i < m; i += s) {
      double gp = 0.0, gpp = 0.0;
      if (i >= s && i + s < m) {
        gp = (g[i + s] - g[i - s]) / (2.0 * step);
        gpp = (g[i + s] - 2.0 * g[i] + g[i - s]) / (step * step);
      }
      vals.push_back(index_integrand(d, mu_i, normA2, t[i], g[i], gp, gpp));
    }
    return simpson_samples(vals, step);
  };
  const double fine = pass(1);
  const double coarse = pass(2);
  return (4.0 * fine - coarse) / 3.0;
}

AxialFunction bound_test_function(int n, double eps) {
  if (n < 2) throw std::invalid_argument("bound_test_function: need n >= 2");
  if (!(eps > 0.0) || !(eps <= M_PI / 2))
    throw std::invalid_argument("bound_test_function: need 0 < eps <= pi/2");
  const double a = (n - 2) / 2.0;
  const double om = M_PI / eps;
  AxialFunction h;
  h.value = [a, om](double t) { return std::sin(om * t) * std::pow(std::cos(t), -a); };
  h.deriv = [a, om](double t) {
    const double s = std::sin(om * t), co = std::cos(om * t), tn = std::tan(t);
    return std::pow(std::cos(t), -a) * (om * co + a * tn * s);
  };
  h.second = [a, om](double t) {
    const double s = std::sin(om * t), co = std::cos(om * t), tn = std::tan(t);
    return std::pow(std::cos(t), -a) *
           (2.0 * a * tn * om * co + (a * a * tn * tn + a + a * tn * tn - om * om) * s);
  };
  return h;
}

BoundIntegrals bound_integrals(int n, double eps) {
  if (n < 2) throw std::invalid_argument("bound_integrals: need n >= 2");
  if (!(eps > 0.0) || !(eps <= M_PI / 2))
    throw std::invalid_argument("bound_integrals: need 0 < eps <= pi/2");
  const double om = M_PI / eps;
  const double b = (n - 2) / 2.0;
  BoundIntegrals r;
  r.i1 = integrate(
             [om, b](double t) {
               const double s = std::sin(om * t), co = std::cos(om * t);
               return om * om * co * co * std::cos(t) * std::cos(t) +
                      b * b * s * s * std::sin(t) * std::sin(t) +
                      0.5 * om * b * std::sin(2.0 * om * t) * std::sin(2.0 * t);
             },
             -eps, 0.0)
             .value;
  r.i2 = (n + 1) * integrate(
                       [om](double t) {
                         const double s = std::sin(om * t);
                         return std::cos(t) * std::cos(t) * s * s;
                       },
                       -eps, 0.0)
                       .value;
  r.i3 = integrate(
             [om](double t) {
               const double s = std::sin(om * t);
               return s * s;
             },
             -eps, 0.0)
             .value;
  return r;
}

BoundIntegrals bound_integrals_limit(int n) {
  if (n < 2) throw std::invalid_argument("bound_integrals_limit: need n >= 2");
  const double q = (n - 2) / 4.0;
  BoundIntegrals r;
  r.i1 = (M_PI / 2.0) * (1.0 + q * q);
  r.i2 = (n + 1) * M_PI / 8.0;
  r.i3 = M_PI / 4.0;
  return r;
}

double closed_form_sum_bound(int n) {
  return static_cast<double>(n) * n / 8.0 - 2.0 * n + 2.0;
}

int sum_bound_sign(int n) {
  const long long m = static_cast<long long>(n) * n - 16LL * n + 16LL;
  return (m > 0) - (m < 0);
}

StabilityReport verdict(const WarpedModel& model, const MinimalHypersurface& s, double eps,
                        const VerdictOptions& opt) {
  if (!model.validated) throw std::invalid_argument("verdict: model not validated");
  if (model.n != s.n)
    throw std::invalid_argument("verdict: model dimension n=" + std::to_string(model.n) +
                                " does not match surface n=" + std::to_string(s.n));
  if (model.k != static_cast<double>(s.fiber_k))
    throw std::invalid_argument("verdict: surface '" + s.name + "' lives in a fiber of curvature " +
                                std::to_string(s.fiber_k) + " but model '" + model.name +
                                "' has k=" + fmt12(model.k));

  StabilityReport r;
  r.model_name = model.name;
  r.surface_name = s.name;
  r.n = s.n;
  r.eps = eps;

  const SturmLiouvilleProblem prob = make_problem(model, eps, 1, opt.grid_size);
  const SpectralResult fd = solve_fd(prob);
  const SpectralResult sh = solve_shooting(prob, opt.shooting_tol);
  r.delta1_fd = fd.eigenvalues.at(0);
  r.delta1_shooting = sh.eigenvalues.at(0);
  r.methods_disagreement = std::abs(r.delta1_fd - r.delta1_shooting);
  const double thresh = std::max(opt.agreement_rel, opt.agreement_rel * std::abs(r.delta1_fd));
  if (r.methods_disagreement > thresh) {
    std::ostringstream os;
    os << "axial eigenvalue solvers disagree: fd=" << fmt12(r.delta1_fd)
       << " shooting=" << fmt12(r.delta1_shooting)
       << " disagreement=" << fmt12(r.methods_disagreement) << " threshold=" << fmt12(thresh);
    throw solver_error(os.str());
  }
  r.delta1 = r.delta1_fd;

  if (opt.lambda1_mode == "exact") {
    r.lambda1 = lambda1(s);
    r.lambda1_source = "exact";
  } else if (opt.lambda1_mode == "bound") {
    r.lambda1 = simons_lambda1_bound(s, 1e-9);
    r.lambda1_source = "simons_bound";
  } else {
    throw std::invalid_argument("verdict: unknown lambda1 mode '" + opt.lambda1_mode + "'");
  }

  r.sum = r.lambda1 + r.delta1;
  if (r.sum < 0.0) {
    r.verdict = "unstable";
  } else if (r.lambda1_source == "exact") {
    r.verdict = "stable_under_fixed_boundary_normal_variations";
  } else {
    r.verdict = "not_decided_by_criterion";
  }

  if (model.c == 1.0 && model.k == 1.0) {
    r.has_closed_form_bound = true;
    r.closed_form_bound = closed_form_sum_bound(s.n);
  }
  return r;
}

std::string to_json(const StabilityReport& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model_name;
  j["surface"] = r.surface_name;
  j["n"] = r.n;
  j["eps"] = round12(r.eps);
  j["lambda1"] = round12(r.lambda1);
  j["lambda1_source"] = r.lambda1_source;
  j["delta1"] = round12(r.delta1);
  j["delta1_fd"] = round12(r.delta1_fd);
  j["delta1_shooting"] = round12(r.delta1_shooting);
  j["methods_disagreement"] = round12(r.methods_disagreement);
  j["sum"] = round12(r.sum);
  j["verdict"] = r.verdict;
  if (r.has_closed_form_bound)
    j["paper_bound"] = round12(r.closed_form_bound);
  else
    j["paper_bound"] = nullptr;
  return j.dump(2);
}

std::string to_plain(const StabilityReport& r) {
  std::ostringstream os;
  os << "model       " << r.model_name << "  n=" << r.n << "  eps=" << fmt12(r.eps) << "\n";
  os << "surface     " << r.surface_name << "\n";
  os << "lambda1     " << fmt12(r.lambda1) << "  (" << r.lambda1_source << ")\n";
  os << "delta1      " << fmt12(r.delta1) << "  (fd/shooting disagreement "
     << fmt12(r.methods_disagreement) << ")\n";
  os << "sum         " << fmt12(r.sum) << "\n";
  os << "verdict     " << r.verdict << "\n";
  if (r.verdict == "stable_under_fixed_boundary_normal_variations")
    os << "            (no destabilizing normal variation with fixed boundary exists:"
          " lambda1 + delta1 >= 0)\n";
  if (r.has_closed_form_bound)
    os << "paper_bound " << fmt12(r.closed_form_bound) << "\n";
  return os.str();
}

}  // namespace wcs
