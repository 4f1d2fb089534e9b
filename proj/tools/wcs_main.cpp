#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wcs/cone_geometry.hpp"
#include "wcs/errors.hpp"
#include "wcs/hypersurface.hpp"
#include "wcs/stability.hpp"
#include "wcs/sturm_liouville.hpp"
#include "wcs/sweep.hpp"
#include "wcs/util.hpp"
#include "wcs/warped_model.hpp"

namespace {

using nlohmann::ordered_json;

int default_grid() {
  const char* s = std::getenv("WCS_DEFAULT_GRID");
  if (!s) return 1024;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (!end || *end != '\0' || v < 16 || v > 1000000)
    throw std::invalid_argument("WCS_DEFAULT_GRID must be an integer in [16, 1000000]");
  return static_cast<int>(v);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed: '" + out_path + "'");
}

// JSON has no inf; model intervals may be unbounded.
ordered_json json_num(double v) {
  if (std::isfinite(v)) return ordered_json(wcs::round12(v));
  return ordered_json(v > 0 ? "inf" : "-inf");
}

wcs::WarpedModel resolve_model(const std::string& name, const std::string& config_path,
                               std::optional<int> n) {
  if (!config_path.empty()) {
    wcs::WarpedModel m = wcs::load_model_config(config_path);
    if (n) m.n = *n;  // flags win over the config file
    return m;
  }
  if (!n) throw std::invalid_argument("--n is required with a builtin model");
  return wcs::builtin_model(name, *n);
}

struct CheckRow {
  std::string name;
  double value = 0.0;
  std::optional<double> expected;
  std::optional<double> error;
  double tolerance = 0.0;
  std::optional<double> error_half_h;
  std::optional<double> halving_ratio;
  bool pass = false;
};

ordered_json check_json(const CheckRow& c) {
  ordered_json j;
  j["name"] = c.name;
  j["value"] = wcs::round12(c.value);
  if (c.expected) j["expected"] = wcs::round12(*c.expected);
  if (c.error) j["error"] = wcs::round12(*c.error);
  j["tolerance"] = wcs::round12(c.tolerance);
  if (c.error_half_h) j["error_half_h"] = wcs::round12(*c.error_half_h);
  if (c.halving_ratio) j["halving_ratio"] = json_num(*c.halving_ratio);
  j["pass"] = c.pass;
  return j;
}

std::string check_plain(const CheckRow& c) {
  std::ostringstream os;
  os << c.name << "  value=" << wcs::fmt12(c.value);
  if (c.expected) os << "  expected=" << wcs::fmt12(*c.expected);
  if (c.error) os << "  error=" << wcs::fmt12(*c.error);
  os << "  tolerance=" << wcs::fmt12(c.tolerance);
  if (c.halving_ratio) os << "  halving_ratio=" << wcs::fmt12(*c.halving_ratio);
  os << (c.pass ? "  PASS" : "  FAIL");
  return os.str();
}

int run_models(const std::string& config, const std::string& format, const std::string& out) {
  std::vector<wcs::WarpedModel> list;
  for (const std::string& name : wcs::builtin_model_names())
    list.push_back(wcs::builtin_model(name, 2));
  if (!config.empty()) list.push_back(wcs::load_model_config(config));
  std::ostringstream os;
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const wcs::WarpedModel& m : list) {
      ordered_json j;
      j["name"] = m.name;
      j["c"] = wcs::round12(m.c);
      j["k"] = wcs::round12(m.k);
      j["interval"] = ordered_json::array({json_num(m.interval_lo), json_num(m.interval_hi)});
      j["eps_max"] = json_num(m.eps_max);
      j["validated"] = m.validated;
      arr.push_back(j);
    }
    os << arr.dump(2);
  } else {
    for (const wcs::WarpedModel& m : list)
      os << m.name << "  c=" << wcs::fmt12(m.c) << "  k=" << wcs::fmt12(m.k) << "  interval=("
         << wcs::fmt12(m.interval_lo) << ", " << wcs::fmt12(m.interval_hi)
         << ")  eps_max=" << wcs::fmt12(m.eps_max) << (m.validated ? "  validated" : "") << "\n";
  }
  emit(os.str(), out);
  return 0;
}

int run_surfaces(std::optional<int> n, int count, const std::string& format,
                 const std::string& out) {
  std::ostringstream os;
  if (!n) {
    if (format == "json") {
      ordered_json arr = ordered_json::array();
      for (const std::string& name : wcs::surface_catalog_names()) arr.push_back(name);
      os << arr.dump(2);
    } else {
      os << "equator          totally geodesic S^n in S^(n+1); needs --n\n"
         << "clifford:p,q     S^p(sqrt(p/n)) x S^q(sqrt(q/n)), n = p+q; ||A||^2 = n\n"
         << "flat_subtorus    totally geodesic T^n in T^(n+1) (flat fiber); needs --n\n";
    }
    emit(os.str(), out);
    return 0;
  }
  std::vector<wcs::MinimalHypersurface> list;
  list.push_back(wcs::equator_surface(*n));
  if (*n >= 2) list.push_back(wcs::clifford_surface((*n + 1) / 2, *n - (*n + 1) / 2));
  list.push_back(wcs::flat_subtorus_surface(*n));
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const wcs::MinimalHypersurface& s : list) {
      const wcs::HypersurfaceSpectrum sp = wcs::l1_spectrum(s, count);
      ordered_json j;
      j["surface"] = s.name;
      j["n"] = s.n;
      ordered_json ev = ordered_json::array();
      for (double v : sp.l1) ev.push_back(wcs::round12(v));
      j["eigenvalues"] = ev;
      j["source"] = sp.source;
      j["fiber_k"] = wcs::round12(s.fiber_k);
      j["normA2"] = wcs::round12(s.normA2);
      arr.push_back(j);
    }
    os << arr.dump(2);
  } else {
    for (const wcs::MinimalHypersurface& s : list)
      os << s.name << "  n=" << s.n << "  fiber_k=" << wcs::fmt12(s.fiber_k)
         << "  ||A||^2=" << wcs::fmt12(s.normA2) << "  lambda1=" << wcs::fmt12(wcs::lambda1(s))
         << "\n";
  }
  emit(os.str(), out);
  return 0;
}

int run_delta1(const std::string& model_name, const std::string& config, std::optional<int> n,
               double eps, int count, int grid, double tol, const std::string& method,
               const std::string& format, const std::string& out) {
  const wcs::WarpedModel model = resolve_model(model_name, config, n);
  const wcs::SturmLiouvilleProblem prob = wcs::make_problem(model, eps, count, grid);
  std::optional<wcs::SpectralResult> fd, sh;
  if (method != "shooting") fd = wcs::solve_fd(prob);
  if (method != "fd") sh = wcs::solve_shooting(prob, tol);
  const wcs::SpectralResult& primary = fd ? *fd : *sh;
  double disagreement = 0.0;
  if (fd && sh)
    for (int j = 0; j < count; ++j)
      disagreement =
          std::max(disagreement, std::abs(fd->eigenvalues[j] - sh->eigenvalues[j]));
  std::ostringstream os;
  if (format == "json") {
    if (fd && sh) {
      ordered_json j;
      j["fd"] = ordered_json::parse(wcs::to_json(*fd));
      j["shooting"] = ordered_json::parse(wcs::to_json(*sh));
      j["max_disagreement"] = wcs::round12(disagreement);
      os << j.dump(2);
    } else {
      os << wcs::to_json(primary);
    }
  } else if (format == "csv") {
    os << wcs::eigenfunctions_csv(primary);
  } else {
    for (int j = 0; j < count; ++j)
      os << "delta" << (j + 1) << " = " << wcs::fmt12(primary.eigenvalues[j]) << "\n";
    if (fd && sh)
      os << "# fd/shooting max disagreement = " << wcs::fmt12(disagreement) << "\n";
  }
  emit(os.str(), out);
  return 0;
}

int run_lambda1(const std::string& spec, std::optional<int> n, int count,
                const std::string& format, const std::string& out) {
  const wcs::MinimalHypersurface s = wcs::parse_surface_spec(spec, n);
  const wcs::HypersurfaceSpectrum sp = wcs::l1_spectrum(s, count);
  std::ostringstream os;
  if (format == "json") {
    ordered_json j;
    j["surface"] = s.name;
    j["n"] = s.n;
    ordered_json ev = ordered_json::array();
    for (double v : sp.l1) ev.push_back(wcs::round12(v));
    j["eigenvalues"] = ev;
    ordered_json mu = ordered_json::array();
    for (double v : sp.laplace) mu.push_back(wcs::round12(v));
    j["laplace"] = mu;
    j["source"] = sp.source;
    os << j.dump(2);
  } else {
    for (int i = 0; i < count; ++i)
      os << "lambda" << (i + 1) << " = " << wcs::fmt12(sp.l1[i]) << "\n";
    os << "# source = " << sp.source << "\n";
  }
  emit(os.str(), out);
  return 0;
}

int run_verdict(const std::string& model_name, const std::string& config, const std::string& spec,
                std::optional<int> n, double eps, int grid, double tol,
                const std::string& lambda1_mode, const std::string& format,
                const std::string& out) {
  const wcs::MinimalHypersurface s = wcs::parse_surface_spec(spec, n);
  const wcs::WarpedModel model = resolve_model(model_name, config, s.n);
  wcs::VerdictOptions opt;
  opt.grid_size = grid;
  opt.shooting_tol = tol;
  opt.lambda1_mode = lambda1_mode;
  const wcs::StabilityReport report = wcs::verdict(model, s, eps, opt);
  emit(format == "json" ? wcs::to_json(report) : wcs::to_plain(report), out);
  return 0;
}

int run_sweep(wcs::RunConfig cfg, const std::string& config, std::vector<double> eps,
              double eps_min, double eps_max, int eps_steps, const std::string& format,
              const std::string& out, const std::string& plot_path) {
  if (!eps.empty() && eps_steps > 0)
    throw std::invalid_argument("give either --eps values or an --eps-min/--eps-max/--eps-steps grid");
  if (eps.empty()) {
    if (eps_steps <= 0)
      throw std::invalid_argument("no eps values: use --eps or --eps-min/--eps-max/--eps-steps");
    if (eps_steps == 1) {
      eps.push_back(eps_min);
    } else {
      if (!(eps_max > eps_min))
        throw std::invalid_argument("need eps_max > eps_min for an eps grid");
      eps = wcs::linspace(eps_min, eps_max, eps_steps);
    }
  }
  cfg.eps_values = eps;
  if (!config.empty()) {
    cfg.custom_model = wcs::load_model_config(config);
    cfg.model = cfg.custom_model->name;
  }
  const wcs::SweepResult result = wcs::sweep(cfg);
  const std::string data = format == "json" ? wcs::sweep_json(result) : wcs::sweep_csv(result);
  if (!plot_path.empty()) emit(wcs::plot_data_csv(result), plot_path);
  if (!out.empty()) {
    emit(data, out);
    std::cout << wcs::summary_line(result) << "\n";
  } else {
    std::cout << data;
    if (format != "json") std::cout << wcs::summary_line(result) << "\n";
  }
  return 0;
}

int run_verify_geometry(const std::string& spec, std::optional<int> n, double t, double h,
                        const std::string& format, const std::string& out) {
  const wcs::MinimalHypersurface s = wcs::parse_surface_spec(spec, n);
  if (!s.normA2_constant)
    throw std::invalid_argument("verify-geometry needs a catalog surface with constant ||A||^2");
  const wcs::ConeImmersion cone = wcs::cone_over(s);
  const std::vector<double> u = wcs::default_chart_point(cone);

  const wcs::ShapeOperatorSample full = wcs::fd_shape_operator(cone, t, u, h);
  const wcs::ShapeOperatorSample half = wcs::fd_shape_operator(cone, t, u, h / 2.0);
  const double expected = std::sqrt(s.normA2);
  const double noise = 1e-10;

  std::vector<CheckRow> checks;
  {
    CheckRow c;
    c.name = "shape_scaling";  // ||A(t)|| cos t equals the base ||A||
    c.value = full.normA * std::cos(t);
    c.expected = expected;
    c.error = std::abs(c.value - expected);
    c.tolerance = 1e-4;
    c.error_half_h = std::abs(half.normA * std::cos(t) - expected);
    const bool converges =
        *c.error <= noise || (*c.error_half_h > 0.0 && *c.error / *c.error_half_h >= 3.5);
    if (*c.error_half_h > 0.0) c.halving_ratio = *c.error / *c.error_half_h;
    c.pass = *c.error <= c.tolerance && (expected == 0.0 || converges);
    checks.push_back(c);
  }
  {
    CheckRow c;
    c.name = "axial_annihilation";  // A applied to the cone direction
    c.value = full.axial_row_norm;
    c.tolerance = 1e-4;
    c.pass = c.value <= c.tolerance;
    checks.push_back(c);
  }
  {
    CheckRow c;
    c.name = "metric_block";  // <dPhi/dt, dPhi/du_i> = 0
    c.value = full.metric_block_max;
    c.tolerance = 1e-10;
    c.pass = c.value <= c.tolerance;
    checks.push_back(c);
  }
  {
    CheckRow c;
    c.name = "volume_density";  // ratio equals cos^n t
    c.value = wcs::fd_volume_density(cone, t, u, h);
    c.expected = std::pow(std::cos(t), s.n);
    c.error = std::abs(c.value - *c.expected);
    c.tolerance = 1e-5;
    const double err_half = std::abs(wcs::fd_volume_density(cone, t, u, h / 2.0) - *c.expected);
    c.error_half_h = err_half;
    if (err_half > 0.0) c.halving_ratio = *c.error / err_half;
    const bool converges = *c.error <= noise || (err_half > 0.0 && *c.error / err_half >= 3.5);
    c.pass = *c.error <= c.tolerance && converges;
    checks.push_back(c);
  }

  bool all_pass = true;
  for (const CheckRow& c : checks) all_pass = all_pass && c.pass;

  std::ostringstream os;
  if (format == "plain") {
    for (const CheckRow& c : checks) os << check_plain(c) << "\n";
    os << (all_pass ? "PASS" : "FAIL") << "\n";
  } else {
    ordered_json j;
    j["surface"] = s.name;
    j["n"] = s.n;
    j["t"] = wcs::round12(t);
    j["h"] = wcs::round12(h);
    j["mean_curvature"] = wcs::round12(full.mean_curvature);
    ordered_json arr = ordered_json::array();
    for (const CheckRow& c : checks) arr.push_back(check_json(c));
    j["checks"] = arr;
    j["all_pass"] = all_pass;
    os << j.dump(2);
  }
  emit(os.str(), out);
  if (!all_pass) throw wcs::verification_error("geometry checks failed");
  return 0;
}

int run_verify_limits(int n, const std::string& format, const std::string& out) {
  const wcs::BoundIntegrals quad = wcs::bound_integrals(n, M_PI / 2.0);
  const wcs::BoundIntegrals cf = wcs::bound_integrals_limit(n);
  const double tol = 1e-8;
  const double r1 = std::abs(quad.i1 - cf.i1) / std::abs(cf.i1);
  const double r2 = std::abs(quad.i2 - cf.i2) / std::abs(cf.i2);
  const double r3 = std::abs(quad.i3 - cf.i3) / std::abs(cf.i3);
  const bool pass = r1 <= tol && r2 <= tol && r3 <= tol;
  std::ostringstream os;
  if (format == "json") {
    ordered_json j;
    j["n"] = n;
    auto block = [](double q, double c, double r) {
      ordered_json b;
      b["quadrature"] = wcs::round12(q);
      b["closed_form"] = wcs::round12(c);
      b["rel_err"] = wcs::round12(r);
      return b;
    };
    j["I1"] = block(quad.i1, cf.i1, r1);
    j["I2"] = block(quad.i2, cf.i2, r2);
    j["I3"] = block(quad.i3, cf.i3, r3);
    j["sum_bound"] = wcs::round12(wcs::closed_form_sum_bound(n));
    j["sum_bound_sign"] = wcs::sum_bound_sign(n);
    j["pass"] = pass;
    os << j.dump(2);
  } else {
    os << "I1 = " << wcs::fmt12(quad.i1) << "  closed_form = " << wcs::fmt12(cf.i1)
       << "  rel_err = " << wcs::fmt12(r1) << "\n";
    os << "I2 = " << wcs::fmt12(quad.i2) << "  closed_form = " << wcs::fmt12(cf.i2)
       << "  rel_err = " << wcs::fmt12(r2) << "\n";
    os << "I3 = " << wcs::fmt12(quad.i3) << "  closed_form = " << wcs::fmt12(cf.i3)
       << "  rel_err = " << wcs::fmt12(r3) << "\n";
    os << "sum_bound(n=" << n << ") = " << wcs::fmt12(wcs::closed_form_sum_bound(n))
       << "  sign = " << wcs::sum_bound_sign(n) << "\n";
    os << (pass ? "PASS" : "FAIL") << "\n";
  }
  emit(os.str(), out);
  if (!pass) throw wcs::verification_error("limit integrals disagree with the closed forms");
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Stability of minimal truncated cones in warped products: "
               "eigenvalue solvers, geometry checks, and parameter sweeps"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print help and exit");  // long names only
  const int grid_default = default_grid();
  int rc = 0;

  const std::vector<std::string> formats_pj = {"plain", "json"};
  const std::vector<std::string> formats_pjc = {"plain", "json", "csv"};
  const std::vector<std::string> formats_cj = {"csv", "json"};

  // models
  std::string m_config, m_format = "plain", m_out;
  CLI::App* models_cmd = app.add_subcommand("models", "List the warping-model catalog");
  models_cmd->add_option("--config", m_config, "Custom model config file to validate and append");
  models_cmd->add_option("--format", m_format)->check(CLI::IsMember(formats_pj));
  models_cmd->add_option("--out", m_out, "Output file (default stdout)");
  models_cmd->callback([&] { rc = run_models(m_config, m_format, m_out); });

  // surfaces
  std::string s_action = "list", s_format = "plain", s_out;
  int s_n = 0, s_count = 5;
  CLI::App* surfaces_cmd = app.add_subcommand("surfaces", "List the minimal-surface catalog");
  surfaces_cmd->add_option("action", s_action)->check(CLI::IsMember({"list"}));
  CLI::Option* s_n_opt = surfaces_cmd->add_option("--n", s_n, "Instantiate the catalog at n");
  surfaces_cmd->add_option("--count", s_count, "Eigenvalues per surface (with --n)")
      ->check(CLI::PositiveNumber);
  surfaces_cmd->add_option("--format", s_format)->check(CLI::IsMember(formats_pj));
  surfaces_cmd->add_option("--out", s_out);
  surfaces_cmd->callback([&] {
    rc = run_surfaces(s_n_opt->count() ? std::optional<int>(s_n) : std::nullopt, s_count,
                      s_format, s_out);
  });

  // delta1
  std::string d_model = "sphere", d_config, d_method = "both", d_format = "plain", d_out;
  int d_n = 0, d_count = 1, d_grid = grid_default;
  double d_eps = 0.0, d_tol = 1e-9;
  CLI::App* delta_cmd =
      app.add_subcommand("delta1", "First Dirichlet eigenvalues of the axial operator");
  delta_cmd->add_option("--model", d_model, "Builtin model name");
  delta_cmd->add_option("--config", d_config, "Custom model config file");
  CLI::Option* d_n_opt = delta_cmd->add_option("--n", d_n, "Hypersurface dimension");
  delta_cmd->add_option("--eps", d_eps, "Truncation depth")->required();
  delta_cmd->add_option("--count", d_count, "Number of eigenvalues")->check(CLI::PositiveNumber);
  delta_cmd->add_option("--grid", d_grid, "FD interior grid size");
  delta_cmd->add_option("--tol", d_tol, "Shooting bisection tolerance");
  delta_cmd->add_option("--method", d_method)->check(CLI::IsMember({"fd", "shooting", "both"}));
  delta_cmd->add_option("--format", d_format)->check(CLI::IsMember(formats_pjc));
  delta_cmd->add_option("--out", d_out);
  delta_cmd->callback([&] {
    rc = run_delta1(d_model, d_config, d_n_opt->count() ? std::optional<int>(d_n) : std::nullopt,
                    d_eps, d_count, d_grid, d_tol, d_method, d_format, d_out);
  });

  // lambda1
  std::string l_surface, l_format = "plain", l_out;
  int l_n = 0, l_count = 1;
  CLI::App* lambda_cmd =
      app.add_subcommand("lambda1", "Spectrum of the surface operator -Delta - ||A||^2");
  lambda_cmd->add_option("--surface", l_surface, "equator | clifford:p,q | flat_subtorus")
      ->required();
  CLI::Option* l_n_opt = lambda_cmd->add_option("--n", l_n, "Surface dimension");
  lambda_cmd->add_option("--count", l_count, "Number of eigenvalues")->check(CLI::PositiveNumber);
  lambda_cmd->add_option("--format", l_format)->check(CLI::IsMember(formats_pj));
  lambda_cmd->add_option("--out", l_out);
  lambda_cmd->callback([&] {
    rc = run_lambda1(l_surface, l_n_opt->count() ? std::optional<int>(l_n) : std::nullopt,
                     l_count, l_format, l_out);
  });

  // verdict
  std::string v_model = "sphere", v_config, v_surface, v_mode = "exact", v_format = "plain",
              v_out;
  int v_n = 0, v_grid = grid_default;
  double v_eps = 0.0, v_tol = 1e-9;
  CLI::App* verdict_cmd = app.add_subcommand("verdict", "Instability criterion for one cone");
  verdict_cmd->add_option("--model", v_model);
  verdict_cmd->add_option("--config", v_config, "Custom model config file");
  verdict_cmd->add_option("--surface", v_surface)->required();
  CLI::Option* v_n_opt = verdict_cmd->add_option("--n", v_n, "Surface dimension");
  verdict_cmd->add_option("--eps", v_eps, "Truncation depth")->required();
  verdict_cmd->add_option("--grid", v_grid);
  verdict_cmd->add_option("--tol", v_tol, "Shooting bisection tolerance");
  verdict_cmd->add_option("--lambda1-mode", v_mode)->check(CLI::IsMember({"exact", "bound"}));
  verdict_cmd->add_option("--format", v_format)->check(CLI::IsMember(formats_pj));
  verdict_cmd->add_option("--out", v_out);
  verdict_cmd->callback([&] {
    rc = run_verdict(v_model, v_config, v_surface,
                     v_n_opt->count() ? std::optional<int>(v_n) : std::nullopt, v_eps, v_grid,
                     v_tol, v_mode, v_format, v_out);
  });

  // sweep
  wcs::RunConfig sw;
  sw.grid_size = grid_default;
  std::string sw_config, sw_format = "csv", sw_out, sw_plot;
  std::vector<double> sw_eps;
  double sw_eps_min = 0.0, sw_eps_max = 0.0;
  int sw_eps_steps = 0;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Verdict table over (n, eps) cells");
  sweep_cmd->add_option("--model", sw.model);
  sweep_cmd->add_option("--config", sw_config, "Custom model config file");
  sweep_cmd->add_option("--surface-family", sw.surface_family,
                        "clifford | equator | flat_subtorus | explicit spec");
  sweep_cmd->add_option("--n-min", sw.n_min);
  sweep_cmd->add_option("--n-max", sw.n_max);
  sweep_cmd->add_option("--eps", sw_eps, "Explicit eps values (repeatable)")->delimiter(',');
  sweep_cmd->add_option("--eps-min", sw_eps_min);
  sweep_cmd->add_option("--eps-max", sw_eps_max);
  sweep_cmd->add_option("--eps-steps", sw_eps_steps);
  sweep_cmd->add_option("--grid", sw.grid_size);
  sweep_cmd->add_option("--tol", sw.shooting_tol, "Shooting bisection tolerance");
  sweep_cmd->add_option("--jobs", sw.jobs, "Worker threads (0 = all hardware threads)");
  sweep_cmd->add_option("--lambda1-mode", sw.lambda1_mode)
      ->check(CLI::IsMember({"exact", "bound"}));
  sweep_cmd->add_option("--seed", sw.seed, "Recorded in the JSON config echo");
  sweep_cmd->add_option("--format", sw_format)->check(CLI::IsMember(formats_cj));
  sweep_cmd->add_option("--out", sw_out, "Data file (summary then goes to stdout)");
  sweep_cmd->add_option("--plot-data", sw_plot, "Write n,eps,lambda1,delta1,sum,verdict CSV");
  sweep_cmd->callback([&] {
    rc = run_sweep(sw, sw_config, sw_eps, sw_eps_min, sw_eps_max, sw_eps_steps, sw_format,
                   sw_out, sw_plot);
  });

  // verify-geometry
  std::string g_surface, g_format = "json", g_out;
  int g_n = 0;
  double g_t = -0.6, g_h = 1e-3;
  CLI::App* geo_cmd =
      app.add_subcommand("verify-geometry", "Finite-difference checks of the cone identities");
  geo_cmd->set_help_flag("--help", "Print help and exit");  // frees --h for the FD step
  geo_cmd->add_option("--surface", g_surface)->required();
  CLI::Option* g_n_opt = geo_cmd->add_option("--n", g_n, "Surface dimension");
  geo_cmd->add_option("--t", g_t, "Axial coordinate of the test point");
  geo_cmd->add_option("--h", g_h, "FD step")->check(CLI::PositiveNumber);
  geo_cmd->add_option("--format", g_format)->check(CLI::IsMember(formats_pj));
  geo_cmd->add_option("--out", g_out);
  geo_cmd->callback([&] {
    rc = run_verify_geometry(g_surface, g_n_opt->count() ? std::optional<int>(g_n) : std::nullopt,
                             g_t, g_h, g_format, g_out);
  });

  // verify-limits
  int vl_n = 0;
  std::string vl_format = "plain", vl_out;
  CLI::App* lim_cmd = app.add_subcommand(
      "verify-limits", "Quadrature of the estimate integrals against their closed forms");
  lim_cmd->add_option("--n", vl_n)->required()->check(CLI::Range(2, 1000000));
  lim_cmd->add_option("--format", vl_format)->check(CLI::IsMember(formats_pj));
  lim_cmd->add_option("--out", vl_out);
  lim_cmd->callback([&] { rc = run_verify_limits(vl_n, vl_format, vl_out); });

  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
    if (sub->get_name() != "verify-geometry")
      sub->set_help_flag("--help", "Print help and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wcs::verification_error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const wcs::solver_error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
