#include "wcs/sweep.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wcs/util.hpp"

#ifdef WCS_HAVE_OPENMP
#include <omp.h>
#endif

namespace wcs {

MinimalHypersurface family_surface(const std::string& family, int n) {
  if (family.find(':') != std::string::npos) return parse_surface_spec(family, n);
  if (family == "clifford") {
    const int p = (n + 1) / 2;
    return clifford_surface(p, n - p);
  }
  if (family == "equator") return equator_surface(n);
  if (family == "flat_subtorus") return flat_subtorus_surface(n);
  throw std::invalid_argument("unknown surface family '" + family + "'");
}

namespace {

SweepCell compute_cell(const RunConfig& cfg, int n, double eps) {
  SweepCell cell;
  cell.n = n;
  cell.eps = eps;
  try {
    WarpedModel model = cfg.custom_model ? *cfg.custom_model : builtin_model(cfg.model, n);
    model.n = n;  // the curvature identities are dimension-independent
    const MinimalHypersurface surf = family_surface(cfg.surface_family, n);
    VerdictOptions opt;
    opt.grid_size = cfg.grid_size;
    opt.shooting_tol = cfg.shooting_tol;
    opt.lambda1_mode = cfg.lambda1_mode;
    cell.report = verdict(model, surf, eps, opt);
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

void check_config(const RunConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
    throw std::invalid_argument("sweep: need 1 <= n_min <= n_max");
  if (cfg.eps_values.empty()) throw std::invalid_argument("sweep: no eps values");
}

SweepResult run_cells(const RunConfig& cfg, bool parallel) {
  check_config(cfg);
  const int num_n = cfg.n_max - cfg.n_min + 1;
  const int num_e = static_cast<int>(cfg.eps_values.size());
  const int total = num_n * num_e;
  SweepResult r;
  r.config = cfg;
  r.cells.resize(total);
#ifdef WCS_HAVE_OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads())
    for (int idx = 0; idx < total; ++idx)
      r.cells[idx] = compute_cell(cfg, cfg.n_min + idx / num_e, cfg.eps_values[idx % num_e]);
    return r;
  }
#else
  (void)parallel;
#endif
  for (int idx = 0; idx < total; ++idx)
    r.cells[idx] = compute_cell(cfg, cfg.n_min + idx / num_e, cfg.eps_values[idx % num_e]);
  return r;
}

std::string cell_model(const SweepResult& r, const SweepCell& c) {
  if (c.ok) return c.report.model_name;
  return r.config.custom_model ? r.config.custom_model->name : r.config.model;
}

std::string cell_surface(const SweepResult& r, const SweepCell& c) {
  return c.ok ? c.report.surface_name : r.config.surface_family;
}

}  // namespace

SweepResult sweep_serial(const RunConfig& cfg) { return run_cells(cfg, false); }
SweepResult sweep_parallel(const RunConfig& cfg) { return run_cells(cfg, true); }
SweepResult sweep(const RunConfig& cfg) { return run_cells(cfg, cfg.jobs != 1); }

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "model,surface,n,eps,lambda1,lambda1_source,delta1,sum,verdict,paper_bound\n";
  for (const SweepCell& c : r.cells) {
    os << cell_model(r, c) << ',' << cell_surface(r, c) << ',' << c.n << ',' << fmt12(c.eps)
       << ',';
    if (c.ok) {
      os << fmt12(c.report.lambda1) << ',' << c.report.lambda1_source << ','
         << fmt12(c.report.delta1) << ',' << fmt12(c.report.sum) << ',' << c.report.verdict
         << ','
         << (c.report.has_closed_form_bound ? fmt12(c.report.closed_form_bound)
                                            : std::string("nan"));
    } else {
      os << "nan,none,nan,nan,error,nan";
    }
    os << '\n';
  }
  return os.str();
}

std::string plot_data_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "n,eps,lambda1,delta1,sum,verdict\n";
  for (const SweepCell& c : r.cells) {
    os << c.n << ',' << fmt12(c.eps) << ',';
    if (c.ok)
      os << fmt12(c.report.lambda1) << ',' << fmt12(c.report.delta1) << ','
         << fmt12(c.report.sum) << ',' << c.report.verdict;
    else
      os << "nan,nan,nan,error";
    os << '\n';
  }
  return os.str();
}

std::string sweep_json(const SweepResult& r) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg;
  cfg["model"] = r.config.custom_model ? r.config.custom_model->name : r.config.model;
  cfg["surface_family"] = r.config.surface_family;
  cfg["n_min"] = r.config.n_min;
  cfg["n_max"] = r.config.n_max;
  nlohmann::ordered_json evs = nlohmann::ordered_json::array();
  for (double e : r.config.eps_values) evs.push_back(round12(e));
  cfg["eps_values"] = evs;
  cfg["grid_size"] = r.config.grid_size;
  cfg["shooting_tol"] = round12(r.config.shooting_tol);
  cfg["lambda1_mode"] = r.config.lambda1_mode;
  cfg["seed"] = r.config.seed;
  j["config"] = cfg;

  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const SweepCell& c : r.cells) {
    nlohmann::ordered_json jc;
    jc["model"] = cell_model(r, c);
    jc["surface"] = cell_surface(r, c);
    jc["n"] = c.n;
    jc["eps"] = round12(c.eps);
    if (c.ok) {
      jc["lambda1"] = round12(c.report.lambda1);
      jc["lambda1_source"] = c.report.lambda1_source;
      jc["delta1"] = round12(c.report.delta1);
      jc["sum"] = round12(c.report.sum);
      jc["verdict"] = c.report.verdict;
      if (c.report.has_closed_form_bound)
        jc["paper_bound"] = round12(c.report.closed_form_bound);
      else
        jc["paper_bound"] = nullptr;
      if (c.report.has_closed_form_bound && c.n > 14)
        jc["note"] = "outside_closed_form_window";
    } else {
      jc["verdict"] = "error";
      jc["error"] = c.error;
    }
    cells.push_back(jc);
  }
  j["cells"] = cells;
  j["summary"] = summary_line(r);
  return j.dump(2);
}

std::string summary_line(const SweepResult& r) {
  if (r.cells.empty()) return "no cells";
  const double eps_top = *std::max_element(r.config.eps_values.begin(), r.config.eps_values.end());
  std::vector<int> unstable;
  bool any_bound = false;
  for (const SweepCell& c : r.cells) {
    if (c.eps != eps_top || !c.ok) continue;
    if (c.report.has_closed_form_bound) any_bound = true;
    if (c.report.verdict == "unstable") unstable.push_back(c.n);
  }
  std::ostringstream os;
  if (unstable.empty()) {
    os << "no unstable cells at eps=" << fmt12(eps_top);
    return os.str();
  }
  std::sort(unstable.begin(), unstable.end());
  bool contiguous = true;
  for (std::size_t i = 1; i < unstable.size(); ++i)
    if (unstable[i] != unstable[i - 1] + 1) contiguous = false;
  os << "unstable for n in [" << unstable.front() << ", " << unstable.back() << "] at eps="
     << fmt12(eps_top);
  if (!contiguous) os << " (non-contiguous)";
  if (any_bound && unstable.back() > 14)
    os << "; n > 14 lies outside the closed-form window";
  return os.str();
}

}  // namespace wcs
