#include "wcs/warped_model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wcs/errors.hpp"
#include "wcs/expr.hpp"
#include "wcs/util.hpp"

namespace wcs {

namespace {

constexpr double kIdentityTol = 1e-8;
constexpr int kValidationGrid = 201;
// Validation span for models defined on the whole line (eps_max = inf).
constexpr double kUnboundedSpan = 3.0;

WarpedModel make_builtin(const std::string& name, int n) {
  const double inf = std::numeric_limits<double>::infinity();
  WarpedModel m;
  m.name = name;
  m.n = n;
  if (name == "sphere") {
    m.c = 1.0;
    m.k = 1.0;
    m.f = [](double t) { return std::cos(t); };
    m.f_prime = [](double t) { return -std::sin(t); };
    m.f_second = [](double t) { return -std::cos(t); };
    m.interval_lo = -M_PI / 2.0;
    m.interval_hi = M_PI / 2.0;
    m.eps_max = M_PI / 2.0;
  } else if (name == "euclidean") {
    m.c = 0.0;
    m.k = 1.0;
    m.f = [](double t) { return 1.0 + t; };
    m.f_prime = [](double) { return 1.0; };
    m.f_second = [](double) { return 0.0; };
    m.interval_lo = -1.0;
    m.interval_hi = inf;
    m.eps_max = 1.0;
  } else if (name == "hyperbolic_cosh") {
    m.c = -1.0;
    m.k = -1.0;
    m.f = [](double t) { return std::cosh(t); };
    m.f_prime = [](double t) { return std::sinh(t); };
    m.f_second = [](double t) { return std::cosh(t); };
    m.interval_lo = -inf;
    m.interval_hi = inf;
    m.eps_max = inf;
  } else if (name == "hyperbolic_exp") {
    m.c = -1.0;
    m.k = 0.0;
    m.f = [](double t) { return std::exp(t); };
    m.f_prime = [](double t) { return std::exp(t); };
    m.f_second = [](double t) { return std::exp(t); };
    m.interval_lo = -inf;
    m.interval_hi = inf;
    m.eps_max = inf;
  } else if (name == "flat") {
    m.c = 0.0;
    m.k = 0.0;
    m.f = [](double) { return 1.0; };
    m.f_prime = [](double) { return 0.0; };
    m.f_second = [](double) { return 0.0; };
    m.interval_lo = -inf;
    m.interval_hi = inf;
    m.eps_max = inf;
  } else {
    throw std::invalid_argument("unknown model '" + name + "'");
  }
  return m;
}

}  // namespace

std::vector<std::string> builtin_model_names() {
  return {"sphere", "euclidean", "hyperbolic_cosh", "hyperbolic_exp", "flat"};
}

WarpedModel builtin_model(const std::string& name, int n) {
  if (n < 2) throw std::invalid_argument("model dimension n must be >= 2");
  WarpedModel m = make_builtin(name, n);
  validate_model(m);
  return m;
}

void validate_model(WarpedModel& model) {
  if (model.n < 2) throw std::invalid_argument("model dimension n must be >= 2");
  if (!model.f || !model.f_prime || !model.f_second)
    throw std::invalid_argument("model '" + model.name + "' is missing f, f_prime or f_second");
  if (!(model.eps_max > 0.0))
    throw std::invalid_argument("model '" + model.name + "' has eps_max <= 0");

  double span = std::isfinite(model.eps_max) ? 0.9 * model.eps_max : kUnboundedSpan;
  // Stay inside the interval of definition on both ends of the grid.
  if (std::isfinite(model.interval_lo)) span = std::min(span, -model.interval_lo * 0.9);

  for (double t : linspace(-span, 0.0, kValidationGrid)) {
    const double f = model.f(t);
    if (!(f > 0.0))
      throw verification_error("model '" + model.name + "': f(t) <= 0 at t=" + fmt12(t));
    const double r1 = model.f_second(t) / f + model.c;
    const double r2 = (model.f_prime(t) * model.f_prime(t) - model.k) / (f * f) + model.c;
    if (std::abs(r1) > kIdentityTol)
      throw verification_error("model '" + model.name + "': |f''/f + c| = " + fmt12(std::abs(r1)) +
                               " at t=" + fmt12(t) + " exceeds " + fmt12(kIdentityTol));
    if (std::abs(r2) > kIdentityTol)
      throw verification_error("model '" + model.name + "': |((f')^2 - k)/f^2 + c| = " +
                               fmt12(std::abs(r2)) + " at t=" + fmt12(t) + " exceeds " +
                               fmt12(kIdentityTol));
  }
  model.validated = true;
}

namespace {

double parse_double_or_inf(const std::string& s) {
  std::string v = s;
  v.erase(0, v.find_first_not_of(" \t"));
  v.erase(v.find_last_not_of(" \t") + 1);
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double x = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument("bad numeric value '" + s + "'");
  return x;
}

}  // namespace

WarpedModel parse_model_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::invalid_argument("model config line " + std::to_string(lineno) +
                                    ": expected 'key = value'");
      continue;
    }
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
    };
    trim(key);
    trim(val);
    if (key.empty()) throw std::invalid_argument("model config line " + std::to_string(lineno) +
                                                 ": empty key");
    kv[key] = val;
  }

  for (const char* req : {"name", "n", "c", "k", "f", "f_prime", "f_second", "interval", "eps_max"})
    if (!kv.count(req))
      throw std::invalid_argument(std::string("model config: missing field '") + req + "'");

  WarpedModel m;
  m.name = kv["name"];
  m.n = std::stoi(kv["n"]);
  m.c = parse_double_or_inf(kv["c"]);
  m.k = parse_double_or_inf(kv["k"]);

  Expr f = Expr::parse(kv["f"]);
  Expr fp = Expr::parse(kv["f_prime"]);
  Expr fpp = Expr::parse(kv["f_second"]);
  m.f = [f](double t) { return f.eval(t); };
  m.f_prime = [fp](double t) { return fp.eval(t); };
  m.f_second = [fpp](double t) { return fpp.eval(t); };

  std::string iv = kv["interval"];
  std::size_t comma = iv.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("model config: interval must be 'lo, hi'");
  m.interval_lo = parse_double_or_inf(iv.substr(0, comma));
  m.interval_hi = parse_double_or_inf(iv.substr(comma + 1));
  if (!(m.interval_lo < 0.0 && m.interval_hi >= 0.0))
    throw std::invalid_argument("model config: interval must contain [-eps, 0]");
  m.eps_max = parse_double_or_inf(kv["eps_max"]);

  validate_model(m);
  return m;
}

WarpedModel load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_config(ss.str());
}

ConeDensity density(const WarpedModel& model, double eps) {
  if (!model.validated) throw std::invalid_argument("density: model not validated");
  if (!(eps > 0.0)) throw std::invalid_argument("density: eps must be positive");
  if (std::isfinite(model.eps_max) && eps > model.eps_max - EPS_GUARD)
    throw std::invalid_argument("density: eps = " + fmt12(eps) + " exceeds eps_max - " +
                                fmt12(EPS_GUARD) + " = " + fmt12(model.eps_max - EPS_GUARD));
  if (-eps <= model.interval_lo)
    throw std::invalid_argument("density: [-eps, 0] leaves the model interval");
  ConeDensity d;
  d.model_name = model.name;
  d.n = model.n;
  d.c = model.c;
  d.eps = eps;
  d.f = model.f;
  d.f_prime = model.f_prime;
  // Positivity on the truncated axis (validation only sampled a fixed span).
  for (double t : linspace(-eps, 0.0, 65))
    if (!(d.f(t) > 0.0))
      throw verification_error("density: f(t) <= 0 at t=" + fmt12(t));
  return d;
}

}  // namespace wcs
