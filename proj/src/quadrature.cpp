#include "wcs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "wcs/errors.hpp"

namespace wcs {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double integral;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double gauss = fc * kWg[3];
  double kronrod = fc * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    kronrod += fsum * kWgk[i];
    if (i % 2 == 1) gauss += fsum * kWg[i / 2];
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.integral = kronrod * half;
  p.err = std::abs((kronrod - gauss) * half);
  return p;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_intervals) {
  if (!(b > a)) throw std::invalid_argument("integrate: need b > a");
  std::priority_queue<Panel> queue;
  queue.push(eval_panel(f, a, b));
  double total = queue.top().integral;
  double total_err = queue.top().err;
  int count = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (count >= max_intervals)
      throw solver_error("integrate: interval budget exhausted (err=" +
                         std::to_string(total_err) + ")");
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      throw solver_error("integrate: interval underflow before reaching tolerance");
    Panel left = eval_panel(f, worst.a, mid);
    Panel right = eval_panel(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    ++count;
  }
  QuadResult r;
  r.value = total;
  r.error_estimate = total_err;
  r.intervals = count;
  return r;
}

}  // namespace wcs
