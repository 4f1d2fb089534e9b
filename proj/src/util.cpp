#include "wcs/util.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace wcs {

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double round12(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

double trapezoid_samples(const std::vector<double>& y, double dt) {
  if (y.size() < 2) throw std::invalid_argument("trapezoid_samples: need >= 2 samples");
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * dt;
}

double simpson_samples(const std::vector<double>& y, double dt) {
  const std::size_t m = y.size();
  if (m < 3) throw std::invalid_argument("simpson_samples: need >= 3 samples");
  std::size_t intervals = m - 1;
  std::size_t stop = intervals;  // one past the last interval of the 1/3 part
  double s = 0.0;
  if (intervals % 2 != 0) stop = intervals - 3;  // leave a 3/8 panel at the end
  for (std::size_t i = 0; i + 2 <= stop; i += 2)
    s += (y[i] + 4.0 * y[i + 1] + y[i + 2]) * (dt / 3.0);
  if (intervals % 2 != 0) {
    if (intervals < 3) {  // 2 samples handled above; here intervals == 1 is impossible (m>=3)
      s += 0.5 * (y[m - 2] + y[m - 1]) * dt;
    } else {
      const std::size_t i = m - 4;
      s += (y[i] + 3.0 * y[i + 1] + 3.0 * y[i + 2] + y[i + 3]) * (3.0 * dt / 8.0);
    }
  }
  return s;
}

std::vector<double> linspace(double a, double b, int count) {
  if (count < 2) throw std::invalid_argument("linspace: need >= 2 points");
  std::vector<double> x(count);
  for (int i = 0; i < count; ++i)
    x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  x.back() = b;
  return x;
}

}  // namespace wcs
