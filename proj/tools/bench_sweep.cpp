#include <chrono>
#include <iostream>

#include "wcs/sweep.hpp"
#include "wcs/util.hpp"

#ifdef WCS_HAVE_OPENMP
#include <omp.h>
#endif

// Times the verdict sweep with the serial reference loop and with the
// OpenMP cell loop, and checks that both produce byte-identical CSV.
int main() {
  wcs::RunConfig cfg;
  cfg.model = "sphere";
  cfg.surface_family = "clifford";
  cfg.n_min = 2;
  cfg.n_max = 8;
  cfg.eps_values = {0.8, 1.2, 1.5};
  cfg.grid_size = 512;
  cfg.jobs = 0;  // all hardware threads

  auto seconds = [](auto&& fn, wcs::SweepResult& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
  };

  wcs::SweepResult serial, parallel;
  const double ts = seconds([&] { return wcs::sweep_serial(cfg); }, serial);
  const double tp = seconds([&] { return wcs::sweep_parallel(cfg); }, parallel);

  int threads = 1;
#ifdef WCS_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif

  const std::string csv_serial = wcs::sweep_csv(serial);
  const std::string csv_parallel = wcs::sweep_csv(parallel);
  const bool identical = csv_serial == csv_parallel;

  std::cout << "cells            " << serial.cells.size() << "\n";
  std::cout << "grid             " << cfg.grid_size << "\n";
  std::cout << "serial seconds   " << wcs::fmt12(ts) << "\n";
  std::cout << "parallel seconds " << wcs::fmt12(tp) << " (threads " << threads << ")\n";
  std::cout << "speedup          " << wcs::fmt12(ts / tp) << "\n";
  std::cout << "outputs identical " << (identical ? "yes" : "NO") << "\n";
  return identical ? 0 : 1;
}
