#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcs/hypersurface.hpp"
#include "wcs/stability.hpp"
#include "wcs/warped_model.hpp"

namespace wcs {

struct RunConfig {
  std::string model = "sphere";
  std::string surface_family = "clifford";  // clifford | equator | flat_subtorus | explicit spec
  int n_min = 2;
  int n_max = 14;
  std::vector<double> eps_values;
  int grid_size = 1024;
  double shooting_tol = 1e-9;
  std::string lambda1_mode = "exact";
  int jobs = 1;
  std::uint64_t seed = 0;
  // Custom model (already validated); its n is overridden per sweep cell.
  std::optional<WarpedModel> custom_model;
};

struct SweepCell {
  int n = 0;
  double eps = 0.0;
  bool ok = false;
  std::string error;
  StabilityReport report;
};

struct SweepResult {
  RunConfig config;
  std::vector<SweepCell> cells;  // n-major, then eps, both ascending in config order
};

// Representative surface for a family at dimension n; "clifford" picks
// clifford:ceil(n/2),floor(n/2). Explicit specs ("clifford:1,3") pass through.
MinimalHypersurface family_surface(const std::string& family, int n);

SweepResult sweep_serial(const RunConfig& cfg);
SweepResult sweep_parallel(const RunConfig& cfg);  // OpenMP over cells when available
SweepResult sweep(const RunConfig& cfg);           // jobs == 1 ? serial : parallel

// CSV with the pinned header
// model,surface,n,eps,lambda1,lambda1_source,delta1,sum,verdict,paper_bound
// Failed cells carry verdict "error" and "nan" numeric fields.
std::string sweep_csv(const SweepResult& r);

// CSV with the pinned header n,eps,lambda1,delta1,sum,verdict.
std::string plot_data_csv(const SweepResult& r);

// JSON mirror: config echo (execution details like jobs excluded so outputs
// stay byte-identical across thread counts), cells, summary.
std::string sweep_json(const SweepResult& r);

// One line describing the contiguous instability window at the largest eps.
std::string summary_line(const SweepResult& r);

}  // namespace wcs
