#pragma once

#include <stdexcept>

namespace wcs {

// Numerical failure: no bracket, iteration stall, step underflow, grid too
// coarse, cross-method disagreement. CLI maps this to exit code 2.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked identity or certified value failed its tolerance. Exit code 3.
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wcs
