#pragma once

#include <string>
#include <vector>

namespace wcs {

// Every floating-point value we print goes through this (12 significant
// digits) so regression diffs stay meaningful and reruns are byte-identical.
std::string fmt12(double x);

// Value as reparsed from fmt12; used before handing numbers to the JSON
// writer so both output formats round identically.
double round12(double x);

// Composite rules over equally spaced samples (spacing dt), endpoints included.
double trapezoid_samples(const std::vector<double>& y, double dt);

// Composite Simpson; an odd interval count is finished with a 3/8 panel.
double simpson_samples(const std::vector<double>& y, double dt);

std::vector<double> linspace(double a, double b, int count);

}  // namespace wcs
