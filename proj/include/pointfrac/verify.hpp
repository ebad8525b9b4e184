#pragma once

#include <string>
#include <vector>

#include "pointfrac/grid.hpp"

namespace pointfrac::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

// Suites: params, kernels, radial, krein, spectral, fractional, closure,
// highrank, or "all".
std::vector<CheckResult> run_suite(const std::string& name);
std::vector<std::string> suite_names();

// Deterministic smooth test profile: a short mixture of Gaussians in r.
RadialFunction random_smooth_profile(GridPtr grid, unsigned seed);

// Same, with the zeroth momentum moment removed (d = 3 grids).
RadialFunction random_moment_free_profile(GridPtr grid, unsigned seed);

}  // namespace pointfrac::verify
