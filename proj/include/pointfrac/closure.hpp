#pragma once

#include <vector>

#include "pointfrac/grid.hpp"

namespace pointfrac {

// Radial cut-off profile: 0 on [0,1], 1 on [2,inf), smooth blend between.
double cutoff_phi(double t);
inline double cutoff_psi(double t) { return cutoff_phi(t) - 1.0; }

// f_R: momentum truncation with the lowest moment re-balanced on the unit
// ball, so the result integrates to zero exactly (d = 3).
RadialFunction moment_truncate(const RadialFunction& f, double R);

// || phi_n f - f ||_{H^s}: the difference is supported in |x| <= 2/n, built on
// a position grid there, transformed back by radial quadrature and measured
// with the Sobolev weight.
double closure_distance(const RadialFunction& f, int n, double s, int d);

struct DecayFit {
  double slope = 0.0;
  bool no_signal = false;
  std::vector<double> distances_sq;
};

DecayFit decay_rate_fit(const RadialFunction& f, double s, int d,
                        const std::vector<int>& n_list);

}  // namespace pointfrac
