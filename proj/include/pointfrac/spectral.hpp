#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pointfrac/operators.hpp"

namespace pointfrac {

struct SpectralResult {
  std::optional<double> eigenvalue;  // negative when present
  Family family = Family::HomogeneousK;
  double s = 2.0;
  bool deep_bound_state = false;  // |E| > 1e12 guard

  // shift at which the family kernel is the (non-normalised) eigenfunction
  double lambda_star() const { return eigenvalue ? -*eigenvalue : 0.0; }
};

// d = 3, s = 2 point perturbation: eigenvalue -(4 pi alpha)^2 for alpha < 0.
SpectralResult bound_state_h(double alpha);

// d = 3, s in (3/2, 5/2): eigenvalue -(2 pi |alpha| s sin(-3 pi/s))^{s/(3-s)}.
SpectralResult bound_state_3d(double alpha, double s);

// d = 1, s in (1/2,1) or (1,3/2): present iff (s-1) alpha > 0.
SpectralResult bound_state_1d(double alpha, double s);

// Inhomogeneous family at shift lambda, tau < 0: the unique E < tau at which
// the regular component of the would-be eigenfunction is moment free.
SpectralResult bound_state_inhomogeneous(double lambda, double tau, double s);

// Moment integral whose root in E locates the inhomogeneous bound state.
double inhomogeneous_moment_integral(double lambda, double tau, double s, double E);

struct SweepRow {
  double tau;
  std::optional<double> E_tau;
  std::string error;  // empty on success
};

std::vector<SweepRow> figure1_sweep(double lambda, double s, const std::vector<double>& taus);

}  // namespace pointfrac
