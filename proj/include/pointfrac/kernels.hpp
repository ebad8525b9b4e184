#pragma once

#include "pointfrac/grid.hpp"
#include "pointfrac/params.hpp"

namespace pointfrac {

enum class KernelKind {
  Homogeneous,    // (2pi)^{-d/2} / (|p|^s + lambda)
  Inhomogeneous,  // (2pi)^{-3/2} / ((p^2 + lambda)^{s/2}), d = 3
  DerivedH,       // resolvent-regularised homogeneous kernel, d = 1
};

struct GreenKernel {
  KernelKind kind;
  ProblemParams params;

  GreenKernel(KernelKind k, ProblemParams p);
};

// Radial momentum profile.
double kernel_hat(const GreenKernel& k, double r);

// Position-space value at radius x > 0 by oscillatory radial quadrature.
double kernel_position(const GreenKernel& k, double x);

// Lambda_s^(d): limit of x^{d-s} * kernel at the origin, 0 < s < d.
double singularity_constant(int d, double s);

// Kernel value at the origin where it is continuous (s > d homogeneous,
// s > 3 inhomogeneous).
double kernel_at_zero(const GreenKernel& k);
double kernel_at_zero(int d, double s, double lambda);  // homogeneous convenience

double kernel_l2_norm_sq(const GreenKernel& k);

// \int_{R^d} (1/(|p|^s + l1) - 1/(|p|^s + l2)) dp, closed form (d in {1, 3}).
double lambda_difference_integral(int d, double s, double l1, double l2);
// Same quantity by compensated quadrature of the difference integrand.
double lambda_difference_integral_quadrature(int d, double s, double l1, double l2);

// Sample the momentum profile on a grid, carrying the exact algebraic tail.
RadialFunction kernel_profile(const GreenKernel& k, GridPtr grid);

}  // namespace pointfrac
