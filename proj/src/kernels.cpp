#include "pointfrac/kernels.hpp"

#include <cmath>

#include "pointfrac/quadrature.hpp"

namespace pointfrac {

GreenKernel::GreenKernel(KernelKind k, ProblemParams p) : kind(k), params(std::move(p)) {
  switch (kind) {
    case KernelKind::Homogeneous:
      break;
    case KernelKind::Inhomogeneous:
      if (params.d != 3)
        throw UnsupportedDimension("inhomogeneous kernel is defined for d = 3");
      break;
    case KernelKind::DerivedH:
      if (params.d != 1)
        throw UnsupportedDimension("derived kernel is defined for d = 1");
      if (!(params.s > 0.5 && params.s < 1.5))
        throw EndpointPower("derived kernel requires s in (1/2, 3/2)");
      params.require_not_s_equal_one();
      break;
  }
}

double kernel_hat(const GreenKernel& k, double r) {
  if (r < 0.0) throw DomainError("kernel_hat requires r >= 0");
  const double s = k.params.s, lambda = k.params.lambda;
  const double norm = std::pow(2.0 * kPi, -0.5 * k.params.d);
  switch (k.kind) {
    case KernelKind::Homogeneous:
      return norm / (std::pow(r, s) + lambda);
    case KernelKind::Inhomogeneous:
      return norm * std::pow(r * r + lambda, -0.5 * s);
    case KernelKind::DerivedH: {
      const double den = std::pow(r, s) + lambda;
      double v = 1.0 / (den * den);
      if (s > 1.0) v -= (s - 1.0) / (lambda * s) / den;
      return norm * v;
    }
  }
  throw DomainError("unknown kernel kind");
}

namespace {

// Algebraic large-r expansion of the transform integrand, which is
// r * kernel_hat in d = 3 and kernel_hat itself in d = 1.
quad::TailExpansion integrand_tail(const GreenKernel& k) {
  const double s = k.params.s, lambda = k.params.lambda;
  const int d = k.params.d;
  const double norm = std::pow(2.0 * kPi, -0.5 * d);
  const double rshift = (d == 3) ? 1.0 : 0.0;
  quad::TailExpansion te;
  auto add_series = [&](double pref, double power_step, double first_power, double ratio_base,
                        double kk) {
    // pref * r^{first_power} * (1 + ratio)^{-kk} expanded to 8 terms
    double coeff = pref;
    for (int j = 0; j < 8; ++j) {
      te.terms.push_back({coeff, first_power - j * power_step});
      coeff *= -(kk + j) / (j + 1.0) * ratio_base;
    }
  };
  switch (k.kind) {
    case KernelKind::Homogeneous:
      add_series(norm, s, rshift - s, lambda, 1.0);
      break;
    case KernelKind::Inhomogeneous:
      add_series(norm, 2.0, rshift - s, lambda, 0.5 * s);
      break;
    case KernelKind::DerivedH:
      add_series(norm, s, -2.0 * s, lambda, 2.0);
      if (s > 1.0) add_series(-norm * (s - 1.0) / (lambda * s), s, -s, lambda, 1.0);
      break;
  }
  // expansion parameter lambda r^{-s} (or lambda r^{-2}) below 0.05 at valid_from
  const double step = (k.kind == KernelKind::Inhomogeneous) ? 2.0 : s;
  te.valid_from = std::max(5.0, std::pow(20.0 * lambda, 1.0 / step));
  return te;
}

}  // namespace

double kernel_position(const GreenKernel& k, double x) {
  if (!(x > 0.0)) throw DomainError("kernel_position requires x > 0");
  const int d = k.params.d;
  if (d != 1 && d != 3)
    throw UnsupportedDimension("position evaluation implemented for d in {1, 3}");
  const quad::TailExpansion te = integrand_tail(k);
  if (d == 3) {
    auto g = [&](double r) { return r * kernel_hat(k, r); };
    const double integral = quad::fourier_sin(g, x, &te);
    return std::pow(2.0 * kPi, -1.5) * 4.0 * kPi / x * integral;
  }
  auto g = [&](double r) { return kernel_hat(k, r); };
  const double integral = quad::fourier_cos(g, x, &te);
  return std::pow(2.0 * kPi, -0.5) * 2.0 * integral;
}

double singularity_constant(int d, double s) {
  if (!(s > 0.0) || !(s < d))
    throw DomainError("singularity constant requires 0 < s < d");
  const double lg = std::lgamma(0.5 * (d - s)) - std::lgamma(0.5 * s);
  return std::exp(lg) / (std::pow(2.0 * kPi, 0.5 * d) * std::pow(2.0, s - 0.5 * d));
}

double kernel_at_zero(const GreenKernel& k) {
  const double s = k.params.s, lambda = k.params.lambda;
  const int d = k.params.d;
  switch (k.kind) {
    case KernelKind::Homogeneous:
      return kernel_at_zero(d, s, lambda);
    case KernelKind::Inhomogeneous: {
      if (!(s > 3.0)) throw DomainError("inhomogeneous kernel is singular at 0 for s <= 3");
      const double lg = std::lgamma(0.5 * (s - 3.0)) - std::lgamma(0.5 * s);
      return std::exp(lg) / (8.0 * std::pow(kPi, 1.5) * std::pow(lambda, 0.5 * (s - 3.0)));
    }
    case KernelKind::DerivedH: {
      // finite for all s in (1/2, 3/2): value of the branch profile at 0 integrated
      const quad::Fn f = [&](double r) { return kernel_hat(k, r); };
      const double head = quad::adaptive(f, 0.0, 1e6, 1e-12);
      const double norm = std::pow(2.0 * kPi, -0.5);
      double tail = norm * quad::tail_power_shifted(0.0, s, 2.0, lambda, 1e6);
      if (s > 1.0)
        tail -= norm * (s - 1.0) / (lambda * s) *
                quad::tail_power_shifted(0.0, s, 1.0, lambda, 1e6);
      return std::pow(2.0 * kPi, -0.5) * 2.0 * (head + tail);
    }
  }
  throw DomainError("unknown kernel kind");
}

double kernel_at_zero(int d, double s, double lambda) {
  if (!(s > d)) throw DomainError("homogeneous kernel is singular at 0 for s <= d");
  const double pref = std::pow(2.0, d - 1) * std::pow(kPi, 0.5 * d - 1.0) *
                      std::tgamma(0.5 * d) * std::pow(lambda, (s - d) / s) * s *
                      std::sin(kPi * d / s);
  return 1.0 / pref;
}

double kernel_l2_norm_sq(const GreenKernel& k) {
  const double s = k.params.s, lambda = k.params.lambda;
  const int d = k.params.d;
  if (k.kind == KernelKind::Homogeneous) {
    if (!(s > 0.5 * d)) throw DomainError("kernel is not square integrable");
    if (d == 1)
      return (s - 1.0) / (std::pow(lambda, 2.0 - 1.0 / s) * s * s * std::sin(kPi / s));
  }
  // radial quadrature of the squared momentum profile plus algebraic tail
  const double R = 1e6;
  auto f2 = [&](double r) {
    const double v = kernel_hat(k, r);
    return v * v * std::pow(r, d - 1);
  };
  const double head = quad::adaptive(f2, 0.0, R, 1e-13);
  const double norm2 = std::pow(2.0 * kPi, -static_cast<double>(d));
  double tail = 0.0;
  switch (k.kind) {
    case KernelKind::Homogeneous:
      tail = norm2 * quad::tail_power_shifted(d - 1.0, s, 2.0, lambda, R);
      break;
    case KernelKind::Inhomogeneous:
      if (!(s > 1.5)) throw DomainError("kernel is not square integrable");
      tail = norm2 * quad::tail_power_shifted(d - 1.0, 2.0, s, lambda, R);
      break;
    case KernelKind::DerivedH: {
      // (a + b)^2 with a = (r^s+l)^{-2}, b = -theta (s-1)/(l s) (r^s+l)^{-1}
      const double b = (s > 1.0) ? (s - 1.0) / (lambda * s) : 0.0;
      tail = norm2 * (quad::tail_power_shifted(d - 1.0, s, 4.0, lambda, R) -
                      2.0 * b * quad::tail_power_shifted(d - 1.0, s, 3.0, lambda, R) +
                      b * b * quad::tail_power_shifted(d - 1.0, s, 2.0, lambda, R));
      break;
    }
  }
  return surface_measure(d) * (head + tail);
}

double lambda_difference_integral(int d, double s, double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) throw BadSpec("shifts must be positive");
  if (d == 3) {
    if (!(s > 1.5 && s < 3.0)) throw EndpointPower("requires s in (3/2, 3)");
    const double c = 4.0 * kPi * kPi / (s * std::sin(3.0 * kPi / s));
    return c * (std::pow(l1, 3.0 / s - 1.0) - std::pow(l2, 3.0 / s - 1.0));
  }
  if (d == 1) {
    return 2.0 * kPi * (theta(s, l1) - theta(s, l2));
  }
  throw UnsupportedDimension("closed form implemented for d in {1, 3}");
}

double lambda_difference_integral_quadrature(int d, double s, double l1, double l2) {
  if (d != 1 && d != 3) throw UnsupportedDimension("implemented for d in {1, 3}");
  if (l1 == l2) return 0.0;
  if (!(2.0 * s > d)) throw NotIntegrable("difference integrand requires 2s > d");
  // compensated integrand (l2 - l1) / ((r^s + l1)(r^s + l2))
  const double R = 1e6;
  auto f = [&](double r) {
    const double rs = std::pow(r, s);
    return (l2 - l1) / ((rs + l1) * (rs + l2)) * std::pow(r, d - 1);
  };
  const double head = quad::adaptive(f, 0.0, R, 1e-13);
  // joint expansion r^{-2s} sum_j c_j r^{-js}, c_j = (-1)^j (l1^{j+1}-l2^{j+1})/(l1-l2)
  double tail = 0.0;
  double sign = 1.0, p1 = l1, p2 = l2;
  for (int j = 0; j < 30; ++j) {
    const double cj = sign * (p1 - p2) / (l1 - l2);
    const double expo = (2.0 + j) * s - d;
    const double term = cj * std::pow(R, -expo) / expo;
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(tail) && j > 1) break;
    sign = -sign;
    p1 *= l1;
    p2 *= l2;
  }
  return surface_measure(d) * (head + (l2 - l1) * tail);
}

RadialFunction kernel_profile(const GreenKernel& k, GridPtr grid) {
  if (grid->dimension() != k.params.d)
    throw GridMismatch("grid dimension does not match the kernel");
  const double s = k.params.s;
  const double norm = std::pow(2.0 * kPi, -0.5 * k.params.d);
  TailDescriptor tail{norm, s};
  if (k.kind == KernelKind::DerivedH) {
    if (s > 1.0)
      tail = {-norm * (s - 1.0) / (k.params.lambda * s), s};
    else
      tail = {norm, 2.0 * s};
  }
  auto fn = [&](double r) { return Complex(kernel_hat(k, r), 0.0); };
  return RadialFunction::from_function(std::move(grid), fn, tail, false);
}

}  // namespace pointfrac
