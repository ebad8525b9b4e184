#include <doctest.h>

#include <cmath>

#include "pointfrac/kernels.hpp"
#include "pointfrac/quadrature.hpp"

using namespace pointfrac;

TEST_CASE("momentum profiles") {
  GreenKernel k(KernelKind::Homogeneous, ProblemParams(3, 2.0, 1.0));
  CHECK(kernel_hat(k, 0.0) == doctest::Approx(std::pow(2.0 * kPi, -1.5)).epsilon(1e-15));

  // the derived kernel branch at the origin: (2 pi)^{-1/2} (1 - (s-1)/s)
  GreenKernel h(KernelKind::DerivedH, ProblemParams(1, 1.2, 1.0));
  CHECK(kernel_hat(h, 0.0) ==
        doctest::Approx(std::pow(2.0 * kPi, -0.5) * (5.0 / 6.0)).epsilon(1e-14));

  // the inhomogeneous profile at s = 2 coincides with the homogeneous one
  GreenKernel hom(KernelKind::Homogeneous, ProblemParams(3, 2.0, 1.7));
  GreenKernel inh(KernelKind::Inhomogeneous, ProblemParams(3, 2.0, 1.7));
  for (double r : {0.0, 0.5, 3.0, 40.0})
    CHECK(kernel_hat(hom, r) == doctest::Approx(kernel_hat(inh, r)).epsilon(1e-15));

  CHECK_THROWS_AS(GreenKernel(KernelKind::Inhomogeneous, ProblemParams(1, 0.8, 1.0)),
                  UnsupportedDimension);
  CHECK_THROWS_AS(GreenKernel(KernelKind::DerivedH, ProblemParams(1, 1.0, 1.0)),
                  EndpointPower);
}

TEST_CASE("position values against the exponential closed forms") {
  GreenKernel k3(KernelKind::Homogeneous, ProblemParams(3, 2.0, 1.0));
  CHECK(kernel_position(k3, 1.0) ==
        doctest::Approx(std::exp(-1.0) / (4.0 * kPi)).epsilon(1e-8));
  CHECK(kernel_position(k3, 1.0) == doctest::Approx(0.029276).epsilon(1e-4));

  GreenKernel k1(KernelKind::Homogeneous, ProblemParams(1, 2.0, 1.0));
  CHECK(kernel_position(k1, 0.5) == doctest::Approx(std::exp(-0.5) / 2.0).epsilon(1e-8));

  // lambda scaling of the yukawa pair: G_lambda(x) = e^{-sqrt(l) x}/(4 pi x)
  GreenKernel k3l(KernelKind::Homogeneous, ProblemParams(3, 2.0, 4.0));
  CHECK(kernel_position(k3l, 1.0) ==
        doctest::Approx(std::exp(-2.0) / (4.0 * kPi)).epsilon(1e-8));

  // short-distance law
  GreenKernel frac(KernelKind::Homogeneous, ProblemParams(3, 1.8, 1.0));
  CHECK(std::pow(1e-3, 1.2) * kernel_position(frac, 1e-3) ==
        doctest::Approx(singularity_constant(3, 1.8)).epsilon(1e-3));
  // far inside the asymptotic regime the constant is hit to oracle precision
  CHECK(std::pow(1e-9, 1.0) * kernel_position(k3, 1e-9) ==
        doctest::Approx(singularity_constant(3, 2.0)).epsilon(1e-8));
}

TEST_CASE("singularity constant") {
  CHECK(singularity_constant(3, 2.0) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-15));
  const double want = std::tgamma(0.6) /
                      (std::pow(2.0 * kPi, 1.5) * std::pow(2.0, 0.3) * std::tgamma(0.9));
  CHECK(singularity_constant(3, 1.8) == doctest::Approx(want).epsilon(1e-14));
  const double want1 = std::tgamma(0.1) /
                       (std::pow(2.0 * kPi, 0.5) * std::pow(2.0, 0.3) * std::tgamma(0.4));
  CHECK(singularity_constant(1, 0.8) == doctest::Approx(want1).epsilon(1e-14));
  CHECK_THROWS_AS(singularity_constant(3, 3.0), DomainError);
}

TEST_CASE("kernel at zero") {
  CHECK(kernel_at_zero(1, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(kernel_at_zero(1, 2.0, 4.0) == doctest::Approx(0.25).epsilon(1e-14));
  // closed form in d = 1: Theta(s, lambda)
  CHECK(kernel_at_zero(1, 1.2, 1.0) ==
        doctest::Approx(1.0 / (1.2 * std::sin(kPi / 1.2))).epsilon(1e-14));
  CHECK(kernel_at_zero(1, 1.2, 1.0) == doctest::Approx(theta(1.2, 1.0)).epsilon(1e-15));
  // lambda scaling with exponent (d-s)/s
  for (double s : {1.4, 2.6}) {
    CHECK(kernel_at_zero(1, s, 16.0) ==
          doctest::Approx(std::pow(16.0, (1.0 - s) / s) * kernel_at_zero(1, s, 1.0))
              .epsilon(1e-14));
  }
  CHECK_THROWS_AS(kernel_at_zero(3, 2.0, 1.0), DomainError);

  // inhomogeneous value above s = 3
  GreenKernel gi(KernelKind::Inhomogeneous, ProblemParams(3, 4.0, 2.0));
  const double want = std::tgamma(0.5) /
                      (8.0 * std::pow(kPi, 1.5) * std::pow(2.0, 0.5) * std::tgamma(2.0));
  CHECK(kernel_at_zero(gi) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("kernel l2 norms") {
  GreenKernel k1(KernelKind::Homogeneous, ProblemParams(1, 2.0, 1.0));
  CHECK(kernel_l2_norm_sq(k1) == doctest::Approx(0.25).epsilon(1e-12));

  GreenKernel k12(KernelKind::Homogeneous, ProblemParams(1, 1.2, 1.0));
  CHECK(kernel_l2_norm_sq(k12) ==
        doctest::Approx(0.2 / (1.44 * std::sin(kPi / 1.2))).epsilon(1e-12));

  GreenKernel k3(KernelKind::Homogeneous, ProblemParams(3, 2.0, 1.0));
  CHECK(kernel_l2_norm_sq(k3) == doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-10));

  // norm-to-origin ratio: ||G||^2 / G(0) = (s-1)/(lambda s)
  for (double s : {1.2, 1.35}) {
    GreenKernel kk(KernelKind::Homogeneous, ProblemParams(1, s, 1.7));
    CHECK(kernel_l2_norm_sq(kk) / kernel_at_zero(1, s, 1.7) ==
          doctest::Approx((s - 1.0) / (1.7 * s)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(kernel_l2_norm_sq(GreenKernel(KernelKind::Homogeneous,
                                                ProblemParams(3, 1.2, 1.0))),
                  DomainError);
}

TEST_CASE("lambda difference integral") {
  // exact value 2 pi^2 at s = 2, (1, 4)
  CHECK(lambda_difference_integral(3, 2.0, 1.0, 4.0) ==
        doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(lambda_difference_integral(3, 1.8, 2.0, 2.0) == doctest::Approx(0.0));
  CHECK(lambda_difference_integral(1, 0.8, 1.0, 2.0) ==
        doctest::Approx(2.0 * kPi * (theta(0.8, 1.0) - theta(0.8, 2.0))).epsilon(1e-14));
  // dual route on a sample of the grid
  for (double s : {1.7, 2.3}) {
    CHECK(lambda_difference_integral(3, s, 0.5, 2.0) ==
          doctest::Approx(lambda_difference_integral_quadrature(3, s, 0.5, 2.0))
              .epsilon(1e-8));
  }
  CHECK(lambda_difference_integral(1, 1.3, 1.0, 4.0) ==
        doctest::Approx(lambda_difference_integral_quadrature(1, 1.3, 1.0, 4.0))
            .epsilon(1e-8));
  // d = 1 classical power: pi/sqrt(l1) - pi/sqrt(l2) elementary
  CHECK(lambda_difference_integral(1, 2.0, 1.0, 4.0) ==
        doctest::Approx(kPi * (1.0 - 0.5)).epsilon(1e-14));
}

TEST_CASE("derived kernel satisfies the regularised resolvent identity") {
  // (symbol) * profile = hat G - theta_s (s-1)/(lambda s) (2 pi)^{-1/2}
  for (double s : {0.7, 1.3}) {
    ProblemParams p(1, s, 2.0);
    GreenKernel h(KernelKind::DerivedH, p);
    GreenKernel g(KernelKind::Homogeneous, p);
    const double b = (s > 1.0) ? (s - 1.0) / (2.0 * s) : 0.0;
    for (double r : {0.0, 1.0, 25.0}) {
      const double lhs = (std::pow(r, s) + 2.0) * kernel_hat(h, r);
      CHECK(lhs == doctest::Approx(kernel_hat(g, r) - b * std::pow(2.0 * kPi, -0.5))
                       .epsilon(1e-13));
    }
  }
}

TEST_CASE("profiles are positive and decreasing for the plain kinds") {
  for (auto kind : {KernelKind::Homogeneous, KernelKind::Inhomogeneous}) {
    GreenKernel k(kind, ProblemParams(3, 1.8, 1.3));
    double prev = kernel_hat(k, 0.0);
    CHECK(prev > 0.0);
    for (double r : {0.1, 1.0, 10.0, 1e3, 1e5}) {
      const double v = kernel_hat(k, r);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
  // the regularised kernel changes sign beyond r^s = lambda/(s-1) when s > 1
  GreenKernel h(KernelKind::DerivedH, ProblemParams(1, 1.2, 1.0));
  const double flip = std::pow(1.0 / 0.2, 1.0 / 1.2);
  CHECK(kernel_hat(h, 0.5 * flip) > 0.0);
  CHECK(kernel_hat(h, 2.0 * flip) < 0.0);
}
