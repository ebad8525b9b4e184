#pragma once

#include <functional>
#include <vector>

namespace pointfrac::quad {

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

using Fn = std::function<double(double)>;

// Fixed-order Gauss-Legendre panel.
double gl_panel(const Fn& f, double a, double b, int order = 16);

// Adaptive bisection built on nested Gauss panels.
double adaptive(const Fn& f, double a, double b, double rel_tol = 1e-12,
                double abs_floor = 0.0, int max_depth = 50);

// Limit of a sequence of partial sums, Wynn epsilon algorithm.
double epsilon_limit(const std::vector<double>& partial, double* err_estimate = nullptr);

double brent_root(const Fn& f, double a, double b, double xtol, int max_iter = 200);

// \int_R^inf r^m (r^s + c)^{-k} dr as a binomial series in c R^{-s}.
// Requires k*s > m + 1 (integrability) and c R^{-s} < 1/2.
double tail_power_shifted(double m, double s, double k, double c, double R);

// \int_R^inf u^a sin(u) du and the cosine variant, asymptotic in 1/R (R >> 1).
double osc_tail_sin(double a, double R, int terms = 8);
double osc_tail_cos(double a, double R, int terms = 8);

// One term amp * r^power of an algebraic large-r expansion.
struct PowerTerm {
  double amp;
  double power;
};

// Algebraic expansion of an integrand at large r, accurate for r >= valid_from.
struct TailExpansion {
  std::vector<PowerTerm> terms;
  double valid_from = 10.0;
};

// \int_0^inf g(r) sin(x r) dr resp. cos, for g smooth with algebraic decay.
// Integrates between consecutive zeros of the trigonometric factor; past the
// segment window either switches to the analytic tail expansion (when `tail`
// describes g at large r) or extrapolates the alternating partial sums.
double fourier_sin(const Fn& g, double x, const TailExpansion* tail = nullptr,
                   double rel_tol = 1e-11);
double fourier_cos(const Fn& g, double x, const TailExpansion* tail = nullptr,
                   double rel_tol = 1e-11);

}  // namespace pointfrac::quad
