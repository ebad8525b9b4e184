#include "pointfrac/params.hpp"

#include <algorithm>
#include <cmath>

namespace pointfrac {

namespace {

void check_endpoints(int d, double s, double tol) {
  if (d < 1) throw UnsupportedDimension("dimension must be >= 1");
  if (!(s > 0.0)) throw EndpointPower("power s must be positive");
  // transitions sit at s = d/2 + n, n = 0, 1, ...
  const double t = s - 0.5 * d;
  const double nearest = std::round(t);
  if (nearest >= -0.25 && std::abs(t - nearest) < tol)
    throw EndpointPower("power s is at a transition value d/2 + n");
}

}  // namespace

RegimeInterval classify_regime(int d, double s, double endpoint_tol) {
  check_endpoints(d, s, endpoint_tol);
  RegimeInterval out;
  const double half_d = 0.5 * d;
  if (s < half_d) {
    out.n = 0;
    out.lower = 0.0;
    out.upper = half_d;
  } else {
    out.n = static_cast<int>(std::floor(s - half_d)) + 1;
    out.lower = half_d + out.n - 1;
    out.upper = half_d + out.n;
  }
  return out;
}

long long deficiency_index(int d, double s, double endpoint_tol) {
  const RegimeInterval reg = classify_regime(d, s, endpoint_tol);
  if (reg.n == 0) return 0;
  // binomial(d + n - 1, d)
  long long num = 1;
  for (int i = 1; i <= d; ++i) num = num * (reg.n - 1 + i) / i;
  return num;
}

ProblemParams::ProblemParams(int dim, double power, double shift, double tol)
    : d(dim), s(power), lambda(shift), endpoint_tol(tol) {
  if (!(lambda > 0.0)) throw BadSpec("lambda must be positive");
  regime = classify_regime(d, s, tol);
}

void ProblemParams::require_not_s_equal_one() const {
  if (d == 1 && std::abs(s - 1.0) < endpoint_tol)
    throw EndpointPower("s = 1 is excluded in dimension one");
}

void validate_matrix_param(const MatrixParam& mp, const ProblemParams& params) {
  const auto N = mp.T.rows();
  if (mp.T.cols() != N) throw DimensionMismatch("T must be square");
  if ((mp.T - mp.T.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("T must be hermitian within 1e-12");
  const long long J = deficiency_index(params.d, params.s, params.endpoint_tol);
  if (N > J) throw DimensionMismatch("rank of T exceeds the deficiency index");
  if (static_cast<Eigen::Index>(mp.basis.size()) != N)
    throw DimensionMismatch("basis labels must match the rank of T");
  for (const auto& gamma : mp.basis) {
    if (static_cast<int>(gamma.size()) != params.d)
      throw DimensionMismatch("multi-index length must equal the dimension");
    int total = 0;
    for (int gj : gamma) {
      if (gj < 0) throw DomainError("multi-index entries must be non-negative");
      total += gj;
    }
    if (total > params.regime.n - 1)
      throw DomainError("multi-index order exceeds n - 1");
  }
}

double theta(double s, double lambda, double endpoint_tol) {
  if (!(s > 0.5)) throw EndpointPower("theta requires s > 1/2");
  if (std::abs(s - 1.0) < endpoint_tol) throw EndpointPower("theta undefined at s = 1");
  if (!(lambda > 0.0)) throw BadSpec("lambda must be positive");
  return 1.0 / (std::pow(lambda, 1.0 - 1.0 / s) * s * std::sin(kPi / s));
}

OmegaTheta omega_theta_flag(double s, double endpoint_tol) {
  if (!(s > 0.5 && s < 1.5)) throw EndpointPower("omega requires s in (1/2, 3/2)");
  if (std::abs(s - 1.0) < endpoint_tol) throw EndpointPower("omega undefined at s = 1");
  OmegaTheta out;
  out.omega = s * s * std::sin(kPi / s) / (s - 1.0);
  out.theta_flag = (s < 1.0) ? 0 : 1;
  return out;
}

namespace {

void require_rank_one_window(const ProblemParams& p) {
  if (p.d != 1 && p.d != 3)
    throw UnsupportedDimension("extension parameter maps are implemented for d in {1, 3}");
  if (p.regime.n != 1)
    throw EndpointPower("extension parameter maps require s in the rank-one window");
  p.require_not_s_equal_one();
}

}  // namespace

ExtendedReal tau_to_alpha(const ProblemParams& params, ExtendedReal tau) {
  require_rank_one_window(params);
  const double s = params.s, lambda = params.lambda;
  if (params.d == 3) {
    if (tau.infinite) return ExtendedReal::infinity();
    const double denom = 2.0 * kPi * s * s * std::sin(3.0 * kPi / s) *
                         std::pow(lambda, 2.0 - 3.0 / s);
    return ExtendedReal::finite(-(tau.value * (3.0 - s) - s * lambda) / denom);
  }
  // d = 1: alpha = Theta + (omega lambda^{2-1/s} / tau - theta_s / Theta)^{-1}
  const OmegaTheta ot = omega_theta_flag(s, params.endpoint_tol);
  const double Th = theta(s, lambda, params.endpoint_tol);
  double A;  // the boundary coefficient of the tau parametrisation
  if (tau.infinite) {
    A = -ot.theta_flag / Th;
  } else {
    if (tau.is_zero()) return ExtendedReal::finite(Th);  // pole pair tau = 0 <-> alpha = Theta
    A = ot.omega * std::pow(lambda, 2.0 - 1.0 / s) / tau.value - ot.theta_flag / Th;
  }
  if (A == 0.0) return ExtendedReal::infinity();
  return ExtendedReal::finite(Th + 1.0 / A);
}

ExtendedReal alpha_to_tau(const ProblemParams& params, ExtendedReal alpha) {
  require_rank_one_window(params);
  const double s = params.s, lambda = params.lambda;
  if (params.d == 3) {
    if (alpha.infinite) return ExtendedReal::infinity();
    const double num = s * lambda - 2.0 * kPi * s * s * std::sin(3.0 * kPi / s) *
                                        std::pow(lambda, 2.0 - 3.0 / s) * alpha.value;
    return ExtendedReal::finite(num / (3.0 - s));
  }
  const OmegaTheta ot = omega_theta_flag(s, params.endpoint_tol);
  const double Th = theta(s, lambda, params.endpoint_tol);
  const double scale = ot.omega * std::pow(lambda, 2.0 - 1.0 / s);
  if (alpha.infinite) {
    if (ot.theta_flag == 0) return ExtendedReal::infinity();
    return ExtendedReal::finite(scale * Th);  // alpha = inf is the plain fractional Laplacian
  }
  if (ot.theta_flag == 1 && alpha.value == 0.0)
    throw NonInvertible("alpha = 0 is the Friedrichs image of tau = infinity");
  if (alpha.value == Th) return ExtendedReal::finite(0.0);
  const double A = 1.0 / (alpha.value - Th);
  const double denom = A + ot.theta_flag / Th;
  if (denom == 0.0) return ExtendedReal::infinity();
  return ExtendedReal::finite(scale / denom);
}

bool pair_consistency(const ProblemParams& params, double tau, double lambda2, double tau2,
                      double rel_tol) {
  if (!(lambda2 > 0.0)) throw BadSpec("both shifts must be positive");
  const ExtendedReal a1 = tau_to_alpha(params, ExtendedReal::finite(tau));
  ProblemParams p2(params.d, params.s, lambda2, params.endpoint_tol);
  const ExtendedReal a2 = tau_to_alpha(p2, ExtendedReal::finite(tau2));
  if (a1.infinite || a2.infinite) return a1.infinite == a2.infinite;
  const double scale = std::max({std::abs(a1.value), std::abs(a2.value), 1.0});
  return std::abs(a1.value - a2.value) <= rel_tol * scale;
}

}  // namespace pointfrac
