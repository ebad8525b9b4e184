#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <variant>
#include <vector>

#include "pointfrac/errors.hpp"

namespace pointfrac {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEndpointTol = 1e-9;

// Real value extended with a distinguished infinity tag, so the Friedrichs
// conventions tau = inf / alpha = inf stay explicit instead of riding on IEEE.
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;

  static ExtendedReal finite(double v) { return {v, false}; }
  static ExtendedReal infinity() { return {0.0, true}; }
  bool is_zero() const { return !infinite && value == 0.0; }
};

// Regime window I_n^(d): (0, d/2) for n = 0, (d/2 + n - 1, d/2 + n) for n >= 1.
struct RegimeInterval {
  int n = 0;
  double lower = 0.0;
  double upper = 0.0;
};

RegimeInterval classify_regime(int d, double s, double endpoint_tol = kEndpointTol);
long long deficiency_index(int d, double s, double endpoint_tol = kEndpointTol);

struct ProblemParams {
  int d = 3;
  double s = 2.0;
  double lambda = 1.0;
  RegimeInterval regime;
  double endpoint_tol = kEndpointTol;

  ProblemParams(int dim, double power, double shift, double tol = kEndpointTol);

  // extension formulas in d = 1 additionally exclude the s = 1 transition
  void require_not_s_equal_one() const;
};

struct TauAt {
  double lambda = 1.0;
  ExtendedReal tau;
};

struct AlphaParam {
  ExtendedReal alpha;
};

struct MatrixParam {
  Eigen::MatrixXcd T;
  std::vector<std::vector<int>> basis;  // multi-indices, sum gamma_j <= n-1
};

using ExtensionParam = std::variant<TauAt, AlphaParam, MatrixParam>;

void validate_matrix_param(const MatrixParam& mp, const ProblemParams& params);

// Theta(s, lambda) = (lambda^{1 - 1/s} s sin(pi/s))^{-1}; in d = 1 this is the
// value of the homogeneous kernel at the origin for s > 1.
double theta(double s, double lambda, double endpoint_tol = kEndpointTol);

struct OmegaTheta {
  double omega;
  int theta_flag;  // 0 for s < 1, 1 for s > 1
};
OmegaTheta omega_theta_flag(double s, double endpoint_tol = kEndpointTol);

ExtendedReal tau_to_alpha(const ProblemParams& params, ExtendedReal tau);
ExtendedReal alpha_to_tau(const ProblemParams& params, ExtendedReal alpha);

bool pair_consistency(const ProblemParams& params, double tau, double lambda2, double tau2,
                      double rel_tol = 1e-10);

}  // namespace pointfrac
