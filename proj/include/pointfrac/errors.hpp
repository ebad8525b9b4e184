#pragma once

#include <stdexcept>
#include <string>

namespace pointfrac {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EndpointPower : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct UnsupportedFamily : Error { using Error::Error; };
struct NonInvertible : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct NotIntegrable : Error { using Error::Error; };
struct BadSpec : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct FormDomainViolation : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct BracketFailure : Error { using Error::Error; };

// Resolvent evaluated at a shift where the Krein scalar has a pole.
struct PoleAtLambda : Error {
  double lambda_star;
  explicit PoleAtLambda(double ls)
      : Error("resolvent pole at lambda = " + std::to_string(ls)), lambda_star(ls) {}
};

}  // namespace pointfrac
