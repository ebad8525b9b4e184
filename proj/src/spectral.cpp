#include "pointfrac/spectral.hpp"

#include <cmath>

#include "pointfrac/quadrature.hpp"

namespace pointfrac {

SpectralResult bound_state_h(double alpha) {
  SpectralResult out;
  out.family = Family::ClassicH;
  out.s = 2.0;
  if (alpha >= 0.0) return out;
  const double root = 4.0 * kPi * alpha;
  out.eigenvalue = -root * root;
  return out;
}

SpectralResult bound_state_3d(double alpha, double s) {
  if (!(s > 1.5 && s < 2.5))
    throw EndpointPower("bound_state_3d requires s in (3/2, 5/2)");
  SpectralResult out;
  out.family = Family::HomogeneousK;
  out.s = s;
  if (alpha >= 0.0) return out;
  const double base = 2.0 * kPi * std::abs(alpha) * s * std::sin(-3.0 * kPi / s);
  out.eigenvalue = -std::pow(base, s / (3.0 - s));
  if (std::abs(*out.eigenvalue) > 1e12) out.deep_bound_state = true;
  return out;
}

SpectralResult bound_state_1d(double alpha, double s) {
  if (!(s > 0.5 && s < 1.5) || std::abs(s - 1.0) < kEndpointTol)
    throw EndpointPower("bound_state_1d requires s in (1/2,1) or (1,3/2)");
  SpectralResult out;
  out.family = Family::HomogeneousK;
  out.s = s;
  if (!((s - 1.0) * alpha > 0.0)) return out;
  const double base = alpha * s * std::sin(kPi / s);
  out.eigenvalue = -std::pow(base, s / (1.0 - s));
  if (std::abs(*out.eigenvalue) > 1e12) out.deep_bound_state = true;
  return out;
}

double inhomogeneous_moment_integral(double lambda, double tau, double s, double E) {
  if (!(lambda > 0.0)) throw BadSpec("lambda must be positive");
  if (!(E < 0.0)) throw DomainError("the candidate eigenvalue must be negative");
  // integrand grouped over a common denominator to avoid cancellation:
  //   (tau E - (tau - E) X) / (X^2 (X - E)),  X = (p^2 + lambda)^{s/2}
  const double R = 1e6;
  auto f = [&](double r) {
    const double X = std::pow(r * r + lambda, 0.5 * s);
    const double num = tau * E - (tau - E) * X;
    return num / (X * X * (X - E)) * r * r;
  };
  const double head = quad::adaptive(f, 0.0, R, 1e-12);
  // large-p behaviour: -(tau - E) X^{-2} + E^2 X^{-3} + O(X^{-4})
  double tail = -(tau - E) * quad::tail_power_shifted(2.0, 2.0, s, lambda, R);
  tail += E * E * quad::tail_power_shifted(2.0, 2.0, 1.5 * s, lambda, R);
  return surface_measure(3) * (head + tail);
}

SpectralResult bound_state_inhomogeneous(double lambda, double tau, double s) {
  if (!(s > 1.5 && s < 2.5)) throw EndpointPower("requires s in (3/2, 5/2)");
  if (!(tau < 0.0)) throw DomainError("a negative eigenvalue requires tau < 0");
  SpectralResult out;
  out.family = Family::InhomogeneousD;
  out.s = s;

  auto moment = [&](double E) { return inhomogeneous_moment_integral(lambda, tau, s, E); };

  // M(tau) > 0; expand the lower bracket geometrically until the sign flips
  const double upper = tau;
  double lower = 2.0 * tau;
  bool bracketed = false;
  for (int k = 0; k < 41; ++k) {
    if (moment(lower) < 0.0) {
      bracketed = true;
      break;
    }
    lower *= 2.0;
    if (std::abs(lower) > 1e12 * std::abs(tau)) break;
  }
  if (!bracketed)
    throw BracketFailure("no sign change located below tau");
  const double E = quad::brent_root(moment, lower, upper,
                                    1e-13 * std::max(1.0, std::abs(tau)));
  out.eigenvalue = E;
  return out;
}

std::vector<SweepRow> figure1_sweep(double lambda, double s, const std::vector<double>& taus) {
  std::vector<SweepRow> rows;
  rows.reserve(taus.size());
  for (double tau : taus) {
    SweepRow row{tau, std::nullopt, ""};
    try {
      const SpectralResult r = bound_state_inhomogeneous(lambda, tau, s);
      row.E_tau = r.eigenvalue;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pointfrac
