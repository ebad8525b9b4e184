#pragma once

#include <optional>

#include "pointfrac/grid.hpp"
#include "pointfrac/kernels.hpp"
#include "pointfrac/params.hpp"

namespace pointfrac {

// Rank-one extension families.  ClassicH is the d = 3, s = 2 point
// perturbation of the Laplacian; HomogeneousK perturbs |p|^s (d in {1, 3});
// InhomogeneousD perturbs (p^2 + lambda)^{s/2} at fixed shift (d = 3).
enum class Family { ClassicH, HomogeneousK, InhomogeneousD };

GreenKernel family_kernel(Family family, const ProblemParams& params);

// Scalar multiplying F(0) in the singular part of the domain decomposition;
// coincides with the Krein scalar of the resolvent correction.  Infinite for
// tau = 0, zero for the unperturbed extension (except the constrained d = 1,
// s > 1 case, whose 'Friedrichs' split carries -1/Theta).
ExtendedReal boundary_coefficient(const ProblemParams& params, const ExtensionParam& ext,
                                  Family family);

class DomainElement {
 public:
  // Operator-domain elements satisfy kappa = boundary_coefficient * F(0)
  // (the override, when given, is checked against it; it is required when the
  // coefficient is infinite, where F(0) must vanish instead).  Form-domain
  // elements carry a free (F, kappa) pair.
  enum class Enforce { OperatorDomain, FormDomain };

  DomainElement(RadialFunction regular, const ProblemParams& params, ExtensionParam ext,
                Family family, std::optional<Complex> kappa_override = std::nullopt,
                Enforce enforce = Enforce::OperatorDomain);

  bool in_operator_domain() const { return operator_domain_; }

  const RadialFunction& regular() const { return regular_; }
  Complex kappa() const { return kappa_; }
  Complex xi() const;  // coefficient of (|p|^s + lambda)^{-1}: (2pi)^{-d/2} kappa
  const ProblemParams& params() const { return params_; }
  const ExtensionParam& ext() const { return ext_; }
  Family family() const { return family_; }
  const GreenKernel& kernel() const { return kernel_; }

  // momentum samples of the full element g = F + kappa * G
  RadialFunction total_profile() const;

  // the same element decomposed at a different shift (alpha families)
  DomainElement redecompose(double new_lambda) const;

 private:
  RadialFunction regular_;
  Complex kappa_;
  ProblemParams params_;
  ExtensionParam ext_;
  Family family_;
  GreenKernel kernel_;
  bool operator_domain_ = true;
};

DomainElement make_domain_element(const RadialFunction& F, const ProblemParams& params,
                                  const ExtensionParam& ext, Family family,
                                  std::optional<Complex> kappa_override = std::nullopt);

// Free (F, kappa) pair in the form domain of the extension.
DomainElement make_form_element(const RadialFunction& F, Complex kappa,
                                const ProblemParams& params, const ExtensionParam& ext,
                                Family family);

// Momentum profile of (A + lambda) g for the homogeneous families and of the
// operator itself for InhomogeneousD (the shift is part of its symbol).
RadialFunction apply_operator(const DomainElement& e);

DomainElement apply_resolvent(const RadialFunction& h, const ProblemParams& params,
                              const ExtensionParam& ext, Family family);

double quadratic_form(const DomainElement& e);

// d = 1, s in (1, 3/2): the form perturbation  || |grad|^{s/2} g ||^2 - |g(0)|^2 / alpha
double form_perturbation_value(const RadialFunction& g, double alpha, double s);

enum class FractionalDomainTag { PlainHs, FreeSingular, Constrained };
FractionalDomainTag classify_fractional_domain(double s, double tol = kEndpointTol);

// (h_alpha + lambda)^{-s/2} g for alpha >= 0, d = 3, s in (0, 2).
RadialFunction fractional_resolvent_h(const RadialFunction& g, ExtendedReal alpha,
                                      double lambda, double s);

// (h_alpha + lambda)^{s/2} g on momentum samples of g.
RadialFunction fractional_power_h(const RadialFunction& g, ExtendedReal alpha, double lambda,
                                  double s);

// Same on a decomposed element of the classical family; validates the power
// domain class and short-circuits integer s = 2 to the operator action.
RadialFunction fractional_power_h(const DomainElement& e, double s);

}  // namespace pointfrac
