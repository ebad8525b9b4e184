#include "pointfrac/operators.hpp"

#include <cmath>

#include "pointfrac/quadrature.hpp"

namespace pointfrac {

namespace {

void validate_family(Family family, const ProblemParams& p) {
  switch (family) {
    case Family::ClassicH:
      if (p.d != 3 || std::abs(p.s - 2.0) > p.endpoint_tol)
        throw UnsupportedFamily("ClassicH requires d = 3, s = 2");
      break;
    case Family::HomogeneousK:
      if (p.d != 1 && p.d != 3)
        throw UnsupportedDimension("HomogeneousK implemented for d in {1, 3}");
      if (p.regime.n != 1)
        throw UnsupportedFamily("HomogeneousK requires s in the rank-one window");
      p.require_not_s_equal_one();
      break;
    case Family::InhomogeneousD:
      if (p.d != 3) throw UnsupportedDimension("InhomogeneousD requires d = 3");
      if (p.regime.n != 1)
        throw UnsupportedFamily("InhomogeneousD requires s in (3/2, 5/2)");
      break;
  }
}

double pole_term_3d(double s, double lambda) {
  return std::pow(lambda, 3.0 / s - 1.0) / (2.0 * kPi * s * std::sin(3.0 * kPi / s));
}

void check_tau_shift(const TauAt& t, const ProblemParams& p) {
  if (std::abs(t.lambda - p.lambda) > 1e-12 * std::max(1.0, p.lambda))
    throw BadSpec("tau parametrisation shift must match the working shift");
}

}  // namespace

GreenKernel family_kernel(Family family, const ProblemParams& params) {
  return GreenKernel(family == Family::InhomogeneousD ? KernelKind::Inhomogeneous
                                                      : KernelKind::Homogeneous,
                     params);
}

ExtendedReal boundary_coefficient(const ProblemParams& params, const ExtensionParam& ext,
                                  Family family) {
  validate_family(family, params);
  const double s = params.s, lambda = params.lambda;

  if (std::holds_alternative<MatrixParam>(ext))
    throw UnsupportedFamily("matrix extensions are handled by the high-rank machinery");

  if (family == Family::InhomogeneousD) {
    if (!std::holds_alternative<TauAt>(ext))
      throw UnsupportedFamily("the inhomogeneous family is tau-parametrised");
    const TauAt& t = std::get<TauAt>(ext);
    check_tau_shift(t, params);
    if (t.tau.infinite) return ExtendedReal::finite(0.0);
    if (t.tau.is_zero()) return ExtendedReal::infinity();
    const double num = 8.0 * std::pow(kPi, 1.5) * std::pow(lambda, s - 1.5) *
                       std::exp(std::lgamma(s) - std::lgamma(s - 1.5));
    return ExtendedReal::finite(num / t.tau.value);
  }

  if (params.d == 3) {
    if (const TauAt* t = std::get_if<TauAt>(&ext)) {
      check_tau_shift(*t, params);
      if (t->tau.infinite) return ExtendedReal::finite(0.0);
      if (t->tau.is_zero()) return ExtendedReal::infinity();
      if (family == Family::ClassicH)
        return ExtendedReal::finite(8.0 * kPi * std::sqrt(lambda) / t->tau.value);
      const double num = 2.0 * kPi * s * s * std::sin(3.0 * kPi / s) *
                         std::pow(lambda, 2.0 - 3.0 / s);
      return ExtendedReal::finite(num / (t->tau.value * (s - 3.0)));
    }
    const AlphaParam& a = std::get<AlphaParam>(ext);
    if (a.alpha.infinite) return ExtendedReal::finite(0.0);
    const double denom = a.alpha.value - pole_term_3d(s, lambda);
    if (denom == 0.0) return ExtendedReal::infinity();
    return ExtendedReal::finite(1.0 / denom);
  }

  // d = 1
  const OmegaTheta ot = omega_theta_flag(s, params.endpoint_tol);
  const double Th = theta(s, lambda, params.endpoint_tol);
  if (const TauAt* t = std::get_if<TauAt>(&ext)) {
    check_tau_shift(*t, params);
    if (t->tau.infinite) return ExtendedReal::finite(-ot.theta_flag / Th);
    if (t->tau.is_zero()) return ExtendedReal::infinity();
    return ExtendedReal::finite(ot.omega * std::pow(lambda, 2.0 - 1.0 / s) / t->tau.value -
                                ot.theta_flag / Th);
  }
  const AlphaParam& a = std::get<AlphaParam>(ext);
  if (a.alpha.infinite) return ExtendedReal::finite(0.0);
  const double denom = a.alpha.value - Th;
  if (denom == 0.0) return ExtendedReal::infinity();
  return ExtendedReal::finite(1.0 / denom);
}

DomainElement::DomainElement(RadialFunction regular, const ProblemParams& params,
                             ExtensionParam ext, Family family,
                             std::optional<Complex> kappa_override, Enforce enforce)
    : regular_(std::move(regular)),
      params_(params),
      ext_(std::move(ext)),
      family_(family),
      kernel_(family_kernel(family, params)),
      operator_domain_(enforce == Enforce::OperatorDomain) {
  if (regular_.grid().dimension() != params_.d)
    throw GridMismatch("regular part lives in the wrong dimension");
  if (!operator_domain_) {
    kappa_ = kappa_override.value_or(Complex(0.0));
    return;
  }
  const ExtendedReal c = boundary_coefficient(params_, ext_, family_);
  const Complex f0 = eval_at_zero(regular_);
  const double f_scale = norm_l2(regular_);
  if (c.infinite) {
    if (std::abs(f0) > 1e-8 * std::max(1.0, f_scale))
      throw DomainViolation("tau = 0 requires a regular part vanishing at the origin");
    if (!kappa_override) throw DomainViolation("tau = 0 element needs an explicit kappa");
    kappa_ = *kappa_override;
    return;
  }
  const Complex expected = c.value * f0;
  if (kappa_override) {
    kappa_ = *kappa_override;
    const double scale = std::max(std::abs(kappa_), std::abs(expected));
    if (scale > 1e-13 * (1.0 + f_scale) &&
        std::abs(kappa_ - expected) > 1e-8 * scale)
      throw DomainViolation("boundary condition kappa = c F(0) violated");
  } else {
    kappa_ = expected;
  }
}

Complex DomainElement::xi() const {
  return std::pow(2.0 * kPi, -0.5 * params_.d) * kappa_;
}

namespace {

std::optional<TailDescriptor> combine_tails(const std::optional<TailDescriptor>& a,
                                            const std::optional<TailDescriptor>& b) {
  if (!a) return b;
  if (!b) return a;
  if (std::abs(a->exponent - b->exponent) < 1e-12)
    return TailDescriptor{a->amplitude + b->amplitude, a->exponent};
  return (a->exponent < b->exponent) ? a : b;  // slower decay dominates
}

}  // namespace

RadialFunction DomainElement::total_profile() const {
  const RadialFunction G = kernel_profile(kernel_, regular_.grid_ptr());
  Eigen::ArrayXcd vals = regular_.values() + kappa_ * G.values();
  std::optional<TailDescriptor> singular_tail;
  if (kappa_ != Complex(0.0)) {
    singular_tail = G.tail();
    singular_tail->amplitude *= kappa_;
  }
  return RadialFunction(regular_.grid_ptr(), std::move(vals),
                        combine_tails(regular_.tail(), singular_tail), false);
}

DomainElement DomainElement::redecompose(double new_lambda) const {
  if (family_ == Family::InhomogeneousD)
    throw UnsupportedFamily("the inhomogeneous family is tied to its shift");
  if (!(new_lambda > 0.0)) throw BadSpec("shift must be positive");
  const ProblemParams p2(params_.d, params_.s, new_lambda, params_.endpoint_tol);
  const double s = params_.s;
  const double l1 = params_.lambda, l2 = new_lambda;
  const Complex xi_coef = xi();
  const auto& r = regular_.grid().nodes();
  Eigen::ArrayXcd vals(regular_.values().size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double rs = std::pow(r[i], s);
    vals[i] = regular_.values()[i] + xi_coef * (l2 - l1) / ((rs + l1) * (rs + l2));
  }
  std::optional<TailDescriptor> bridge;
  if (xi_coef != Complex(0.0)) bridge = TailDescriptor{xi_coef * (l2 - l1), 2.0 * s};
  RadialFunction F2(regular_.grid_ptr(), std::move(vals),
                    combine_tails(regular_.tail(), bridge), false);

  ExtensionParam ext2 = ext_;
  if (const TauAt* t = std::get_if<TauAt>(&ext_)) {
    if (t->tau.infinite) {
      ext2 = TauAt{l2, ExtendedReal::infinity()};
    } else {
      const ExtendedReal alpha = tau_to_alpha(params_, t->tau);
      ext2 = TauAt{l2, alpha_to_tau(p2, alpha)};
    }
  }
  return DomainElement(std::move(F2), p2, std::move(ext2), family_, kappa_,
                       operator_domain_ ? Enforce::OperatorDomain : Enforce::FormDomain);
}

DomainElement make_domain_element(const RadialFunction& F, const ProblemParams& params,
                                  const ExtensionParam& ext, Family family,
                                  std::optional<Complex> kappa_override) {
  return DomainElement(F, params, ext, family, kappa_override);
}

DomainElement make_form_element(const RadialFunction& F, Complex kappa,
                                const ProblemParams& params, const ExtensionParam& ext,
                                Family family) {
  return DomainElement(F, params, ext, family, kappa,
                       DomainElement::Enforce::FormDomain);
}

RadialFunction apply_operator(const DomainElement& e) {
  if (!e.in_operator_domain())
    throw DomainViolation("operator action needs an operator-domain element");
  const double s = e.params().s, lambda = e.params().lambda;
  const Multiplier m = (e.family() == Family::InhomogeneousD)
                           ? symbol_inhomogeneous(s, lambda)
                           : symbol_homogeneous(s, lambda);
  return multiplier_apply(e.regular(), m);
}

DomainElement apply_resolvent(const RadialFunction& h, const ProblemParams& params,
                              const ExtensionParam& ext, Family family) {
  validate_family(family, params);
  const double s = params.s, lambda = params.lambda;

  if (const TauAt* t = std::get_if<TauAt>(&ext)) {
    if (t->tau.is_zero()) throw NotInvertible("tau = 0 extension is not invertible");
  }
  if (const AlphaParam* a = std::get_if<AlphaParam>(&ext); a && !a->alpha.infinite) {
    double pole = 0.0;
    if (family == Family::HomogeneousK && params.d == 1)
      pole = theta(s, lambda, params.endpoint_tol);
    else
      pole = pole_term_3d(s, lambda);
    if (std::abs(a->alpha.value - pole) <
        1e-12 * std::max({1.0, std::abs(a->alpha.value), std::abs(pole)}))
      throw PoleAtLambda(lambda);
  }

  const ExtendedReal c = boundary_coefficient(params, ext, family);
  if (c.infinite) throw NotInvertible("extension is not invertible at this shift");

  const Multiplier m = (family == Family::InhomogeneousD)
                           ? resolvent_inhomogeneous(s, lambda)
                           : resolvent_homogeneous(s, lambda);
  RadialFunction regular = multiplier_apply(h, m);
  const RadialFunction G = kernel_profile(family_kernel(family, params), h.grid_ptr());
  const Complex kappa = c.value * inner_product(G, h);
  return DomainElement(std::move(regular), params, ext, family, kappa);
}

namespace {

// \int r^s |F|^2 dp with tail handling (homogeneous Sobolev seminorm squared)
double homogeneous_seminorm_sq(const RadialFunction& F, double s) {
  const int d = F.grid().dimension();
  const auto& r = F.grid().nodes();
  double acc = (F.grid().weights() * r.pow(s) * F.values().abs2()).sum();
  if (F.tail()) {
    const double q = 2.0 * F.tail()->exponent - s;
    if (!(q > d)) throw FormDomainViolation("regular part is not in the form domain");
    const double R = F.grid().spec().r_max;
    acc += surface_measure(d) * std::norm(F.tail()->amplitude) * std::pow(R, d - q) / (q - d);
  }
  return acc;
}

double inhomogeneous_form_part(const RadialFunction& F, double s, double lambda) {
  const int d = F.grid().dimension();
  const auto& r = F.grid().nodes();
  double acc = (F.grid().weights() * (r * r + lambda).pow(0.5 * s) * F.values().abs2()).sum();
  if (F.tail()) {
    const double q = 2.0 * F.tail()->exponent - s;
    if (!(q > d)) throw FormDomainViolation("regular part is not in the form domain");
    const double R = F.grid().spec().r_max;
    acc += surface_measure(d) * std::norm(F.tail()->amplitude) * std::pow(R, d - q) / (q - d);
  }
  return acc;
}

}  // namespace

double quadratic_form(const DomainElement& e) {
  const ProblemParams& p = e.params();
  const double s = p.s, lambda = p.lambda;
  const ExtendedReal c = boundary_coefficient(p, e.ext(), e.family());

  if (e.family() == Family::InhomogeneousD) {
    const double part = inhomogeneous_form_part(e.regular(), s, lambda);
    if (e.kappa() == Complex(0.0)) return part;
    if (c.infinite || c.is_zero())
      throw FormDomainViolation("kappa term without a finite coefficient");
    return part + (1.0 / c.value) * std::norm(e.kappa());
  }

  RadialFunction F = e.regular();
  Complex kappa = e.kappa();
  double coeff;  // multiplies |kappa|^2
  bool coeff_infinite = false;

  if (p.d == 1) {
    const OmegaTheta ot = omega_theta_flag(s, p.endpoint_tol);
    const double Th = theta(s, lambda, p.endpoint_tol);
    if (ot.theta_flag == 1) {
      // re-split so the regular part vanishes at the origin
      const Complex f0 = eval_at_zero(F);
      const RadialFunction G = kernel_profile(e.kernel(), F.grid_ptr());
      Eigen::ArrayXcd vals = F.values() - (f0 / Th) * G.values();
      auto gt = G.tail();
      gt->amplitude *= -(f0 / Th);
      F = RadialFunction(F.grid_ptr(), std::move(vals), combine_tails(F.tail(), gt), false);
      kappa += f0 / Th;
    }
    if (c.infinite) {
      coeff_infinite = true;
      coeff = 0.0;
    } else {
      const double denom = ot.theta_flag / Th + c.value;
      if (denom == 0.0) {
        coeff_infinite = true;
        coeff = 0.0;
      } else {
        coeff = 1.0 / denom;
      }
    }
  } else {
    if (c.infinite) {
      coeff = 0.0;  // tau = 0: |kappa|^2 coefficient vanishes
    } else if (c.is_zero()) {
      coeff_infinite = true;
      coeff = 0.0;
    } else {
      coeff = 1.0 / c.value;
    }
  }

  const double semi = homogeneous_seminorm_sq(F, s);
  const RadialFunction g = e.total_profile();
  const double g_sq = inner_product(g, g).real();
  const double f_sq = inner_product(F, F).real();
  double value = semi - lambda * g_sq + lambda * f_sq;
  if (std::abs(kappa) > 0.0) {
    if (coeff_infinite)
      throw FormDomainViolation("singular component not admitted by this extension");
    value += coeff * std::norm(kappa);
  }
  return value;
}

double form_perturbation_value(const RadialFunction& g, double alpha, double s) {
  if (g.grid().dimension() != 1)
    throw DomainError("form perturbation is a d = 1 construction");
  if (!(s > 1.0 && s < 1.5)) throw DomainError("requires s in (1, 3/2)");
  if (alpha == 0.0) throw DomainError("alpha must be nonzero");
  const double semi = homogeneous_seminorm_sq(g, s);
  const Complex g0 = eval_at_zero(g);
  return semi - std::norm(g0) / alpha;
}

FractionalDomainTag classify_fractional_domain(double s, double tol) {
  if (!(s >= 0.0 && s <= 2.0)) throw DomainError("power must lie in [0, 2]");
  if (std::abs(s - 0.5) < tol || std::abs(s - 1.5) < tol)
    throw EndpointPower("transition powers 1/2 and 3/2 are excluded");
  if (s < 0.5) return FractionalDomainTag::PlainHs;
  if (s < 1.5) return FractionalDomainTag::FreeSingular;
  return FractionalDomainTag::Constrained;
}

namespace {

// Shared state for one evaluation of the t-integral in the fractional
// formulas, under the substitution t = lambda (u/(1-u))^2.
struct FractionalIntegral {
  const RadialFunction& g;
  double lambda, s, a, sine, sign;
  Eigen::ArrayXd r2;
  double norm3 = std::pow(2.0 * kPi, -1.5);

  // <G_{lambda+t}, g>, grid part plus the algebraic tail of g handled exactly
  Complex pairing(double t, const Eigen::ArrayXd& Gv) const {
    Complex pair = (g.grid().weights() * Gv * g.values()).sum();
    if (g.tail()) {
      const double R = g.grid().spec().r_max;
      const double q = g.tail()->exponent;
      const double c = lambda + t;
      // \int_R^inf 4 pi r^2 norm3/(r^2+c) amp r^{-q} dr
      double radial;
      if (q == 2.0) {
        const double rc = std::sqrt(c);
        radial = std::atan2(rc, R) / rc;  // pi/2 - atan(R/rc), stable form
      } else {
        // r = R/w; knee of the integrand sits at w ~ R/sqrt(c)
        radial = 0.0;
        const double knee = std::min(0.5, R / std::sqrt(c));
        double lo = 0.0;
        for (double hi : {knee / 16.0, knee, std::min(1.0, 16.0 * knee), 1.0}) {
          if (hi <= lo) continue;
          radial += quad::gl_panel(
              [&](double wv) { return std::pow(wv, q - 2.0) / (R * R + c * wv * wv); },
              lo, hi, 16);
          lo = hi;
        }
        radial *= std::pow(R, 3.0 - q);
      }
      pair += 4.0 * kPi * norm3 * g.tail()->amplitude * radial;
    }
    return pair;
  }

  // integrand of the u-integral parametrised by v = 1 - u, so the far end of
  // the substitution stays representable; the contribution is
  // amp * G_{lambda+t} (values Gv on the grid, norm3 r^{-2} tail)
  Complex amplitude_v(double v, Eigen::ArrayXd& Gv, bool resolvent) const {
    const double ratio = (1.0 - v) / v;
    const double t = lambda * ratio * ratio;
    const double dt = 2.0 * lambda * (1.0 - v) / (v * v * v);
    const double tpow = resolvent ? std::pow(t, -0.5 * s) : std::pow(t, 0.5 * s);
    const double coef = 4.0 * sine * tpow / (4.0 * kPi * a + std::sqrt(lambda + t));
    Gv = norm3 / (r2 + (lambda + t));
    return sign * dt * coef * pairing(t, Gv);
  }
  Complex amplitude(double u, Eigen::ArrayXd& Gv, bool resolvent) const {
    return amplitude_v(1.0 - u, Gv, resolvent);
  }
};

RadialFunction fractional_apply(const RadialFunction& g, ExtendedReal alpha, double lambda,
                                double s, bool resolvent) {
  if (g.grid().dimension() != 3)
    throw UnsupportedDimension("fractional machinery is the d = 3 construction");
  if (!(lambda > 0.0)) throw BadSpec("lambda must be positive");
  if (!(s >= 0.0 && s <= 2.0)) throw DomainError("power must lie in [0, 2]");
  if (!alpha.infinite && alpha.value < 0.0)
    throw DomainError("negative alpha is outside the non-negative functional calculus");

  const Multiplier m =
      resolvent ? resolvent_inhomogeneous(s, lambda) : symbol_inhomogeneous(s, lambda);
  RadialFunction base = multiplier_apply(g, m);
  const double sine = std::sin(0.5 * s * kPi);
  if (alpha.infinite || std::abs(sine) < 1e-14) return base;

  const auto& r = g.grid().nodes();
  FractionalIntegral fi{g,    lambda, s, alpha.value, sine, resolvent ? 1.0 : -1.0,
                        r * r};

  Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(r.size());
  Complex tail_amp = 0.0;
  Eigen::ArrayXd Gv(r.size());

  // Endpoint u -> 0 carries the u^{beta} factor (beta = 1-s resolvent, 1+s
  // power after dt ~ u du); integrate weight * cubic fit of the smooth part
  // analytically so powers s near 2 keep their concentration limit.
  const double beta = resolvent ? 1.0 - s : 1.0 + s;
  const double u0 = 1.0 / 64.0;
  {
    const double nodes_u[4] = {0.08 * u0, 0.35 * u0, 0.65 * u0, 0.92 * u0};
    Eigen::ArrayXcd psi[4];
    Complex psi_tail[4];
    for (int j = 0; j < 4; ++j) {
      const Complex amp = fi.amplitude(nodes_u[j], Gv, resolvent);
      const double wgt = std::pow(nodes_u[j], -beta);
      psi[j] = (amp * wgt) * Gv.cast<Complex>();
      psi_tail[j] = amp * wgt * fi.norm3;
    }
    // Newton divided differences -> power basis about 0
    auto fit_moments = [&](auto sample) -> Complex {
      Complex c0 = sample(0);
      Complex d01 = (sample(1) - sample(0)) / (nodes_u[1] - nodes_u[0]);
      Complex d12 = (sample(2) - sample(1)) / (nodes_u[2] - nodes_u[1]);
      Complex d23 = (sample(3) - sample(2)) / (nodes_u[3] - nodes_u[2]);
      Complex d012 = (d12 - d01) / (nodes_u[2] - nodes_u[0]);
      Complex d123 = (d23 - d12) / (nodes_u[3] - nodes_u[1]);
      Complex d0123 = (d123 - d012) / (nodes_u[3] - nodes_u[0]);
      // expand about u = 0
      const double x0 = nodes_u[0], x1 = nodes_u[1], x2 = nodes_u[2];
      Complex p0 = c0 - d01 * x0 + d012 * x0 * x1 - d0123 * x0 * x1 * x2;
      Complex p1 = d01 - d012 * (x0 + x1) + d0123 * (x0 * x1 + x0 * x2 + x1 * x2);
      Complex p2 = d012 - d0123 * (x0 + x1 + x2);
      Complex p3 = d0123;
      Complex mom = 0.0;
      const Complex pc[4] = {p0, p1, p2, p3};
      for (int k = 0; k < 4; ++k)
        mom += pc[k] * std::pow(u0, beta + k + 1.0) / (beta + k + 1.0);
      return mom;
    };
    for (Eigen::Index idx = 0; idx < r.size(); ++idx)
      acc[idx] += fit_moments([&](int j) { return psi[j][idx]; });
    tail_amp += fit_moments([&](int j) { return psi_tail[j]; });
  }

  // uniform panels on [u0, 255/256], then geometric refinement of v = 1 - u
  // down to 1e-16 so the far t-tail (t ~ lambda/v^2) is captured
  const auto& rule = quad::gauss_legendre(8);
  {
    const int nu = 160;
    const double ub = 255.0 / 256.0;
    for (int i = 0; i < nu; ++i) {
      const double a = u0 + (ub - u0) * i / nu, b = u0 + (ub - u0) * (i + 1) / nu;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int k = 0; k < 8; ++k) {
        const Complex amp =
            (half * rule.w[k]) * fi.amplitude(mid + half * rule.x[k], Gv, resolvent);
        acc += amp * Gv.cast<Complex>();
        tail_amp += amp * fi.norm3;
      }
    }
    double v_hi = 1.0 - ub;
    while (v_hi > 1e-16) {
      const double v_lo = 0.5 * v_hi;
      const double mid = 0.5 * (v_lo + v_hi), half = 0.5 * (v_hi - v_lo);
      for (int k = 0; k < 8; ++k) {
        const Complex amp =
            (half * rule.w[k]) * fi.amplitude_v(mid + half * rule.x[k], Gv, resolvent);
        acc += amp * Gv.cast<Complex>();
        tail_amp += amp * fi.norm3;
      }
      v_hi = v_lo;
    }
  }

  Eigen::ArrayXcd vals = base.values() + acc;
  // When the multiplier pushes the base tail to r^{-2} or slower the true
  // composite tail is a cancellation against the t-integral, which the
  // one-term descriptor cannot represent; drop it and let the samples speak.
  std::optional<TailDescriptor> tail;
  if (!(base.tail() && base.tail()->exponent <= 2.0 + 1e-12))
    tail = combine_tails(base.tail(), TailDescriptor{tail_amp, 2.0});
  return RadialFunction(g.grid_ptr(), std::move(vals), tail, false);
}

}  // namespace

RadialFunction fractional_resolvent_h(const RadialFunction& g, ExtendedReal alpha,
                                      double lambda, double s) {
  if (!(s > 0.0 && s < 2.0 + 1e-12)) throw DomainError("resolvent power must lie in (0, 2]");
  return fractional_apply(g, alpha, lambda, s, true);
}

RadialFunction fractional_power_h(const RadialFunction& g, ExtendedReal alpha, double lambda,
                                  double s) {
  return fractional_apply(g, alpha, lambda, s, false);
}

RadialFunction fractional_power_h(const DomainElement& e, double s) {
  if (e.family() != Family::ClassicH)
    throw UnsupportedFamily("fractional powers are built over the classical family");
  const AlphaParam* a = std::get_if<AlphaParam>(&e.ext());
  if (!a) throw UnsupportedFamily("fractional powers use the alpha parametrisation");
  if (!e.in_operator_domain())
    throw DomainViolation("power action needs an operator-domain element");
  const FractionalDomainTag tag = classify_fractional_domain(s);
  (void)tag;  // operator-domain elements satisfy every class constraint
  if (std::abs(s - 2.0) < kEndpointTol) return apply_operator(e);
  return fractional_apply(e.total_profile(), a->alpha, e.params().lambda, s, false);
}

}  // namespace pointfrac
