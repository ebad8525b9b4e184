#include <doctest.h>

#include <cmath>

#include "pointfrac/operators.hpp"
#include "pointfrac/verify.hpp"

using namespace pointfrac;

namespace {
GridPtr grid3() {
  static GridPtr g = make_grid(GridSpec{}, 3);
  return g;
}
GridPtr grid1() {
  static GridPtr g = make_grid(GridSpec{}, 1);
  return g;
}
}  // namespace

TEST_CASE("boundary coefficients") {
  ProblemParams p(3, 2.0, 1.0);
  const double tau = 3.0;
  // classic family: 8 pi sqrt(lambda) / tau
  CHECK(boundary_coefficient(p, TauAt{1.0, ExtendedReal::finite(tau)}, Family::ClassicH)
            .value == doctest::Approx(8.0 * kPi / tau).epsilon(1e-15));
  // the general homogeneous coefficient reduces to it at s = 2
  CHECK(boundary_coefficient(p, TauAt{1.0, ExtendedReal::finite(tau)},
                             Family::HomogeneousK)
            .value == doctest::Approx(8.0 * kPi / tau).epsilon(1e-13));
  // the inhomogeneous coefficient at s = 2: Gamma(1/2) cancellation
  CHECK(boundary_coefficient(p, TauAt{1.0, ExtendedReal::finite(tau)},
                             Family::InhomogeneousD)
            .value == doctest::Approx(8.0 * kPi / tau).epsilon(1e-13));
  // alpha form (alpha + sqrt(lambda)/(4 pi))^{-1}
  CHECK(boundary_coefficient(p, AlphaParam{ExtendedReal::finite(0.5)}, Family::ClassicH)
            .value ==
        doctest::Approx(1.0 / (0.5 + 1.0 / (4.0 * kPi))).epsilon(1e-13));
  // friedrichs has no singular part
  CHECK(boundary_coefficient(p, TauAt{1.0, ExtendedReal::infinity()}, Family::ClassicH)
            .is_zero());
  // tau = 0 has an infinite coefficient
  CHECK(boundary_coefficient(p, TauAt{1.0, ExtendedReal::finite(0.0)}, Family::ClassicH)
            .infinite);

  // d = 1 friedrichs: no singular part below s = 1, constrained split above
  ProblemParams lo(1, 0.8, 1.0), hi(1, 1.2, 1.0);
  CHECK(boundary_coefficient(lo, TauAt{1.0, ExtendedReal::infinity()},
                             Family::HomogeneousK)
            .is_zero());
  CHECK(boundary_coefficient(hi, TauAt{1.0, ExtendedReal::infinity()},
                             Family::HomogeneousK)
            .value == doctest::Approx(-1.0 / theta(1.2, 1.0)).epsilon(1e-14));
  // ... and the alpha = 0 label of the same extension gives the same split
  CHECK(boundary_coefficient(hi, AlphaParam{ExtendedReal::finite(0.0)},
                             Family::HomogeneousK)
            .value == doctest::Approx(-1.0 / theta(1.2, 1.0)).epsilon(1e-14));

  CHECK_THROWS_AS(boundary_coefficient(p, AlphaParam{ExtendedReal::finite(1.0)},
                                       Family::InhomogeneousD),
                  UnsupportedFamily);
  CHECK_THROWS_AS(boundary_coefficient(ProblemParams(3, 1.8, 1.0), TauAt{},
                                       Family::ClassicH),
                  UnsupportedFamily);
}

TEST_CASE("domain elements and the boundary condition") {
  ProblemParams p(3, 1.8, 1.0);
  ExtensionParam ext = AlphaParam{ExtendedReal::finite(1.0)};

  // moment-cancelled regular part: kappa = 0, element of the closure
  RadialFunction mf = verify::random_moment_free_profile(grid3(), 8);
  DomainElement e0 = make_domain_element(mf, p, ext, Family::HomogeneousK);
  CHECK(std::abs(e0.kappa()) < 1e-10);

  // friedrichs extension never carries a singular part
  RadialFunction f = verify::random_smooth_profile(grid3(), 9);
  DomainElement ef = make_domain_element(f, p, AlphaParam{ExtendedReal::infinity()},
                                         Family::HomogeneousK);
  CHECK(ef.kappa() == Complex(0.0));

  // kappa follows the coefficient times the origin value
  DomainElement e = make_domain_element(f, p, ext, Family::HomogeneousK);
  const ExtendedReal c = boundary_coefficient(p, ext, Family::HomogeneousK);
  CHECK(e.kappa().real() ==
        doctest::Approx(c.value * eval_at_zero(f).real()).epsilon(1e-12));
  // xi = (2 pi)^{-d/2} kappa reconstructs the same singular profile
  CHECK(std::abs(e.xi() - std::pow(2.0 * kPi, -1.5) * e.kappa()) == 0.0);

  // a wrong kappa override is rejected
  CHECK_THROWS_AS(
      make_domain_element(f, p, ext, Family::HomogeneousK, e.kappa() * 1.5),
      DomainViolation);

  // tau = 0: regular part must vanish at the origin, kappa is free
  ExtensionParam tau0 = TauAt{1.0, ExtendedReal::finite(0.0)};
  CHECK_THROWS_AS(make_domain_element(f, p, tau0, Family::HomogeneousK, Complex(1.0)),
                  DomainViolation);
  DomainElement ez = make_domain_element(mf, p, tau0, Family::HomogeneousK, Complex(2.0));
  CHECK(ez.kappa() == Complex(2.0));
}

TEST_CASE("operator action") {
  ProblemParams p(3, 1.8, 1.0);
  ExtensionParam tau0 = TauAt{1.0, ExtendedReal::finite(0.0)};

  // the lambda eigenvector at tau = 0: (k + lambda) G = 0
  GridPtr g = grid3();
  Eigen::ArrayXcd zero = Eigen::ArrayXcd::Zero(g->size());
  DomainElement ez(RadialFunction(g, zero), p, tau0, Family::HomogeneousK, Complex(1.0));
  RadialFunction out = apply_operator(ez);
  CHECK(out.values().abs().maxCoeff() == 0.0);

  // s = 2: the general family and the classical one act identically
  ProblemParams p2(3, 2.0, 1.0);
  RadialFunction h = verify::random_smooth_profile(g, 10);
  ExtensionParam a = AlphaParam{ExtendedReal::finite(0.4)};
  DomainElement ek = apply_resolvent(h, p2, a, Family::HomogeneousK);
  DomainElement eh = apply_resolvent(h, p2, a, Family::ClassicH);
  CHECK((apply_operator(ek).values() - apply_operator(eh).values()).abs().maxCoeff() <
        1e-13);

  // form elements do not admit the operator action
  RadialFunction f = verify::random_smooth_profile(g, 11);
  DomainElement form_el = make_form_element(f, Complex(1.0), p, a, Family::HomogeneousK);
  CHECK_THROWS_AS(apply_operator(form_el), DomainViolation);
}

TEST_CASE("xi reconstructs the singular sector") {
  // g-hat assembled as F-hat + xi/(|p|^s + lambda) equals the kernel route
  ProblemParams p(3, 1.8, 1.0);
  RadialFunction h = verify::random_smooth_profile(grid3(), 77);
  DomainElement e = apply_resolvent(h, p, AlphaParam{ExtendedReal::finite(0.6)},
                                    Family::HomogeneousK);
  const auto& r = grid3()->nodes();
  Eigen::ArrayXcd via_xi(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i)
    via_xi[i] = e.regular().values()[i] + e.xi() / (std::pow(r[i], 1.8) + 1.0);
  CHECK((via_xi - e.total_profile().values()).abs().maxCoeff() /
            e.total_profile().values().abs().maxCoeff() <
        1e-14);
}

TEST_CASE("resolvents") {
  ProblemParams p(3, 1.8, 1.0);
  GridPtr g = grid3();
  RadialFunction h = verify::random_smooth_profile(g, 12);

  // alpha = infinity is the free resolvent
  DomainElement free_el = apply_resolvent(h, p, AlphaParam{ExtendedReal::infinity()},
                                          Family::HomogeneousK);
  RadialFunction mult = multiplier_apply(h, resolvent_homogeneous(1.8, 1.0));
  CHECK((free_el.total_profile().values() - mult.values()).abs().maxCoeff() < 1e-15);

  // round trip within the inverse-pair tolerance
  DomainElement e = apply_resolvent(h, p, AlphaParam{ExtendedReal::finite(1.0)},
                                    Family::HomogeneousK);
  CHECK((apply_operator(e).values() - h.values()).abs().maxCoeff() /
            h.values().abs().maxCoeff() <
        1e-8);

  // tau = 0 is not invertible
  CHECK_THROWS_AS(
      apply_resolvent(h, p, TauAt{1.0, ExtendedReal::finite(0.0)}, Family::HomogeneousK),
      NotInvertible);

  // pole at the bound state shift
  const double alpha = -1.0;
  const double ls = std::pow(2.0 * kPi * 1.0 * 1.8 * std::sin(-3.0 * kPi / 1.8),
                             1.8 / (3.0 - 1.8));
  ProblemParams pstar(3, 1.8, ls);
  GridPtr gs = grid3();
  RadialFunction hs = verify::random_smooth_profile(gs, 13);
  CHECK_THROWS_AS(apply_resolvent(hs, pstar, AlphaParam{ExtendedReal::finite(alpha)},
                                  Family::HomogeneousK),
                  PoleAtLambda);
}

TEST_CASE("redecomposition keeps the extension") {
  // same alpha at two shifts labels the same operator
  ProblemParams p(3, 2.2, 1.0);
  RadialFunction h = verify::random_smooth_profile(grid3(), 14);
  DomainElement e = apply_resolvent(h, p, AlphaParam{ExtendedReal::finite(0.8)},
                                    Family::HomogeneousK);
  DomainElement e2 = e.redecompose(2.0);
  CHECK(e2.params().lambda == doctest::Approx(2.0));
  CHECK(std::abs(e2.kappa() - e.kappa()) < 1e-12 * std::max(1.0, std::abs(e.kappa())));
  Eigen::ArrayXcd a1 =
      apply_operator(e).values() - Complex(1.0) * e.total_profile().values();
  Eigen::ArrayXcd a2 =
      apply_operator(e2).values() - Complex(2.0) * e2.total_profile().values();
  CHECK((a1 - a2).abs().maxCoeff() / a1.abs().maxCoeff() < 1e-8);

  // the tau parametrisation transports through the alpha relation
  ExtensionParam taux = TauAt{1.0, ExtendedReal::finite(4.0)};
  DomainElement et = apply_resolvent(h, p, taux, Family::HomogeneousK);
  DomainElement et2 = et.redecompose(3.0);
  const TauAt& moved = std::get<TauAt>(et2.ext());
  CHECK(pair_consistency(p, 4.0, 3.0, moved.tau.value));
}

TEST_CASE("quadratic forms") {
  // kappa = 0: the homogeneous seminorm alone
  ProblemParams p(3, 1.8, 1.0);
  RadialFunction f = verify::random_smooth_profile(grid3(), 15);
  DomainElement e0 = make_form_element(f, Complex(0.0), p,
                                       AlphaParam{ExtendedReal::finite(0.7)},
                                       Family::HomogeneousK);
  const auto& r = grid3()->nodes();
  const double semi = (grid3()->weights() * r.pow(1.8) * f.values().abs2()).sum();
  CHECK(quadratic_form(e0) == doctest::Approx(semi).epsilon(1e-12));

  // s = 2: the |kappa|^2 coefficient is alpha + sqrt(lambda)/(4 pi)
  ProblemParams p2(3, 2.0, 1.0);
  const double alpha = 0.9;
  Eigen::ArrayXcd zero = Eigen::ArrayXcd::Zero(grid3()->size());
  DomainElement kernel_dir =
      make_form_element(RadialFunction(grid3(), zero), Complex(1.0), p2,
                        AlphaParam{ExtendedReal::finite(alpha)}, Family::ClassicH);
  const RadialFunction gk = kernel_dir.total_profile();
  const double val = quadratic_form(kernel_dir) + 1.0 * inner_product(gk, gk).real();
  CHECK(val == doctest::Approx(alpha + 1.0 / (4.0 * kPi)).epsilon(1e-9));

  // form against operator pair: q(e) = <g, h> - lambda ||g||^2 for e = R h
  for (unsigned seed : {16u, 17u}) {
    RadialFunction h = verify::random_smooth_profile(grid3(), seed);
    DomainElement e = apply_resolvent(h, p, AlphaParam{ExtendedReal::finite(1.3)},
                                      Family::HomogeneousK);
    RadialFunction g = e.total_profile();
    const double want = inner_product(g, h).real() - 1.0 * inner_product(g, g).real();
    CHECK(quadratic_form(e) == doctest::Approx(want).epsilon(1e-7));
  }

  // inhomogeneous family: q(e) = <g, d g> directly
  {
    RadialFunction h = verify::random_smooth_profile(grid3(), 18);
    ProblemParams pd(3, 1.8, 1.0);
    ExtensionParam te = TauAt{1.0, ExtendedReal::finite(2.5)};
    DomainElement e = apply_resolvent(h, pd, te, Family::InhomogeneousD);
    RadialFunction g = e.total_profile();
    CHECK(quadratic_form(e) ==
          doctest::Approx(inner_product(g, h).real()).epsilon(1e-7));
  }
}

TEST_CASE("one dimensional form perturbation") {
  // q(g) = || |grad|^{s/2} g ||^2 - |g(0)|^2 / alpha for s in (1, 3/2)
  const double s = 1.2, alpha = 2.0;
  for (double lambda : {1.0, 3.0}) {
    ProblemParams p(1, s, lambda);
    RadialFunction F = verify::random_smooth_profile(grid1(), 19);
    DomainElement e = make_domain_element(F, p, AlphaParam{ExtendedReal::finite(alpha)},
                                          Family::HomogeneousK);
    const double via_form = quadratic_form(e);
    const double via_pert = form_perturbation_value(e.total_profile(), alpha, s);
    CHECK(via_form == doctest::Approx(via_pert).epsilon(1e-7));
  }

  // g(0) = 0 reduces to the plain seminorm
  RadialFunction mf = verify::random_moment_free_profile(grid1(), 20);
  const auto& r = grid1()->nodes();
  const double semi = (grid1()->weights() * r.pow(s) * mf.values().abs2()).sum();
  CHECK(form_perturbation_value(mf, alpha, s) == doctest::Approx(semi).epsilon(1e-10));
  CHECK_THROWS_AS(form_perturbation_value(mf, 0.0, s), DomainError);
}

TEST_CASE("fractional domain classification") {
  CHECK(classify_fractional_domain(0.3) == FractionalDomainTag::PlainHs);
  CHECK(classify_fractional_domain(1.0) == FractionalDomainTag::FreeSingular);
  CHECK(classify_fractional_domain(1.8) == FractionalDomainTag::Constrained);
  CHECK_THROWS_AS(classify_fractional_domain(0.5), EndpointPower);
  CHECK_THROWS_AS(classify_fractional_domain(1.5), EndpointPower);
  CHECK_THROWS_AS(classify_fractional_domain(2.5), DomainError);
}

TEST_CASE("fractional power on decomposed elements") {
  GridPtr g = grid3();
  RadialFunction h = verify::random_smooth_profile(g, 25);
  DomainElement e = apply_resolvent(h, ProblemParams(3, 2.0, 1.0),
                                    AlphaParam{ExtendedReal::finite(1.0)},
                                    Family::ClassicH);
  // integer power: exactly the operator action
  RadialFunction p2 = fractional_power_h(e, 2.0);
  CHECK((p2.values() - h.values()).abs().maxCoeff() / h.values().abs().maxCoeff() <
        1e-12);
  // fractional power on the element equals the profile route
  RadialFunction pa = fractional_power_h(e, 1.0);
  RadialFunction pb =
      fractional_power_h(e.total_profile(), ExtendedReal::finite(1.0), 1.0, 1.0);
  CHECK((pa.values() - pb.values()).abs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(fractional_power_h(e, 1.5), EndpointPower);
}

TEST_CASE("fractional power reduces to the operator at s = 2") {
  GridPtr g = grid3();
  RadialFunction h = verify::random_smooth_profile(g, 21);
  const double lambda = 1.0;
  DomainElement e = apply_resolvent(h, ProblemParams(3, 2.0, lambda),
                                    AlphaParam{ExtendedReal::finite(1.0)},
                                    Family::ClassicH);
  // (h_alpha + lambda) e = h; the s = 2 power applied to g reproduces h
  RadialFunction back =
      fractional_power_h(e.total_profile(), ExtendedReal::finite(1.0), lambda, 2.0);
  // s = 2 short-circuits to the multiplier, acting on the full profile;
  // the singular part carries (p^2+lambda) kappa G = delta-like constant
  const Complex delta_level =
      e.kappa() * std::pow(2.0 * kPi, -1.5);
  Eigen::ArrayXcd want = h.values() + delta_level;
  CHECK((back.values() - want).abs().maxCoeff() / h.values().abs().maxCoeff() < 1e-12);

  // alpha = infinity is the pure multiplier
  RadialFunction pure = fractional_resolvent_h(h, ExtendedReal::infinity(), lambda, 1.3);
  RadialFunction mult = multiplier_apply(h, resolvent_inhomogeneous(1.3, lambda));
  CHECK((pure.values() - mult.values()).abs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(fractional_resolvent_h(h, ExtendedReal::finite(-0.5), lambda, 1.0),
                  DomainError);
}

TEST_CASE("constrained friedrichs resolvent in one dimension") {
  // above s = 1 the unperturbed extension is the constrained one: its
  // resolvent output vanishes at the origin and carries the -1/Theta kernel
  // correction
  ProblemParams p(1, 1.2, 1.0);
  RadialFunction h = verify::random_smooth_profile(grid1(), 23);
  DomainElement e = apply_resolvent(h, p, TauAt{1.0, ExtendedReal::infinity()},
                                    Family::HomogeneousK);
  const Complex g0 = eval_at_zero(e.total_profile());
  CHECK(std::abs(g0) < 1e-9 * norm_l2(e.total_profile()));

  // identical through the alpha = 0 label of the same extension
  DomainElement e2 = apply_resolvent(h, p, AlphaParam{ExtendedReal::finite(0.0)},
                                     Family::HomogeneousK);
  CHECK((e.total_profile().values() - e2.total_profile().values()).abs().maxCoeff() <
        1e-14);

  // below s = 1 the unperturbed resolvent is the bare multiplier
  ProblemParams lo(1, 0.8, 1.0);
  DomainElement e3 = apply_resolvent(h, lo, TauAt{1.0, ExtendedReal::infinity()},
                                     Family::HomogeneousK);
  RadialFunction mult = multiplier_apply(h, resolvent_homogeneous(0.8, 1.0));
  CHECK((e3.total_profile().values() - mult.values()).abs().maxCoeff() < 1e-15);
}
