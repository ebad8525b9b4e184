#include <doctest.h>

#include <cmath>
#include <random>

#include "pointfrac/highrank.hpp"
#include "pointfrac/kernels.hpp"
#include "pointfrac/operators.hpp"
#include "pointfrac/verify.hpp"

using namespace pointfrac;

TEST_CASE("multi index enumeration and angular moments") {
  CHECK(multi_indices_up_to(3, 0).size() == 1);
  CHECK(multi_indices_up_to(3, 1).size() == 4);
  CHECK(multi_indices_up_to(2, 2).size() == 6);

  // surface of the unit sphere
  CHECK(angular_moment({0, 0, 0}) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(angular_moment({0, 0}) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(angular_moment({1, 0, 0}) == 0.0);
  // \int w_1^2 = (4 pi)/3
  CHECK(angular_moment({2, 0, 0}) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
}

TEST_CASE("kernel bases") {
  // single direction in the rank-one window, equal to (2 pi)^{3/2} G
  ProblemParams p2(3, 2.0, 1.0);
  const auto b1 = kernel_basis(p2, 1);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].gamma == MultiIndex{0, 0, 0});

  ProblemParams p3(3, 3.0, 1.0);
  const auto b4 = kernel_basis(p3, 2);
  CHECK(b4.size() == 4);
  CHECK(static_cast<long long>(b4.size()) == deficiency_index(3, 3.0));

  ProblemParams p18(1, 1.8, 1.0);
  const auto b2 = kernel_basis(p18, 2);
  CHECK(b2.size() == 2);

  CHECK_THROWS_AS(kernel_basis(p2, 2), EndpointPower);
}

TEST_CASE("gram matrices") {
  // rank-one entry: (2 pi)^3 ||G||^2 = (2 pi)^3 / (8 pi) at s = 2
  ProblemParams p2(3, 2.0, 1.0);
  const auto b1 = kernel_basis(p2, 1);
  const Eigen::MatrixXcd g1 = gram_matrix(b1);
  CHECK(g1(0, 0).real() ==
        doctest::Approx(std::pow(2.0 * kPi, 3.0) / (8.0 * kPi)).epsilon(1e-10));

  ProblemParams p3(3, 3.0, 1.0);
  const auto b4 = kernel_basis(p3, 2);
  const Eigen::MatrixXcd g4 = gram_matrix(b4);
  // odd angular moments vanish
  CHECK(std::abs(g4(1, 2)) == 0.0);
  CHECK(std::abs(g4(0, 1)) == 0.0);
  // symmetric with real entries, positive definite
  CHECK((g4 - g4.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g4);
  CHECK(es.eigenvalues().minCoeff() > 0.0);

  // radial factor against the beta-function closed form
  const double m = 2.0, s = 3.0, lam = 1.0;
  const double beta_form = std::pow(lam, (m + 1.0) / s - 2.0) / s *
                           std::exp(std::lgamma((m + 1.0) / s) +
                                    std::lgamma(2.0 - (m + 1.0) / s));
  CHECK(radial_power_integral(p3, BasisFlavor::Homogeneous, m, 2.0) ==
        doctest::Approx(beta_form).epsilon(1e-11));
}

TEST_CASE("rank one reduction of the T machinery") {
  // T = scalar tau over the single kernel direction reproduces the rank-one
  // boundary behaviour: (k_T + lambda) g = mult f + tau-scaled kernel atom
  ProblemParams p(3, 1.8, 1.0);
  GridPtr grid = make_grid(GridSpec{}, 3);
  RadialFunction f = verify::random_moment_free_profile(grid, 31);
  Eigen::MatrixXcd T(1, 1);
  T(0, 0) = 2.5;
  Eigen::VectorXcd u(1), w(0);
  u[0] = Complex(0.8, -0.1);
  TDomainElement e = make_T_element(f, u, w, T, p, {{0, 0, 0}}, {},
                                    BasisFlavor::Homogeneous);
  const MomentumForm out = apply_T_operator(e);
  REQUIRE(out.atoms.size() == 1);
  CHECK(out.atoms[0].first.k == 1);
  // u = 0, w = 0: the closure action on the radial sector
  TDomainElement e0 = make_T_element(f, Eigen::VectorXcd::Zero(1), w, T, p, {{0, 0, 0}},
                                     {}, BasisFlavor::Homogeneous);
  const MomentumForm out0 = apply_T_operator(e0);
  CHECK(std::abs(out0.atoms[0].second) == 0.0);
  // T = 0 keeps pure kernel directions with no regular charge
  Eigen::MatrixXcd Tz = Eigen::MatrixXcd::Zero(1, 1);
  TDomainElement ez = make_T_element(f, u, w, Tz, p, {{0, 0, 0}}, {},
                                     BasisFlavor::Homogeneous);
  CHECK(std::abs(apply_T_operator(ez).atoms[0].second) == 0.0);
}

TEST_CASE("scalar T reproduces the rank-one family") {
  // same data through both constructions: g = f + tau xi R u + xi u, and the
  // rank-one element F = f + tau xi /(|p|^s+lambda)^2 with kappa = (2pi)^{3/2} xi.
  // The rank-one boundary condition kappa = c F(0) must emerge on its own.
  ProblemParams p(3, 1.8, 1.0);
  GridPtr grid = make_grid(GridSpec{}, 3);
  RadialFunction f = verify::random_moment_free_profile(grid, 61);
  const double tau = 2.5;
  const Complex xi(0.4, -0.2);

  const auto& r = grid->nodes();
  Eigen::ArrayXcd Fv(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double den = std::pow(r[i], 1.8) + 1.0;
    Fv[i] = f.values()[i] + tau * xi / (den * den);
  }
  RadialFunction F(grid, Fv, TailDescriptor{tau * xi, 2.0 * 1.8}, false);
  const Complex kappa = std::pow(2.0 * kPi, 1.5) * xi;
  // construction validates kappa = c F(0) by quadrature
  DomainElement e = make_domain_element(F, p, TauAt{1.0, ExtendedReal::finite(tau)},
                                        Family::HomogeneousK, kappa);

  // the same element through the T machinery (normalisation cancels at N = 1)
  const double unorm = std::sqrt(
      angular_moment({0, 0, 0}) *
      radial_power_integral(p, BasisFlavor::Homogeneous, 2.0, 2.0));
  Eigen::MatrixXcd T(1, 1);
  T(0, 0) = tau;
  Eigen::VectorXcd u(1), w(0);
  u[0] = xi * unorm;
  TDomainElement eT = make_T_element(f, u, w, T, p, {{0, 0, 0}}, {},
                                     BasisFlavor::Homogeneous);
  // identical pointwise profiles: atoms evaluated on the nodes
  const MomentumForm form = eT.as_form();
  Eigen::ArrayXcd gT = form.radial->values();
  for (const auto& [atom, coef] : form.atoms) {
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double den = std::pow(std::pow(r[i], 1.8) + 1.0, atom.k);
      gT[i] += coef / den;
    }
  }
  Eigen::ArrayXcd g1 = e.total_profile().values();
  CHECK((gT - g1).abs().maxCoeff() / g1.abs().maxCoeff() < 1e-12);

  // and identical operator action
  const MomentumForm out = apply_T_operator(eT);
  Eigen::ArrayXcd aT = out.radial->values();
  for (const auto& [atom, coef] : out.atoms) {
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double den = std::pow(std::pow(r[i], 1.8) + 1.0, atom.k);
      aT[i] += coef / den;
    }
  }
  Eigen::ArrayXcd a1 = apply_operator(e).values();
  CHECK((aT - a1).abs().maxCoeff() / a1.abs().maxCoeff() < 1e-12);
}

TEST_CASE("operator symmetry needs hermiticity") {
  ProblemParams p(3, 3.0, 1.0);
  const auto basis = kernel_basis(p, 2);
  std::vector<MultiIndex> dom = {basis[0].gamma, basis[1].gamma};
  std::vector<MultiIndex> comp = {basis[2].gamma, basis[3].gamma};
  GridPtr grid = make_grid(GridSpec{}, 3);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> un(-1.0, 1.0);
  auto rand_vec = [&](Eigen::Index n) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(un(rng), un(rng));
    return v;
  };
  Eigen::MatrixXcd H(2, 2);
  H << Complex(0.4, 0.0), Complex(0.2, 0.7), Complex(0.2, -0.7), Complex(-1.1, 0.0);

  auto small_profile = [&](unsigned seed) {
    RadialFunction f = verify::random_moment_free_profile(grid, seed);
    return RadialFunction(f.grid_ptr(), 0.05 * f.values());
  };
  auto residual = [&](const Eigen::MatrixXcd& T, bool allow) {
    TDomainElement e1 = make_T_element(small_profile(41), rand_vec(2), rand_vec(2), T, p,
                                       dom, comp, BasisFlavor::Homogeneous, allow);
    TDomainElement e2 = make_T_element(small_profile(42), rand_vec(2), rand_vec(2), T, p,
                                       dom, comp, BasisFlavor::Homogeneous, allow);
    const Complex lhs =
        form_inner(apply_T_operator(e1), e2.as_form(), p, BasisFlavor::Homogeneous);
    const Complex rhs =
        form_inner(e1.as_form(), apply_T_operator(e2), p, BasisFlavor::Homogeneous);
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  };
  CHECK(residual(H, false) < 1e-9);
  Eigen::MatrixXcd skew = H;
  skew(0, 1) += Complex(0.0, 0.4);
  CHECK(residual(skew, true) > 1e-3);
  CHECK_THROWS_AS(make_T_element(small_profile(43), rand_vec(2), rand_vec(2), skew, p,
                                 dom, comp, BasisFlavor::Homogeneous, false),
                  DomainError);

  // moment-carrying radial sector is rejected
  RadialFunction carry = verify::random_smooth_profile(grid, 44);
  CHECK_THROWS_AS(make_T_element(carry, rand_vec(2), rand_vec(2), H, p, dom, comp,
                                 BasisFlavor::Homogeneous),
                  DomainViolation);
}

TEST_CASE("kernel atoms are orthogonal to the closure range") {
  // (symbol) applied to an atom is the polynomial p^gamma, whose pairing with
  // a moment-free radial profile vanishes
  ProblemParams p(3, 3.0, 1.0);
  GridPtr grid = make_grid(GridSpec{}, 3);
  RadialFunction f = verify::random_moment_free_profile(grid, 51);
  // <p^gamma, f> for gamma = 0: the zeroth moment
  Complex m0 = (grid->weights() * f.values()).sum();
  CHECK(std::abs(m0) < 1e-12);
  // odd gamma vanish by parity: the angular moment is zero
  CHECK(angular_moment({1, 0, 0}) == 0.0);
}

TEST_CASE("worst singularity exponent") {
  CHECK(worst_singularity_exponent(3, 2.0) == doctest::Approx(1.0));
  CHECK(worst_singularity_exponent(3, 1.8) == doctest::Approx(1.2));
  for (double s : {1.6, 2.0, 2.4, 2.9, 3.3})
    CHECK((worst_singularity_exponent(3, s) > 0.5 &&
           worst_singularity_exponent(3, s) < 1.5));
  CHECK_THROWS_AS(worst_singularity_exponent(3, 1.2), EndpointPower);
}
