#include "pointfrac/verify.hpp"

#include <cmath>
#include <random>

#include "pointfrac/closure.hpp"
#include "pointfrac/highrank.hpp"
#include "pointfrac/kernels.hpp"
#include "pointfrac/operators.hpp"
#include "pointfrac/quadrature.hpp"
#include "pointfrac/spectral.hpp"

namespace pointfrac::verify {

namespace {

struct Recorder {
  std::string suite;
  std::vector<CheckResult>* out;

  void check(const std::string& name, double residual, double tolerance) {
    out->push_back({suite, name, residual <= tolerance, residual, tolerance});
  }
  void check_bool(const std::string& name, bool ok) {
    out->push_back({suite, name, ok, ok ? 0.0 : 1.0, 0.5});
  }
};

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max({std::abs(want), std::abs(got), 1e-300});
}

double rel_err_c(Complex got, Complex want) {
  return std::abs(got - want) / std::max({std::abs(want), std::abs(got), 1e-300});
}

}  // namespace

RadialFunction random_smooth_profile(GridPtr grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0), width(0.5, 3.0);
  double a[3], s[3];
  for (int k = 0; k < 3; ++k) {
    a[k] = amp(rng);
    s[k] = width(rng);
  }
  auto fn = [=](double r) {
    double v = 0.0;
    for (int k = 0; k < 3; ++k) v += a[k] * std::exp(-r * r / (2.0 * s[k] * s[k]));
    return Complex(v, 0.0);
  };
  return RadialFunction::from_function(std::move(grid), fn);
}

RadialFunction random_moment_free_profile(GridPtr grid, unsigned seed) {
  RadialFunction f = random_smooth_profile(grid, seed);
  // subtract a Gaussian scaled to cancel the zeroth moment
  const auto& r = grid->nodes();
  const auto& w = grid->weights();
  Complex m0 = (w * f.values()).sum();
  double gauss_m = 0.0;
  Eigen::ArrayXcd g(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    g[i] = std::exp(-r[i] * r[i]);
    gauss_m += w[i] * std::real(g[i]);
  }
  Eigen::ArrayXcd vals = f.values() - (m0 / gauss_m) * g;
  return RadialFunction(std::move(grid), std::move(vals));
}

namespace {

// ---------------------------------------------------------------- params

void suite_params(std::vector<CheckResult>& out) {
  Recorder rec{"params", &out};

  // deficiency index against brute-force enumeration
  bool combinatorics = true;
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 4; ++n) {
      const double s = 0.5 * d + n - 0.5;
      const long long lib = deficiency_index(d, s);
      const long long brute =
          static_cast<long long>(multi_indices_up_to(d, n - 1).size());
      if (lib != brute) combinatorics = false;
    }
  }
  rec.check_bool("deficiency_index_matches_enumeration", combinatorics);

  // tau <-> alpha round trips
  double worst = 0.0;
  std::mt19937_64 rng(7001);
  std::uniform_real_distribution<double> taus(-8.0, 8.0), shifts(0.3, 5.0);
  for (double s : {1.7, 2.0, 2.3}) {
    for (int k = 0; k < 20; ++k) {
      ProblemParams p(3, s, shifts(rng));
      const double tau = taus(rng);
      const ExtendedReal alpha = tau_to_alpha(p, ExtendedReal::finite(tau));
      const ExtendedReal back = alpha_to_tau(p, alpha);
      worst = std::max(worst, rel_err(back.value, tau));
    }
  }
  for (double s : {0.7, 1.3}) {
    for (int k = 0; k < 20; ++k) {
      ProblemParams p(1, s, shifts(rng));
      const double tau = taus(rng);
      if (std::abs(tau) < 1e-3) continue;
      const ExtendedReal alpha = tau_to_alpha(p, ExtendedReal::finite(tau));
      if (alpha.infinite) continue;
      const ExtendedReal back = alpha_to_tau(p, alpha);
      worst = std::max(worst, rel_err(back.value, tau));
    }
  }
  rec.check("tau_alpha_round_trip", worst, 1e-12);

  // s = 2 closed form alpha = (tau - 2 lambda) / (8 pi sqrt(lambda))
  double worst2 = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double lambda = shifts(rng), tau = taus(rng);
    ProblemParams p(3, 2.0, lambda);
    const double want = (tau - 2.0 * lambda) / (8.0 * kPi * std::sqrt(lambda));
    worst2 = std::max(worst2,
                      rel_err(tau_to_alpha(p, ExtendedReal::finite(tau)).value, want));
  }
  rec.check("alpha_s2_closed_form", worst2, 1e-13);

  // lambda consistency of pairs generated through alpha
  bool consistent = true;
  for (double s : {1.8, 2.0}) {
    ProblemParams p(3, s, 1.0);
    const ExtendedReal alpha = tau_to_alpha(p, ExtendedReal::finite(3.0));
    ProblemParams p2(3, s, 4.0);
    const ExtendedReal tau2 = alpha_to_tau(p2, alpha);
    if (!pair_consistency(p, 3.0, 4.0, tau2.value)) consistent = false;
  }
  rec.check_bool("pair_consistency_via_alpha", consistent);

  // Theta scaling law
  const double th_ratio = theta(1.3, 16.0) / theta(1.3, 1.0);
  rec.check("theta_scaling", rel_err(th_ratio, std::pow(16.0, (1.0 - 1.3) / 1.3)), 1e-13);
  rec.check("omega_s12", rel_err(omega_theta_flag(1.2).omega, 3.6), 1e-12);
}

// ---------------------------------------------------------------- kernels

void suite_kernels(std::vector<CheckResult>& out) {
  Recorder rec{"kernels", &out};

  // defining distributional identity: symbol times profile is (2 pi)^{-d/2}
  double worst = 0.0;
  for (const auto& [d, s] : std::vector<std::pair<int, double>>{{3, 1.8}, {3, 2.2}, {1, 0.8}}) {
    GreenKernel k(KernelKind::Homogeneous, ProblemParams(d, s, 1.3));
    for (double r : {0.0, 0.3, 2.0, 50.0, 1e4}) {
      const double got = (std::pow(r, s) + 1.3) * kernel_hat(k, r);
      worst = std::max(worst, rel_err(got, std::pow(2.0 * kPi, -0.5 * d)));
    }
  }
  rec.check("symbol_times_profile_is_delta", worst, 1e-14);

  // closed-form oracle in d = 3, s = 2
  GreenKernel g21(KernelKind::Homogeneous, ProblemParams(3, 2.0, 1.0));
  double worst_pos = 0.0;
  for (double x : {1e-3, 0.02, 0.5, 1.0, 4.0, 10.0}) {
    const double want = std::exp(-x) / (4.0 * kPi * x);
    worst_pos = std::max(worst_pos, rel_err(kernel_position(g21, x), want));
  }
  rec.check("position_matches_yukawa", worst_pos, 1e-8);

  // short-distance law against the singularity constant
  double worst_asy = 0.0;
  for (const auto& [d, s] : std::vector<std::pair<int, double>>{{3, 1.8}, {3, 2.2}}) {
    GreenKernel k(KernelKind::Homogeneous, ProblemParams(d, s, 1.0));
    const double x = 1e-4;
    const double got = std::pow(x, d - s) * kernel_position(k, x);
    worst_asy = std::max(worst_asy, rel_err(got, singularity_constant(d, s)));
  }
  // the inhomogeneous kernel shares the limit law
  {
    GreenKernel k(KernelKind::Inhomogeneous, ProblemParams(3, 1.8, 1.0));
    const double x = 1e-4;
    worst_asy = std::max(
        worst_asy, rel_err(std::pow(x, 1.2) * kernel_position(k, x),
                           singularity_constant(3, 1.8)));
  }
  rec.check("short_distance_constant_d3", worst_asy, 1e-3);
  // d = 1, s = 0.8: the approach is O(x^{1/5}) and cannot reach the 1e-3 band
  // at x = 1e-4 (see the project notes); reported honestly, plus a rate check
  // that the deficit follows the x^{1/5} law with the subleading constant.
  {
    GreenKernel k(KernelKind::Homogeneous, ProblemParams(1, 0.8, 1.0));
    const double lam = singularity_constant(1, 0.8);
    const double x = 1e-4;
    rec.check("short_distance_constant_d1_s08_as_specified",
              rel_err(std::pow(x, 0.2) * kernel_position(k, x), lam), 1e-3);
    double worst_rate = 0.0;
    for (double xx : {1e-3, 1e-4}) {
      const double deficit = 1.0 - std::pow(xx, 0.2) * kernel_position(k, xx) / lam;
      // subleading constant: (H/pi)/Lambda with H = 1.25 pi / sin(pi/4)
      const double want = 1.25 / std::sin(0.25 * kPi) / lam * std::pow(xx, 0.2);
      worst_rate = std::max(worst_rate, rel_err(deficit, want));
    }
    rec.check("short_distance_d1_s08_subleading_law", worst_rate, 1e-2);
  }

  // lambda-difference integral: closed form against compensated quadrature
  double worst_diff = 0.0;
  for (double s : {1.6, 1.8, 2.0, 2.2, 2.4})
    for (const auto& [l1, l2] : std::vector<std::pair<double, double>>{
             {1.0, 4.0}, {0.5, 2.0}, {1.0, 2.0}, {2.0, 3.0}, {0.25, 8.0}})
      worst_diff = std::max(worst_diff,
                            rel_err(lambda_difference_integral(3, s, l1, l2),
                                    lambda_difference_integral_quadrature(3, s, l1, l2)));
  for (double s : {0.6, 0.8, 1.2, 1.3, 1.4})
    for (const auto& [l1, l2] : std::vector<std::pair<double, double>>{
             {1.0, 4.0}, {0.5, 2.0}, {1.0, 2.0}, {2.0, 3.0}, {0.25, 8.0}})
      worst_diff = std::max(worst_diff,
                            rel_err(lambda_difference_integral(1, s, l1, l2),
                                    lambda_difference_integral_quadrature(1, s, l1, l2)));
  rec.check("lambda_difference_dual_route", worst_diff, 1e-8);
  rec.check("lambda_difference_exact_value",
            rel_err(lambda_difference_integral(3, 2.0, 1.0, 4.0), 2.0 * kPi * kPi), 1e-12);

  // derived kernel: symbol action returns the homogeneous profile
  double worst_h = 0.0;
  for (double s : {0.8, 1.2}) {
    ProblemParams p(1, s, 1.4);
    GreenKernel hk(KernelKind::DerivedH, p);
    GreenKernel gk(KernelKind::Homogeneous, p);
    const double b = (s > 1.0) ? (s - 1.0) / (1.4 * s) : 0.0;
    for (double r : {0.0, 0.7, 3.0, 100.0}) {
      const double lhs = (std::pow(r, s) + 1.4) * kernel_hat(hk, r);
      const double rhs = kernel_hat(gk, r) - b * std::pow(2.0 * kPi, -0.5);
      worst_h = std::max(worst_h, rel_err(lhs, rhs));
    }
  }
  rec.check("derived_kernel_resolvent_identity", worst_h, 1e-13);

  // kernel_at_zero against direct quadrature
  double worst_z = 0.0;
  for (const auto& [d, s, l] :
       std::vector<std::tuple<int, double, double>>{{1, 2.0, 1.0}, {1, 1.2, 1.0}, {1, 1.2, 2.5}}) {
    auto f = [&, dd = d, ss = s, ll = l](double r) {
      return std::pow(r, dd - 1.0) / (std::pow(r, ss) + ll);
    };
    const double got = surface_measure(d) *
                       (quad::adaptive(f, 0.0, 1e6, 1e-12) +
                        quad::tail_power_shifted(d - 1.0, s, 1.0, l, 1e6)) *
                       std::pow(2.0 * kPi, -d);
    worst_z = std::max(worst_z, rel_err(kernel_at_zero(d, s, l), got));
  }
  rec.check("kernel_at_zero_quadrature", worst_z, 1e-9);

  rec.check("l2_norm_d1_s2", rel_err(kernel_l2_norm_sq(GreenKernel(
                                         KernelKind::Homogeneous, ProblemParams(1, 2, 1))),
                                     0.25),
            1e-10);
  rec.check("l2_norm_d3_s2", rel_err(kernel_l2_norm_sq(g21), 1.0 / (8.0 * kPi)), 1e-10);
}

// ---------------------------------------------------------------- radial

void suite_radial(std::vector<CheckResult>& out) {
  Recorder rec{"radial", &out};
  GridPtr grid3 = make_grid(GridSpec{}, 3);

  // Gaussian integral over R^3
  RadialFunction gauss = RadialFunction::from_function(
      grid3, [](double r) { return Complex(std::exp(-r * r), 0.0); });
  const double got = (grid3->weights() * gauss.values().real()).sum();
  rec.check("gaussian_integral", rel_err(got, std::pow(kPi, 1.5)), 1e-10);

  // self-dual Gaussian through the position evaluation
  RadialFunction halfg = RadialFunction::from_function(
      grid3, [](double r) { return Complex(std::exp(-0.5 * r * r), 0.0); });
  double worst_pos = 0.0;
  for (double x : {0.3, 1.0, 2.5})
    worst_pos =
        std::max(worst_pos, rel_err_c(eval_at_x(halfg, x), Complex(std::exp(-0.5 * x * x))));
  rec.check("gaussian_self_dual", worst_pos, 1e-7);

  // quadrature stability under grid doubling
  GridPtr fine = make_grid(GridSpec{1e-6, 1e6, 8192}, 3);
  GreenKernel k(KernelKind::Homogeneous, ProblemParams(3, 1.8, 1.0));
  const Complex ip_a = inner_product(kernel_profile(k, grid3), kernel_profile(k, grid3));
  const Complex ip_b = inner_product(kernel_profile(k, fine), kernel_profile(k, fine));
  rec.check("inner_product_grid_doubling", rel_err_c(ip_a, ip_b), 1e-9);

  // multiplier inverse pair is the identity
  RadialFunction prof = kernel_profile(k, grid3);
  RadialFunction cycled =
      multiplier_apply(multiplier_apply(prof, symbol_homogeneous(1.8, 1.0)),
                       resolvent_homogeneous(1.8, 1.0));
  rec.check("multiplier_inverse_identity",
            (cycled.values() - prof.values()).abs().maxCoeff() /
                prof.values().abs().maxCoeff(),
            1e-14);

  // eval_at_zero against the x -> 0 limit by Richardson extrapolation
  RadialFunction smooth = RadialFunction::from_function(
      grid3, [](double r) { return Complex(std::exp(-r * r / 4.0), 0.0); });
  const Complex z0 = eval_at_zero(smooth);
  const Complex f2 = eval_at_x(smooth, 1e-2), f3 = eval_at_x(smooth, 1e-3),
                f4 = eval_at_x(smooth, 1e-4);
  // quadratic-in-x behaviour of even radial profiles
  const Complex rich = f4 + (f4 - f3) / 99.0;
  rec.check("eval_at_zero_limit", rel_err_c(z0, rich), 1e-6);
  (void)f2;

  // Parseval on a coarse position set
  RadialFunction ga = RadialFunction::from_function(
      grid3, [](double r) { return Complex(std::exp(-0.5 * r * r), 0.0); });
  const Complex mom = inner_product(ga, ga);
  double pos = 0.0;
  const int nx = 400;
  const double xmax = 12.0;
  for (int i = 0; i < nx; ++i) {
    const double x = (i + 0.5) * xmax / nx;
    const Complex v = eval_at_x(ga, x);
    pos += 4.0 * kPi * x * x * std::norm(v) * (xmax / nx);
  }
  rec.check("parseval_consistency", rel_err(pos, mom.real()), 1e-4);

  // Sobolev norm monotonicity in s
  const double n1 = sobolev_norm(ga, 0.3), n2 = sobolev_norm(ga, 0.9);
  rec.check_bool("sobolev_monotone", n1 <= n2);
}

// ---------------------------------------------------------------- krein

struct FamilyCase {
  Family family;
  ProblemParams params;
  ExtensionParam ext;
  const char* label;
};

std::vector<FamilyCase> krein_cases() {
  std::vector<FamilyCase> cases;
  cases.push_back({Family::ClassicH, ProblemParams(3, 2.0, 1.0),
                   AlphaParam{ExtendedReal::finite(0.7)}, "classic_h"});
  cases.push_back({Family::HomogeneousK, ProblemParams(3, 1.8, 1.0),
                   AlphaParam{ExtendedReal::finite(1.1)}, "homog_d3"});
  cases.push_back({Family::HomogeneousK, ProblemParams(1, 0.8, 1.0),
                   AlphaParam{ExtendedReal::finite(0.9)}, "homog_d1_low"});
  cases.push_back({Family::HomogeneousK, ProblemParams(1, 1.2, 1.0),
                   AlphaParam{ExtendedReal::finite(-1.2)}, "homog_d1_high"});
  cases.push_back({Family::InhomogeneousD, ProblemParams(3, 1.8, 1.0),
                   TauAt{1.0, ExtendedReal::finite(2.0)}, "inhomog_d"});
  return cases;
}

void suite_krein(std::vector<CheckResult>& out) {
  Recorder rec{"krein", &out};

  for (const auto& c : krein_cases()) {
    GridPtr grid = make_grid(GridSpec{}, c.params.d);
    const GreenKernel kern = family_kernel(c.family, c.params);
    const RadialFunction G = kernel_profile(kern, grid);
    const ExtendedReal coef = boundary_coefficient(c.params, c.ext, c.family);

    double worst_pair = 0.0, worst_rank1 = 0.0, worst_sym = 0.0, worst_res_id = 0.0;
    for (unsigned seed = 1; seed <= 4; ++seed) {
      RadialFunction h = random_smooth_profile(grid, 100 * seed + c.params.d);
      DomainElement e = apply_resolvent(h, c.params, c.ext, c.family);

      // inverse pair
      RadialFunction back = apply_operator(e);
      worst_pair = std::max(worst_pair, (back.values() - h.values()).abs().maxCoeff() /
                                            h.values().abs().maxCoeff());

      // rank-one structure of the resolvent difference
      const Multiplier m0 = (c.family == Family::InhomogeneousD)
                                ? resolvent_inhomogeneous(c.params.s, c.params.lambda)
                                : resolvent_homogeneous(c.params.s, c.params.lambda);
      RadialFunction free_part = multiplier_apply(h, m0);
      RadialFunction g_tot = e.total_profile();
      const Complex scalar = coef.value * inner_product(G, h);
      Eigen::ArrayXcd diff = g_tot.values() - free_part.values() - scalar * G.values();
      worst_rank1 =
          std::max(worst_rank1, diff.abs().maxCoeff() / g_tot.values().abs().maxCoeff());

      // symmetry of the resolvent
      RadialFunction h2 = random_smooth_profile(grid, 5000 + 100 * seed + c.params.d);
      DomainElement e2 = apply_resolvent(h2, c.params, c.ext, c.family);
      const Complex s1 = inner_product(h2, e.total_profile());
      const Complex s2 = inner_product(e2.total_profile(), h);
      worst_sym = std::max(worst_sym, std::abs(s1 - s2) / std::abs(s1));

      // first resolvent identity (homogeneous families)
      if (c.family != Family::InhomogeneousD) {
        const double l2 = 2.5;
        ProblemParams p2(c.params.d, c.params.s, l2);
        ExtensionParam ext2 = c.ext;
        DomainElement eA = apply_resolvent(h, c.params, c.ext, c.family);
        DomainElement eB = apply_resolvent(h, p2, ext2, c.family);
        DomainElement eAB =
            apply_resolvent(eB.total_profile(), c.params, c.ext, c.family);
        Eigen::ArrayXcd lhs = eA.total_profile().values() - eB.total_profile().values();
        Eigen::ArrayXcd rhs =
            (l2 - c.params.lambda) * eAB.total_profile().values();
        worst_res_id = std::max(
            worst_res_id,
            (lhs - rhs).abs().maxCoeff() /
                std::max(1e-300, eA.total_profile().values().abs().maxCoeff()));
      }
    }
    rec.check(std::string("inverse_pair_") + c.label, worst_pair, 1e-8);
    rec.check(std::string("rank_one_structure_") + c.label, worst_rank1, 1e-9);
    rec.check(std::string("resolvent_symmetry_") + c.label, worst_sym, 1e-10);
    if (c.family != Family::InhomogeneousD)
      rec.check(std::string("first_resolvent_identity_") + c.label, worst_res_id, 1e-7);
  }

  // semibounded sign law and negative witness per family
  for (const auto& c : krein_cases()) {
    GridPtr grid = make_grid(GridSpec{}, c.params.d);
    double min_shifted = 0.0;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> taus(0.05, 8.0), kap(-2.0, 2.0);
    for (int k = 0; k < 20; ++k) {
      const double tau = taus(rng);
      ExtensionParam ext = TauAt{c.params.lambda, ExtendedReal::finite(tau)};
      RadialFunction F = random_smooth_profile(grid, 900 + k);
      DomainElement e = make_form_element(F, Complex(kap(rng), kap(rng)), c.params, ext,
                                          c.family);
      double val = quadratic_form(e);
      if (c.family != Family::InhomogeneousD) {
        RadialFunction g = e.total_profile();
        val += c.params.lambda * inner_product(g, g).real();
      }
      min_shifted = std::min(min_shifted, val);
    }
    rec.check(std::string("semibounded_tau_positive_") + c.label, -min_shifted, 1e-9);

    // witness: the pure kernel direction at tau < 0
    ExtensionParam neg = TauAt{c.params.lambda, ExtendedReal::finite(-1.5)};
    Eigen::ArrayXcd zero = Eigen::ArrayXcd::Zero(grid->size());
    RadialFunction F0(grid, zero);
    DomainElement ew = make_form_element(F0, Complex(1.0), c.params, neg, c.family);
    double val = quadratic_form(ew);
    if (c.family != Family::InhomogeneousD) {
      RadialFunction g = ew.total_profile();
      val += c.params.lambda * inner_product(g, g).real();
    }
    rec.check_bool(std::string("negative_witness_tau_negative_") + c.label, val < 0.0);
  }

  // lambda independence of the alpha families
  {
    ProblemParams p(3, 1.8, 1.0);
    ExtensionParam ext = AlphaParam{ExtendedReal::finite(0.9)};
    GridPtr grid = make_grid(GridSpec{}, 3);
    RadialFunction h = random_smooth_profile(grid, 77);
    DomainElement e = apply_resolvent(h, p, ext, Family::HomogeneousK);
    DomainElement e2 = e.redecompose(3.0);
    // action computed in either decomposition agrees:  (A+l1)g - l1 g = (A+l2)g - l2 g
    Eigen::ArrayXcd a1 = apply_operator(e).values() -
                         Complex(p.lambda) * e.total_profile().values();
    Eigen::ArrayXcd a2 = apply_operator(e2).values() -
                         Complex(3.0) * e2.total_profile().values();
    rec.check("lambda_independence_alpha",
              (a1 - a2).abs().maxCoeff() / a1.abs().maxCoeff(), 1e-8);
  }
}

// ---------------------------------------------------------------- spectral

void suite_spectral(std::vector<CheckResult>& out) {
  Recorder rec{"spectral", &out};

  rec.check("classic_h_eigenvalue",
            rel_err(*bound_state_h(-1.0).eigenvalue, -16.0 * kPi * kPi), 1e-14);
  rec.check("bound_state_3d_s2_matches_h",
            rel_err(*bound_state_3d(-1.0, 2.0).eigenvalue, *bound_state_h(-1.0).eigenvalue),
            1e-12);

  // Krein denominator vanishes at the eigenvalue
  double worst_den = 0.0, worst_eig = 0.0;
  for (double s : {1.7, 1.8, 2.2}) {
    for (double alpha : {-0.5, -2.0}) {
      const SpectralResult r = bound_state_3d(alpha, s);
      const double ls = r.lambda_star();
      const double den =
          alpha - std::pow(ls, 3.0 / s - 1.0) / (2.0 * kPi * s * std::sin(3.0 * kPi / s));
      worst_den = std::max(worst_den, std::abs(den) / std::max(1.0, std::abs(alpha)));

      // resolvent eigen-relation at a different shift:
      // (A + mu)^{-1} G_{lambda*} = (mu - lambda*)^{-1} G_{lambda*}
      ProblemParams p(3, s, ls);
      GridPtr grid = make_grid(GridSpec{}, 3);
      RadialFunction Gstar = kernel_profile(family_kernel(Family::HomogeneousK, p), grid);
      const double mu = ls * 1.7 + 0.3;
      ProblemParams pmu(3, s, mu);
      DomainElement res = apply_resolvent(Gstar, pmu,
                                          AlphaParam{ExtendedReal::finite(alpha)},
                                          Family::HomogeneousK);
      Eigen::ArrayXcd want = Gstar.values() / (mu - ls);
      worst_eig = std::max(worst_eig,
                           (res.total_profile().values() - want).abs().maxCoeff() /
                               want.abs().maxCoeff());
    }
  }
  rec.check("krein_denominator_root", worst_den, 1e-10);
  rec.check("resolvent_eigen_relation", worst_eig, 1e-7);

  // pole detection at lambda = |E|
  bool pole_ok = false;
  try {
    const SpectralResult r = bound_state_3d(-1.0, 1.8);
    ProblemParams p(3, 1.8, r.lambda_star());
    GridPtr grid = make_grid(GridSpec{}, 3);
    RadialFunction h = random_smooth_profile(grid, 5);
    apply_resolvent(h, p, AlphaParam{ExtendedReal::finite(-1.0)}, Family::HomogeneousK);
  } catch (const PoleAtLambda&) {
    pole_ok = true;
  }
  rec.check_bool("pole_at_bound_state", pole_ok);

  // sign laws over an (s, alpha) grid
  bool laws = true;
  for (double s : {1.7, 1.9, 2.1, 2.3})
    for (double alpha : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
      const bool has = bound_state_3d(alpha, s).eigenvalue.has_value();
      if (has != (alpha < 0.0)) laws = false;
    }
  for (double s : {0.7, 0.9, 1.2, 1.4})
    for (double alpha : {-2.0, -0.5, 0.5, 2.0}) {
      const bool has = bound_state_1d(alpha, s).eigenvalue.has_value();
      if (has != ((s - 1.0) * alpha > 0.0)) laws = false;
    }
  rec.check_bool("bound_state_sign_laws", laws);

  rec.check("bound_state_1d_value",
            rel_err(*bound_state_1d(1.0, 1.2).eigenvalue, -std::pow(0.6, -6.0)), 1e-12);

  // inhomogeneous family: E_tau < tau, toward 0, monotone
  std::vector<double> taus;
  for (int i = 0; i < 12; ++i) taus.push_back(-3.0 + i * (2.95 / 11.0));
  const auto rows = figure1_sweep(1.0, 1.8, taus);
  bool below = true, monotone = true;
  double prev = -1e300;
  for (const auto& row : rows) {
    if (!row.E_tau) {
      below = false;
      break;
    }
    if (!(*row.E_tau < row.tau)) below = false;
    if (!(*row.E_tau > prev)) monotone = false;
    prev = *row.E_tau;
  }
  rec.check_bool("inhomogeneous_below_tau", below);
  rec.check_bool("inhomogeneous_monotone", monotone);

  const SpectralResult near0 = bound_state_inhomogeneous(1.0, -0.05, 1.8);
  rec.check_bool("inhomogeneous_limit_zero", std::abs(*near0.eigenvalue) < 0.5);

  // the moment integral vanishes at the root
  const SpectralResult rr = bound_state_inhomogeneous(1.0, -1.0, 1.8);
  const double resid = std::abs(inhomogeneous_moment_integral(1.0, -1.0, 1.8, *rr.eigenvalue));
  const double scale = std::abs(inhomogeneous_moment_integral(1.0, -1.0, 1.8, -1.0 - 1e-9));
  rec.check("inhomogeneous_moment_residual", resid / std::max(scale, 1e-300), 1e-6);

  // at the classical power the family is the shifted point interaction, so
  // the root has the closed form tau - tau^2 / (4 lambda)
  double worst_s2 = 0.0;
  for (double lambda : {1.0, 2.5})
    for (double tau : {-2.0, -0.3}) {
      const SpectralResult r2 = bound_state_inhomogeneous(lambda, tau, 2.0);
      worst_s2 = std::max(worst_s2,
                          rel_err(*r2.eigenvalue, tau - tau * tau / (4.0 * lambda)));
    }
  rec.check("inhomogeneous_s2_closed_form", worst_s2, 1e-9);
}

// ---------------------------------------------------------------- fractional

void suite_fractional(std::vector<CheckResult>& out) {
  Recorder rec{"fractional", &out};
  GridPtr grid = make_grid(GridSpec{}, 3);
  const double lambda = 1.0;

  // alpha -> infinity approaches the free multiplier
  {
    RadialFunction g = random_smooth_profile(grid, 11);
    RadialFunction big = fractional_resolvent_h(g, ExtendedReal::finite(1e6), lambda, 1.0);
    RadialFunction freem = fractional_resolvent_h(g, ExtendedReal::infinity(), lambda, 1.0);
    Eigen::ArrayXcd diff = big.values() - freem.values();
    RadialFunction diff_fn(grid, diff);
    rec.check("large_alpha_limit", norm_l2(diff_fn), 1e-4);
  }

  // s -> 2 limit reproduces the closed rank-one resolvent
  {
    RadialFunction g = random_smooth_profile(grid, 12);
    const double alpha = 1.0;
    RadialFunction lim = fractional_resolvent_h(g, ExtendedReal::finite(alpha), lambda, 1.999);
    DomainElement closed = apply_resolvent(g, ProblemParams(3, 2.0, lambda),
                                           AlphaParam{ExtendedReal::finite(alpha)},
                                           Family::ClassicH);
    Eigen::ArrayXcd diff = lim.values() - closed.total_profile().values();
    rec.check("s_to_2_limit",
              norm_l2(RadialFunction(grid, diff)) / norm_l2(closed.total_profile()), 2e-3);
  }

  // half power composed twice equals the closed resolvent
  double worst = 0.0;
  for (double alpha : {0.0, 1.0}) {
    for (unsigned seed = 21; seed <= 23; ++seed) {
      RadialFunction g = random_smooth_profile(grid, seed);
      RadialFunction half =
          fractional_resolvent_h(g, ExtendedReal::finite(alpha), lambda, 1.0);
      RadialFunction full =
          fractional_resolvent_h(half, ExtendedReal::finite(alpha), lambda, 1.0);
      DomainElement closed = apply_resolvent(g, ProblemParams(3, 2.0, lambda),
                                             AlphaParam{ExtendedReal::finite(alpha)},
                                             Family::ClassicH);
      Eigen::ArrayXcd diff = full.values() - closed.total_profile().values();
      worst = std::max(worst, norm_l2(RadialFunction(grid, diff)) /
                                  norm_l2(closed.total_profile()));
    }
  }
  rec.check("semigroup_composition", worst, 1e-6);

  // inverse pairing power o resolvent = identity at s = 1
  {
    RadialFunction g = random_smooth_profile(grid, 31);
    RadialFunction res = fractional_resolvent_h(g, ExtendedReal::finite(1.0), lambda, 1.0);
    RadialFunction back = fractional_power_h(res, ExtendedReal::finite(1.0), lambda, 1.0);
    Eigen::ArrayXcd diff = back.values() - g.values();
    rec.check("inverse_pairing", norm_l2(RadialFunction(grid, diff)) / norm_l2(g), 1e-6);
  }
}

// ---------------------------------------------------------------- closure

void suite_closure(std::vector<CheckResult>& out) {
  Recorder rec{"closure", &out};
  GridPtr grid = make_grid(GridSpec{}, 3);

  RadialFunction gauss = RadialFunction::from_function(
      grid, [](double r) { return Complex(std::exp(-0.5 * r * r), 0.0); });
  const std::vector<int> scales{4, 8, 16, 32};

  // generic profile: slope bounded by 2s - 3 (plus fit slack)
  double worst_gap = -1e300;
  for (double s : {0.8, 1.0, 1.2}) {
    const DecayFit fit = decay_rate_fit(gauss, s, 3, scales);
    worst_gap = std::max(worst_gap, fit.slope - (2.0 * s - 3.0));
  }
  rec.check("generic_rate_bound", std::max(worst_gap, 0.0), 0.3);

  // moment-free profile: slope bounded by 2s - 5 and distances heading to 0
  RadialFunction mf = random_moment_free_profile(grid, 3);
  double worst_gap2 = -1e300;
  double worst_drop = 0.0;
  for (double s : {1.8, 2.0, 2.2}) {
    const DecayFit fit = decay_rate_fit(mf, s, 3, scales);
    worst_gap2 = std::max(worst_gap2, fit.slope - (2.0 * s - 5.0));
    worst_drop = std::max(worst_drop, fit.distances_sq.back() / fit.distances_sq.front());
  }
  rec.check("moment_free_rate_bound", std::max(worst_gap2, 0.0), 0.3);
  rec.check("moment_free_distances_shrink", worst_drop, 0.1);

  // moment-carrying control does not converge above the first window
  double floor_val = 1e300;
  for (int n : {4, 8, 16, 32, 64}) {
    const double d = closure_distance(gauss, n, 1.8, 3);
    floor_val = std::min(floor_val, d * d);
  }
  rec.check_bool("moment_carrying_floor", floor_val > 1e-3);

  // truncation really zeroes the moment and improves in R
  RadialFunction t10 = moment_truncate(gauss, 10.0);
  const Complex m0 = (grid->weights() * t10.values()).sum();
  rec.check("moment_truncate_zero_moment", std::abs(m0), 1e-12);
}

// ---------------------------------------------------------------- highrank

void suite_highrank(std::vector<CheckResult>& out) {
  Recorder rec{"highrank", &out};

  bool counts = true;
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 3; ++n) {
      const double s = 0.5 * d + n - 0.5;
      ProblemParams p(d, s, 1.0);
      if (static_cast<long long>(kernel_basis(p, n).size()) != deficiency_index(d, s))
        counts = false;
    }
  rec.check_bool("basis_count_matches_deficiency", counts);

  // gram positive definite
  double min_eig = 1e300;
  for (const auto& [d, s] : std::vector<std::pair<int, double>>{{3, 3.0}, {1, 1.8}, {2, 2.2}}) {
    ProblemParams p(d, s, 1.0);
    const auto basis = kernel_basis(p, p.regime.n);
    const Eigen::MatrixXcd G = gram_matrix(basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  rec.check_bool("gram_positive_definite", min_eig > 0.0);

  // symmetry for hermitian T and violation for a skewed control
  ProblemParams p(3, 3.0, 1.0);
  const auto basis = kernel_basis(p, 2);
  std::vector<MultiIndex> dom(basis.size() - 1), comp(1);
  for (size_t i = 0; i + 1 < basis.size(); ++i) dom[i] = basis[i].gamma;
  comp[0] = basis.back().gamma;

  GridPtr grid = make_grid(GridSpec{}, 3);
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> un(-1.0, 1.0);
  auto rand_vec = [&](Eigen::Index n) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(un(rng), un(rng));
    return v;
  };
  Eigen::MatrixXcd T(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) T(i, j) = Complex(un(rng), un(rng));
  Eigen::MatrixXcd Therm = 0.5 * (T + T.adjoint());

  // keep the radial and kernel sectors comparable in size, so hermiticity
  // violations are visible against the automatically-symmetric radial terms
  auto scaled_profile = [&](unsigned seed) {
    RadialFunction f = random_moment_free_profile(grid, seed);
    return RadialFunction(f.grid_ptr(), 0.05 * f.values());
  };
  auto symmetry_residual = [&](const Eigen::MatrixXcd& TT, bool allow) {
    TDomainElement e1 = make_T_element(scaled_profile(51), rand_vec(3),
                                       rand_vec(1), TT, p, dom, comp,
                                       BasisFlavor::Homogeneous, allow);
    TDomainElement e2 = make_T_element(scaled_profile(52), rand_vec(3),
                                       rand_vec(1), TT, p, dom, comp,
                                       BasisFlavor::Homogeneous, allow);
    const Complex lhs = form_inner(apply_T_operator(e1), e2.as_form(), p,
                                   BasisFlavor::Homogeneous);
    const Complex rhs = form_inner(e1.as_form(), apply_T_operator(e2), p,
                                   BasisFlavor::Homogeneous);
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  };

  rec.check("hermitian_symmetry", symmetry_residual(Therm, false), 1e-9);
  Eigen::MatrixXcd skew = Therm;
  skew(0, 1) += Complex(0.0, 0.3);
  rec.check_bool("nonhermitian_control", symmetry_residual(skew, true) > 1e-3);

  // worst singularity exponent window
  bool window = true;
  for (double s : {1.8, 2.0, 2.4, 2.8, 3.2}) {
    const double e = worst_singularity_exponent(3, s);
    if (!(e > 0.5 && e < 1.5)) window = false;
  }
  rec.check_bool("singularity_exponent_window", window);
  rec.check("singularity_exponent_s2", rel_err(worst_singularity_exponent(3, 2.0), 1.0),
            1e-14);
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"params", "kernels", "radial", "krein", "spectral", "fractional", "closure",
          "highrank"};
}

std::vector<CheckResult> run_suite(const std::string& name) {
  std::vector<CheckResult> out;
  const bool all = (name == "all");
  if (all || name == "params") suite_params(out);
  if (all || name == "kernels") suite_kernels(out);
  if (all || name == "radial") suite_radial(out);
  if (all || name == "krein") suite_krein(out);
  if (all || name == "spectral") suite_spectral(out);
  if (all || name == "fractional") suite_fractional(out);
  if (all || name == "closure") suite_closure(out);
  if (all || name == "highrank") suite_highrank(out);
  if (out.empty()) throw BadSpec("unknown verification suite: " + name);
  return out;
}

}  // namespace pointfrac::verify
