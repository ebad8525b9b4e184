#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pointfrac/grid.hpp"
#include "pointfrac/params.hpp"

namespace pointfrac {

using MultiIndex = std::vector<int>;

// All multi-indices in d variables with total order <= max_total, graded
// lexicographic order.
std::vector<MultiIndex> multi_indices_up_to(int d, int max_total);

// \int_{S^{d-1}} w_1^{a_1} ... w_d^{a_d} dsigma; zero unless every a_i even.
double angular_moment(const MultiIndex& a);

enum class BasisFlavor { Homogeneous, Inhomogeneous };

struct KernelBasisElement {
  MultiIndex gamma;
  BasisFlavor flavor;
  ProblemParams params;
};

// One element p^gamma / denom per multi-index with sum gamma <= n-1; the
// count equals the deficiency index.
std::vector<KernelBasisElement> kernel_basis(const ProblemParams& params, int n,
                                             BasisFlavor flavor = BasisFlavor::Homogeneous);

// \int_0^inf r^m denom(r)^{-k} dr for the flavor's denominator.
double radial_power_integral(const ProblemParams& params, BasisFlavor flavor, double m,
                             double k);

Eigen::MatrixXcd gram_matrix(const std::vector<KernelBasisElement>& basis);

// p^gamma / denom^k
struct Atom {
  MultiIndex gamma;
  int k;
};

struct MomentumForm {
  std::optional<RadialFunction> radial;
  std::vector<std::pair<Atom, Complex>> atoms;
};

Complex form_inner(const MomentumForm& a, const MomentumForm& b, const ProblemParams& params,
                   BasisFlavor flavor);

// Coefficients u, w and the hermitian matrix T refer to the unit-L^2
// normalised kernel directions, so matrix hermiticity is operator
// hermiticity; the chosen basis split must be orthogonal (parity of the
// multi-indices usually provides this for free).
struct TDomainElement {
  RadialFunction f;  // radial moment-free part of the closure-domain sector
  Eigen::VectorXcd u, w;
  Eigen::MatrixXcd T;
  std::vector<MultiIndex> domain_basis, complement_basis;
  Eigen::VectorXd domain_norms, complement_norms;  // L^2 norms of the raw atoms
  ProblemParams params;
  BasisFlavor flavor;

  MomentumForm as_form() const;           // g = f + resolvent(Tu + w) + u
  MomentumForm regular_part_form() const; // F = f + resolvent(Tu + w)
};

TDomainElement make_T_element(RadialFunction f, Eigen::VectorXcd u, Eigen::VectorXcd w,
                              Eigen::MatrixXcd T, const ProblemParams& params,
                              std::vector<MultiIndex> domain_basis,
                              std::vector<MultiIndex> complement_basis,
                              BasisFlavor flavor = BasisFlavor::Homogeneous,
                              bool allow_nonhermitian = false);

// momentum form of (k_T + lambda) g = (k_F + lambda) F
MomentumForm apply_T_operator(const TDomainElement& e);

// d - 1 + n - s for s in I_n^(d), n >= 1; lies in (d/2 - 1, d/2).
double worst_singularity_exponent(int d, double s);

}  // namespace pointfrac
