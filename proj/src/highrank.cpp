#include "pointfrac/highrank.hpp"

#include <cmath>
#include <numeric>

#include "pointfrac/quadrature.hpp"

namespace pointfrac {

std::vector<MultiIndex> multi_indices_up_to(int d, int max_total) {
  std::vector<MultiIndex> out;
  if (d < 1 || max_total < 0) return out;
  MultiIndex cur(d, 0);
  for (int total = 0; total <= max_total; ++total) {
    // enumerate compositions of `total` into d parts, lexicographically
    std::function<void(int, int)> rec = [&](int pos, int rest) {
      if (pos == d - 1) {
        cur[pos] = rest;
        out.push_back(cur);
        return;
      }
      for (int v = rest; v >= 0; --v) {
        cur[pos] = v;
        rec(pos + 1, rest - v);
      }
    };
    rec(0, total);
  }
  return out;
}

double angular_moment(const MultiIndex& a) {
  const int d = static_cast<int>(a.size());
  int total = 0;
  for (int ai : a) {
    if (ai < 0) throw DomainError("angular moment needs non-negative exponents");
    if (ai % 2 != 0) return 0.0;
    total += ai;
  }
  double lg = -std::lgamma(0.5 * (total + d));
  for (int ai : a) lg += std::lgamma(0.5 * (ai + 1));
  return 2.0 * std::exp(lg);
}

std::vector<KernelBasisElement> kernel_basis(const ProblemParams& params, int n,
                                             BasisFlavor flavor) {
  if (n < 1) throw EndpointPower("kernel basis requires n >= 1");
  if (params.regime.n != n)
    throw EndpointPower("power s does not lie in the requested regime window");
  if (flavor == BasisFlavor::Inhomogeneous && params.d != 3)
    throw UnsupportedDimension("inhomogeneous basis is the d = 3 construction");
  std::vector<KernelBasisElement> out;
  for (auto& gamma : multi_indices_up_to(params.d, n - 1))
    out.push_back({std::move(gamma), flavor, params});
  return out;
}

double radial_power_integral(const ProblemParams& params, BasisFlavor flavor, double m,
                             double k) {
  const double s = params.s, lambda = params.lambda;
  const double R = 1e6;
  // denominator (r^s + lambda)^k resp. (r^2 + lambda)^{s k / 2}
  const double tail_s = (flavor == BasisFlavor::Homogeneous) ? s : 2.0;
  const double tail_k = (flavor == BasisFlavor::Homogeneous) ? k : 0.5 * s * k;
  if (!(tail_s * tail_k > m + 1.0)) throw NotIntegrable("radial atom integral diverges");
  auto f = [&](double r) {
    const double den = (flavor == BasisFlavor::Homogeneous)
                           ? std::pow(std::pow(r, s) + lambda, k)
                           : std::pow(r * r + lambda, 0.5 * s * k);
    return std::pow(r, m) / den;
  };
  const double head = quad::adaptive(f, 0.0, R, 1e-13);
  const double tail = quad::tail_power_shifted(m, tail_s, tail_k, lambda, R);
  return head + tail;
}

Eigen::MatrixXcd gram_matrix(const std::vector<KernelBasisElement>& basis) {
  const auto N = static_cast<Eigen::Index>(basis.size());
  if (N == 0) return {};
  const ProblemParams& params = basis[0].params;
  const int d = params.d;
  Eigen::MatrixXcd G(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = i; j < N; ++j) {
      MultiIndex sum(d);
      int total = 0;
      for (int c = 0; c < d; ++c) {
        sum[c] = basis[i].gamma[c] + basis[j].gamma[c];
        total += sum[c];
      }
      const double A = angular_moment(sum);
      double val = 0.0;
      if (A != 0.0)
        val = A * radial_power_integral(params, basis[i].flavor, d - 1.0 + total, 2.0);
      G(i, j) = val;
      G(j, i) = val;
    }
  }
  return G;
}

namespace {

int order_of(const MultiIndex& g) {
  return std::accumulate(g.begin(), g.end(), 0);
}

}  // namespace

Complex form_inner(const MomentumForm& a, const MomentumForm& b, const ProblemParams& params,
                   BasisFlavor flavor) {
  Complex acc = 0.0;
  if (a.radial && b.radial) acc += inner_product(*a.radial, *b.radial);

  const double s = params.s, lambda = params.lambda;
  auto denom_pow = [&](double r, int k) {
    return (flavor == BasisFlavor::Homogeneous)
               ? std::pow(std::pow(r, s) + lambda, static_cast<double>(k))
               : std::pow(r * r + lambda, 0.5 * s * k);
  };

  // radial part against atoms: only the spherically symmetric moment survives
  auto radial_vs_atom = [&](const RadialFunction& rad, const Atom& atom, Complex coef,
                            bool conj_radial) -> Complex {
    const double A = angular_moment(atom.gamma);
    if (A == 0.0) return 0.0;
    const auto& r = rad.grid().nodes();
    const auto& bw = rad.grid().base_weights();
    const int total = order_of(atom.gamma);
    Complex integral = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const Complex v = conj_radial ? std::conj(rad.values()[i]) : rad.values()[i];
      integral += bw[i] * std::pow(r[i], params.d - 1.0 + total) / denom_pow(r[i], atom.k) * v;
    }
    return A * coef * integral;
  };

  if (a.radial)
    for (const auto& [atom, coef] : b.atoms)
      acc += radial_vs_atom(*a.radial, atom, coef, true);
  if (b.radial)
    for (const auto& [atom, coef] : a.atoms)
      acc += radial_vs_atom(*b.radial, atom, std::conj(coef), false);

  for (const auto& [atom_a, ca] : a.atoms) {
    for (const auto& [atom_b, cb] : b.atoms) {
      MultiIndex sum(params.d);
      int total = 0;
      for (int c = 0; c < params.d; ++c) {
        sum[c] = atom_a.gamma[c] + atom_b.gamma[c];
        total += sum[c];
      }
      const double A = angular_moment(sum);
      if (A == 0.0) continue;
      acc += std::conj(ca) * cb * A *
             radial_power_integral(params, flavor, params.d - 1.0 + total,
                                   static_cast<double>(atom_a.k + atom_b.k));
    }
  }
  return acc;
}

TDomainElement make_T_element(RadialFunction f, Eigen::VectorXcd u, Eigen::VectorXcd w,
                              Eigen::MatrixXcd T, const ProblemParams& params,
                              std::vector<MultiIndex> domain_basis,
                              std::vector<MultiIndex> complement_basis,
                              BasisFlavor flavor, bool allow_nonhermitian) {
  const auto N = static_cast<Eigen::Index>(domain_basis.size());
  const auto M = static_cast<Eigen::Index>(complement_basis.size());
  if (T.rows() != N || T.cols() != N) throw DimensionMismatch("T must be N x N");
  if (u.size() != N) throw DimensionMismatch("u must match the T-domain basis");
  if (w.size() != M) throw DimensionMismatch("w must match the complement basis");
  if (!allow_nonhermitian && N > 0 &&
      (T - T.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("T must be hermitian within 1e-12");
  const long long J = deficiency_index(params.d, params.s, params.endpoint_tol);
  if (N + M > J) throw DimensionMismatch("basis exceeds the deficiency index");
  const int n = params.regime.n;
  for (const auto* set : {&domain_basis, &complement_basis})
    for (const auto& g : *set) {
      if (static_cast<int>(g.size()) != params.d)
        throw DimensionMismatch("multi-index length must equal the dimension");
      if (order_of(g) > n - 1) throw DomainError("multi-index order exceeds n - 1");
    }
  // moment-free radial sector: even-order moments must vanish up to n - 1
  const auto& r = f.grid().nodes();
  const auto& fw = f.grid().weights();
  double scale = (fw * f.values().abs()).sum();
  for (int total = 0; total <= n - 1; total += 2) {
    Complex mom = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i)
      mom += fw[i] * std::pow(r[i], total) * f.values()[i];
    if (std::abs(mom) > 1e-8 * std::max(1.0, scale))
      throw DomainViolation("radial part must be moment free to order n - 1");
  }

  // kernel-direction geometry: unit norms, orthogonal split
  auto atom_norm = [&](const MultiIndex& g) {
    const int total = order_of(g);
    MultiIndex twice(g.size());
    for (size_t c = 0; c < g.size(); ++c) twice[c] = 2 * g[c];
    return std::sqrt(angular_moment(twice) *
                     radial_power_integral(params, flavor, params.d - 1.0 + 2.0 * total,
                                           2.0));
  };
  auto gram_entry = [&](const MultiIndex& a, const MultiIndex& b) {
    MultiIndex sum(a.size());
    int total = 0;
    for (size_t c = 0; c < a.size(); ++c) {
      sum[c] = a[c] + b[c];
      total += sum[c];
    }
    const double A = angular_moment(sum);
    if (A == 0.0) return 0.0;
    return A * radial_power_integral(params, flavor, params.d - 1.0 + total, 2.0);
  };
  Eigen::VectorXd dn(N), cn(M);
  for (Eigen::Index i = 0; i < N; ++i) dn[i] = atom_norm(domain_basis[i]);
  for (Eigen::Index i = 0; i < M; ++i) cn[i] = atom_norm(complement_basis[i]);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = i + 1; j < N; ++j)
      if (std::abs(gram_entry(domain_basis[i], domain_basis[j])) > 1e-10 * dn[i] * dn[j])
        throw DomainError("T-domain basis must be orthogonal; pick a parity-compatible split");
    for (Eigen::Index j = 0; j < M; ++j)
      if (std::abs(gram_entry(domain_basis[i], complement_basis[j])) > 1e-10 * dn[i] * cn[j])
        throw DomainError("complement must be orthogonal to the T-domain");
  }

  return TDomainElement{std::move(f),
                        std::move(u),
                        std::move(w),
                        std::move(T),
                        std::move(domain_basis),
                        std::move(complement_basis),
                        std::move(dn),
                        std::move(cn),
                        params,
                        flavor};
}

MomentumForm TDomainElement::regular_part_form() const {
  MomentumForm form;
  form.radial = f;
  const Eigen::VectorXcd tu = (u.size() > 0) ? Eigen::VectorXcd(T * u) : u;
  for (Eigen::Index i = 0; i < tu.size(); ++i)
    form.atoms.push_back({{domain_basis[i], 2}, tu[i] / domain_norms[i]});
  for (Eigen::Index i = 0; i < w.size(); ++i)
    form.atoms.push_back({{complement_basis[i], 2}, w[i] / complement_norms[i]});
  return form;
}

MomentumForm TDomainElement::as_form() const {
  MomentumForm form = regular_part_form();
  for (Eigen::Index i = 0; i < u.size(); ++i)
    form.atoms.push_back({{domain_basis[i], 1}, u[i] / domain_norms[i]});
  return form;
}

MomentumForm apply_T_operator(const TDomainElement& e) {
  // the symbol lowers every resolvent atom by one power and multiplies the
  // radial sector pointwise
  MomentumForm out;
  const Multiplier m = (e.flavor == BasisFlavor::Homogeneous)
                           ? symbol_homogeneous(e.params.s, e.params.lambda)
                           : symbol_inhomogeneous(e.params.s, e.params.lambda);
  out.radial = multiplier_apply(e.f, m);
  const Eigen::VectorXcd tu = (e.u.size() > 0) ? Eigen::VectorXcd(e.T * e.u) : e.u;
  for (Eigen::Index i = 0; i < tu.size(); ++i)
    out.atoms.push_back({{e.domain_basis[i], 1}, tu[i] / e.domain_norms[i]});
  for (Eigen::Index i = 0; i < e.w.size(); ++i)
    out.atoms.push_back({{e.complement_basis[i], 1}, e.w[i] / e.complement_norms[i]});
  return out;
}

double worst_singularity_exponent(int d, double s) {
  const RegimeInterval reg = classify_regime(d, s);
  if (reg.n < 1)
    throw EndpointPower("no kernel sector below the first transition");
  return d - 1.0 + reg.n - s;
}

}  // namespace pointfrac
