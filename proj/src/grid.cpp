#include "pointfrac/grid.hpp"

#include <cmath>

#include "pointfrac/quadrature.hpp"

namespace pointfrac {

double surface_measure(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

RadialGrid::RadialGrid(const GridSpec& spec, int dimension) : d_(dimension), spec_(spec) {
  if (!(spec.r_min > 0.0) || !(spec.r_max > spec.r_min))
    throw BadSpec("grid requires 0 < r_min < r_max");
  if (spec.count < 16) throw BadSpec("grid requires count >= 16");
  if (dimension < 1) throw UnsupportedDimension("grid dimension must be >= 1");

  constexpr int q = 8;
  const int panels = spec.count / q;          // panel 0 covers [0, r_min]
  const int log_panels = panels - 1;
  const auto& rule = quad::gauss_legendre(q);

  const Eigen::Index n = static_cast<Eigen::Index>(panels) * q;
  nodes_.resize(n);
  base_w_.resize(n);

  auto fill_panel = [&](Eigen::Index off, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < q; ++i) {
      nodes_[off + i] = mid + half * rule.x[i];
      base_w_[off + i] = half * rule.w[i];
    }
  };

  fill_panel(0, 0.0, spec.r_min);
  const double t0 = std::log(spec.r_min), t1 = std::log(spec.r_max);
  const double dt = (t1 - t0) / log_panels;
  for (int p = 0; p < log_panels; ++p) {
    // Gauss panel in the log coordinate; dr = r dt
    const double a = t0 + p * dt, b = a + dt;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const Eigen::Index off = static_cast<Eigen::Index>(p + 1) * q;
    for (int i = 0; i < q; ++i) {
      const double r = std::exp(mid + half * rule.x[i]);
      nodes_[off + i] = r;
      base_w_[off + i] = half * rule.w[i] * r;
    }
  }

  const double omega = surface_measure(d_);
  weights_ = base_w_ * omega * nodes_.pow(d_ - 1);
}

GridPtr make_grid(const GridSpec& spec, int dimension) {
  return std::make_shared<const RadialGrid>(spec, dimension);
}

RadialFunction::RadialFunction(GridPtr grid, Eigen::ArrayXcd values,
                               std::optional<TailDescriptor> tail, bool validate_tail)
    : grid_(std::move(grid)), values_(std::move(values)), tail_(std::move(tail)) {
  if (values_.size() != grid_->size())
    throw GridMismatch("sample count does not match the grid");
  if (!values_.isFinite().all()) throw DomainError("samples must be finite");
  // integrability of tails is enforced by the operations that need it
  // (inner products, origin values, Sobolev weights), not here: multiplier
  // images legitimately leave L^2
  if (tail_ && validate_tail) {
    const auto& r = grid_->nodes();
    const double r_lo = grid_->spec().r_max / 10.0;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      if (r[i] < r_lo) continue;
      const Complex model = tail_->amplitude * std::pow(r[i], -tail_->exponent);
      const double mag = std::abs(values_[i]);
      if (mag > 1e-300 && std::abs(model - values_[i]) > 0.05 * mag)
        throw BadSpec("tail descriptor does not match the last decade of samples");
    }
  }
}

RadialFunction RadialFunction::from_function(GridPtr grid,
                                             const std::function<Complex(double)>& fn,
                                             std::optional<TailDescriptor> tail,
                                             bool validate_tail) {
  Eigen::ArrayXcd vals(grid->size());
  const auto& r = grid->nodes();
  for (Eigen::Index i = 0; i < r.size(); ++i) vals[i] = fn(r[i]);
  return RadialFunction(std::move(grid), std::move(vals), std::move(tail), validate_tail);
}

namespace {

void require_same_grid(const RadialFunction& f, const RadialFunction& g) {
  if (!f.grid().compatible(g.grid()))
    throw GridMismatch("radial functions live on different grids");
}

// \int_{r_max}^inf omega r^{d-1} (A1 A2) r^{-(q1+q2)} dr
Complex tail_pair_integral(const RadialGrid& grid, Complex a1, double q1, Complex a2,
                           double q2) {
  const int d = grid.dimension();
  const double q = q1 + q2;
  if (!(q > d)) throw NotIntegrable("tail product is not integrable");
  const double R = grid.spec().r_max;
  return surface_measure(d) * a1 * a2 * std::pow(R, d - q) / (q - d);
}

}  // namespace

Complex inner_product(const RadialFunction& f, const RadialFunction& g) {
  require_same_grid(f, g);
  const auto& w = f.grid().weights();
  Complex acc = (w * f.values().conjugate() * g.values()).sum();
  if (f.tail() && g.tail())
    acc += tail_pair_integral(f.grid(), std::conj(f.tail()->amplitude), f.tail()->exponent,
                              g.tail()->amplitude, g.tail()->exponent);
  return acc;
}

double norm_l2(const RadialFunction& f) {
  return std::sqrt(std::abs(inner_product(f, f)));
}

Complex eval_at_zero(const RadialFunction& f) {
  const int d = f.grid().dimension();
  if (f.tail() && !(f.tail()->exponent > d))
    throw NotIntegrable("profile is not integrable");
  Complex acc = (f.grid().weights() * f.values()).sum();
  if (f.tail()) {
    const double q = f.tail()->exponent;
    const double R = f.grid().spec().r_max;
    acc += surface_measure(d) * f.tail()->amplitude * std::pow(R, d - q) / (q - d);
  }
  return acc * std::pow(2.0 * kPi, -0.5 * d);
}

namespace {

// \int_a^b P(r) trig(x r) dr for the local cubic through four surrounding
// samples; exact in the oscillation.  Newton form evaluated about r0 = a.
struct CubicMoments {
  // converts Newton coefficients to power-basis coefficients about a
  static void to_power_basis(const double* xs, const Complex* cs, double a, Complex* out);
};

void CubicMoments::to_power_basis(const double* xs, const Complex* cs, double a,
                                  Complex* out) {
  // Newton polynomial c0 + c1 (r-x0) + c2 (r-x0)(r-x1) + c3 (r-x0)(r-x1)(r-x2)
  // re-centred at a: expand in u = r - a.
  const double d0 = a - xs[0], d1 = a - xs[1], d2 = a - xs[2];
  out[0] = cs[0] + cs[1] * d0 + cs[2] * d0 * d1 + cs[3] * d0 * d1 * d2;
  out[1] = cs[1] + cs[2] * (d0 + d1) + cs[3] * (d0 * d1 + d0 * d2 + d1 * d2);
  out[2] = cs[2] + cs[3] * (d0 + d1 + d2);
  out[3] = cs[3];
}

// integrals of u^j sin(x(a+u)) and u^j cos(x(a+u)) over u in [0, w]
void poly_trig_integrals(double x, double a, double w, Complex* c /*coeffs*/, bool sine,
                         Complex* result) {
  const double xw = x * w;
  Complex acc = 0.0;
  if (std::abs(xw) < 0.5) {
    // Taylor in the oscillation about the left endpoint
    const double sa = std::sin(x * a), ca = std::cos(x * a);
    // trig(x(a+u)) = trig_a * cos(xu) +/- cotrig_a * sin(xu)
    double base_c = sine ? sa : ca;
    double base_s = sine ? ca : -sa;
    // moments M_j = int_0^w u^j cos(xu) du and N_j = int_0^w u^j sin(xu) du
    for (int j = 0; j < 4; ++j) {
      double Mj = 0.0, Nj = 0.0;
      double term = std::pow(w, j + 1) / (j + 1);  // k = 0 of cos series
      int k = 0;
      while (true) {
        Mj += term;
        const double t_next = -term * xw * xw * (j + 2.0 * k + 1.0) /
                              ((2.0 * k + 1.0) * (2.0 * k + 2.0) * (j + 2.0 * k + 3.0));
        if (std::abs(t_next) < 1e-18 * std::max(1.0, std::abs(Mj)) || k > 20) break;
        term = t_next;
        ++k;
      }
      term = x * std::pow(w, j + 2) / (j + 2);
      k = 0;
      while (true) {
        Nj += term;
        const double t_next = -term * xw * xw * (j + 2.0 * k + 2.0) /
                              ((2.0 * k + 2.0) * (2.0 * k + 3.0) * (j + 2.0 * k + 4.0));
        if (std::abs(t_next) < 1e-18 * std::max(1.0, std::abs(Nj)) || k > 20) break;
        term = t_next;
        ++k;
      }
      acc += c[j] * (base_c * Mj + base_s * Nj);
    }
    *result = acc;
    return;
  }
  // integration by parts, stable when x w is not small
  // \int P(u) trig(x(a+u)) du with antiderivative chain of trig
  auto P = [&](double u, int deriv) -> Complex {
    switch (deriv) {
      case 0: return ((c[3] * u + c[2]) * u + c[1]) * u + c[0];
      case 1: return (3.0 * c[3] * u + 2.0 * c[2]) * u + c[1];
      case 2: return 6.0 * c[3] * u + 2.0 * c[2];
      default: return 6.0 * c[3];
    }
  };
  auto trig_anti = [&](double u, int order) -> double {
    // order-th antiderivative factor of sin/cos(x(a+u))
    const double arg = x * (a + u);
    if (sine) {
      switch (order % 4) {
        case 0: return std::sin(arg);
        case 1: return -std::cos(arg);
        case 2: return -std::sin(arg);
        default: return std::cos(arg);
      }
    }
    switch (order % 4) {
      case 0: return std::cos(arg);
      case 1: return std::sin(arg);
      case 2: return -std::cos(arg);
      default: return -std::sin(arg);
    }
  };
  // \int P trig = sum_k (-1)^k [P^{(k)} T_{k+1}]_0^w with T_{k+1} the (k+1)-th
  // antiderivative of the trigonometric factor, each carrying 1/x^{k+1}
  Complex sum = 0.0;
  double xpow = x;
  for (int k = 0; k < 4; ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sgn / xpow * (P(w, k) * trig_anti(w, k + 1) - P(0.0, k) * trig_anti(0.0, k + 1));
    xpow *= x;
  }
  *result = sum;
}

}  // namespace

Complex eval_at_x(const RadialFunction& f, double x) {
  if (!(x > 0.0)) throw DomainError("eval_at_x requires x > 0");
  const int d = f.grid().dimension();
  if (d != 1 && d != 3)
    throw UnsupportedDimension("position evaluation implemented for d in {1, 3}");
  const auto& r = f.grid().nodes();
  const auto& v = f.values();
  const Eigen::Index n = r.size();
  const bool sine = (d == 3);

  // integrand samples h(r): r f(r) for d = 3, f(r) for d = 1
  Eigen::ArrayXcd h(n);
  if (d == 3)
    h = v * r.cast<Complex>();
  else
    h = v;

  // suffix bound for early exit
  Eigen::ArrayXd habs = h.abs();
  std::vector<double> suffix(n + 1, 0.0);
  for (Eigen::Index i = n - 1; i >= 0; --i)
    suffix[i] = std::max(suffix[i + 1], habs[i]);

  auto segment = [&](Eigen::Index stencil0, double a, double b) -> Complex {
    double xs[4];
    Complex ys[4];
    for (int k = 0; k < 4; ++k) {
      xs[k] = r[stencil0 + k];
      ys[k] = h[stencil0 + k];
    }
    // Newton divided differences
    Complex cs[4] = {ys[0], 0, 0, 0};
    Complex t1[4] = {ys[0], ys[1], ys[2], ys[3]};
    for (int lev = 1; lev < 4; ++lev) {
      for (int k = 0; k < 4 - lev; ++k)
        t1[k] = (t1[k + 1] - t1[k]) / (xs[k + lev] - xs[k]);
      cs[lev] = t1[0];
    }
    Complex pcoef[4];
    CubicMoments::to_power_basis(xs, cs, a, pcoef);
    Complex piece;
    poly_trig_integrals(x, a, b - a, pcoef, sine, &piece);
    return piece;
  };

  Complex acc = segment(0, 0.0, r[0]);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double a = r[i], b = r[i + 1];
    if (!(b > a)) continue;
    const Eigen::Index j0 = std::max<Eigen::Index>(0, std::min(i - 1, n - 4));
    acc += segment(j0, a, b);
    if (suffix[i + 1] * (r[n - 1] - b) < 1e-18 * std::max(1.0, std::abs(acc))) break;
  }

  if (f.tail()) {
    const double R = r[n - 1];
    const double a_pow = (d == 3) ? 1.0 - f.tail()->exponent : -f.tail()->exponent;
    const double u0 = x * R;
    double t;
    if (u0 > 50.0) {
      t = sine ? quad::osc_tail_sin(a_pow, u0) : quad::osc_tail_cos(a_pow, u0);
    } else {
      // oscillation too slow for the asymptotic series: sum half-period
      // segments of \int_{u0}^inf u^a trig(u) du and extrapolate
      const double pi = kPi;
      double z = (std::floor(u0 / pi) + 1.0) * pi;
      if (!sine) z = (std::floor(u0 / pi - 0.5) + 1.5) * pi;
      auto seg_f = [&](double u) {
        return std::pow(u, a_pow) * (sine ? std::sin(u) : std::cos(u));
      };
      std::vector<double> partial;
      double s_acc = quad::gl_panel(seg_f, u0, z, 24);
      partial.push_back(s_acc);
      for (int k = 0; k < 80; ++k) {
        s_acc += quad::gl_panel(seg_f, z, z + pi, 24);
        z += pi;
        partial.push_back(s_acc);
      }
      t = quad::epsilon_limit(partial);
    }
    acc += f.tail()->amplitude * std::pow(x, -a_pow - 1.0) * t;
  }

  const double front = (d == 3) ? std::pow(2.0 * kPi, -1.5) * 4.0 * kPi / x
                                : std::pow(2.0 * kPi, -0.5) * 2.0;
  return acc * front;
}

double sobolev_norm(const RadialFunction& f, double s) {
  const int d = f.grid().dimension();
  const auto& r = f.grid().nodes();
  const auto& w = f.grid().weights();
  if (f.tail() && !(2.0 * f.tail()->exponent - 2.0 * s > d))
    throw NotIntegrable("weighted profile is not square integrable");
  double acc = (w * (1.0 + r * r).pow(s) * f.values().abs2()).sum();
  if (f.tail()) {
    // (1 + r^2)^s ~ r^{2s} beyond the grid
    const double q = 2.0 * f.tail()->exponent - 2.0 * s;
    const double R = f.grid().spec().r_max;
    acc += surface_measure(d) * std::norm(f.tail()->amplitude) * std::pow(R, d - q) / (q - d);
  }
  return std::sqrt(acc);
}

RadialFunction multiplier_apply(const RadialFunction& f, const Multiplier& m) {
  const auto& r = f.grid().nodes();
  Eigen::ArrayXcd vals(f.values().size());
  for (Eigen::Index i = 0; i < r.size(); ++i) vals[i] = f.values()[i] * m.fn(r[i]);
  if (!vals.isFinite().all()) throw DomainError("multiplier produced non-finite samples");
  std::optional<TailDescriptor> tail;
  if (f.tail())
    tail = TailDescriptor{f.tail()->amplitude * m.tail_amplitude,
                          f.tail()->exponent - m.tail_power};
  return RadialFunction(f.grid_ptr(), std::move(vals), std::move(tail), false);
}

Multiplier symbol_homogeneous(double s, double lambda) {
  return {[s, lambda](double r) { return std::pow(r, s) + lambda; }, 1.0, s};
}

Multiplier resolvent_homogeneous(double s, double lambda) {
  return {[s, lambda](double r) { return 1.0 / (std::pow(r, s) + lambda); }, 1.0, -s};
}

Multiplier symbol_inhomogeneous(double s, double lambda) {
  return {[s, lambda](double r) { return std::pow(r * r + lambda, 0.5 * s); }, 1.0, s};
}

Multiplier resolvent_inhomogeneous(double s, double lambda) {
  return {[s, lambda](double r) { return std::pow(r * r + lambda, -0.5 * s); }, 1.0, -s};
}

}  // namespace pointfrac
