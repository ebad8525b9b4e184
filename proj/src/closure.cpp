#include "pointfrac/closure.hpp"

#include <cmath>

#include "pointfrac/quadrature.hpp"

namespace pointfrac {

double cutoff_phi(double t) {
  if (t <= 1.0) return 0.0;
  if (t >= 2.0) return 1.0;
  const double u = 2.0 - t;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

RadialFunction moment_truncate(const RadialFunction& f, double R) {
  if (f.grid().dimension() != 3)
    throw DomainError("moment truncation is the d = 3 construction");
  if (!(R > 0.0)) throw DomainError("R must be positive");
  const auto& r = f.grid().nodes();
  const auto& w = f.grid().weights();
  Complex moment = 0.0;
  double ball = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r[i] <= R) moment += w[i] * f.values()[i];
    if (r[i] <= 1.0) ball += w[i];
  }
  Eigen::ArrayXcd vals(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    Complex v = (r[i] <= R) ? f.values()[i] : Complex(0.0);
    if (r[i] <= 1.0) v -= moment / ball;
    vals[i] = v;
  }
  return RadialFunction(f.grid_ptr(), std::move(vals), std::nullopt, false);
}

namespace {

struct PositionSamples {
  std::vector<double> t, w;  // nodes and plain dt weights on [1/n, 2/n]
  std::vector<Complex> g;    // psi(n t) f(t) (times t in d = 3)
};

PositionSamples build_difference(const RadialFunction& f, int n, int d) {
  PositionSamples out;
  // psi_n f lives on the whole ball |x| <= 2/n: psi = -1 inside |x| <= 1/n,
  // the smooth blend on [1/n, 2/n]
  const double a = 0.0, b = 2.0 / n;
  const int panels = 192, q = 8;
  const auto& rule = quad::gauss_legendre(q);
  out.t.reserve(panels * q);
  out.w.reserve(panels * q);
  out.g.reserve(panels * q);
  for (int p = 0; p < panels; ++p) {
    const double pa = a + (b - a) * p / panels;
    const double pb = a + (b - a) * (p + 1) / panels;
    const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
    for (int i = 0; i < q; ++i) {
      const double t = mid + half * rule.x[i];
      const double psi = cutoff_psi(n * t);
      if (psi == 0.0) continue;
      Complex val = eval_at_x(f, t) * psi;
      if (d == 3) val *= t;
      out.t.push_back(t);
      out.w.push_back(half * rule.w[i]);
      out.g.push_back(val);
    }
  }
  return out;
}

}  // namespace

double closure_distance(const RadialFunction& f, int n, double s, int d) {
  if (d != 1 && d != 3)
    throw UnsupportedDimension("closure distances implemented for d in {1, 3}");
  if (f.grid().dimension() != d) throw GridMismatch("profile dimension mismatch");
  if (n < 1) throw DomainError("scale index must be positive");

  const PositionSamples ps = build_difference(f, n, d);

  // momentum grid for the Sobolev integral of the difference
  GridSpec spec;
  spec.r_min = 1e-4;
  spec.r_max = std::max(2000.0, 400.0 * n);
  spec.count = 4096;
  const GridPtr pgrid = make_grid(spec, d);

  const auto& p = pgrid->nodes();
  Eigen::ArrayXcd hat(p.size());
  const double front = (d == 3) ? std::pow(2.0 * kPi, -1.5) * 4.0 * kPi
                                : std::pow(2.0 * kPi, -0.5) * 2.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Complex acc = 0.0;
    if (d == 3) {
      for (size_t j = 0; j < ps.t.size(); ++j)
        acc += ps.w[j] * ps.g[j] * std::sin(p[i] * ps.t[j]);
      acc *= front / p[i];
    } else {
      for (size_t j = 0; j < ps.t.size(); ++j)
        acc += ps.w[j] * ps.g[j] * std::cos(p[i] * ps.t[j]);
      acc *= front;
    }
    hat[i] = acc;
  }

  const RadialFunction diff(pgrid, std::move(hat), std::nullopt, false);
  return sobolev_norm(diff, s);
}

DecayFit decay_rate_fit(const RadialFunction& f, double s, int d,
                        const std::vector<int>& n_list) {
  if (n_list.size() < 4) throw DomainError("need at least four scales for a rate fit");
  DecayFit fit;
  fit.distances_sq.reserve(n_list.size());
  double floor_scale = sobolev_norm(f, s);
  for (int n : n_list) {
    const double dist = closure_distance(f, n, s, d);
    fit.distances_sq.push_back(dist * dist);
  }
  double max_d2 = 0.0;
  for (double v : fit.distances_sq) max_d2 = std::max(max_d2, v);
  if (max_d2 < 1e-16 * (1.0 + floor_scale * floor_scale)) {
    fit.no_signal = true;
    return fit;
  }
  // least squares slope of log(d^2) against log(n)
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(n_list.size());
  for (size_t i = 0; i < n_list.size(); ++i) {
    const double x = std::log(static_cast<double>(n_list[i]));
    const double y = std::log(fit.distances_sq[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

}  // namespace pointfrac
