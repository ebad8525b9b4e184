#include "pointfrac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "pointfrac/errors.hpp"

namespace pointfrac::quad {

namespace {

GaussRule compute_gauss(int n) {
  // Newton iteration on Legendre polynomials, nodes symmetric about 0.
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

double gl_panel(const Fn& f, double a, double b, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) sum += rule.w[i] * f(mid + half * rule.x[i]);
  return sum * half;
}

namespace {

double adaptive_rec(const Fn& f, double a, double b, double whole, double rel_tol,
                    double abs_floor, int depth, double global_scale) {
  const double mid = 0.5 * (a + b);
  const double left = gl_panel(f, a, mid, 16);
  const double right = gl_panel(f, mid, b, 16);
  const double delta = left + right - whole;
  const double scale = std::max({std::abs(whole), global_scale, abs_floor});
  if (std::abs(delta) <= rel_tol * scale) return left + right;
  if (depth <= 0) {
    if (std::abs(delta) > 1e4 * rel_tol * scale)
      throw QuadratureFailure("adaptive quadrature: depth exhausted");
    return left + right;
  }
  return adaptive_rec(f, a, mid, left, rel_tol, abs_floor, depth - 1, global_scale) +
         adaptive_rec(f, mid, b, right, rel_tol, abs_floor, depth - 1, global_scale);
}

}  // namespace

double adaptive(const Fn& f, double a, double b, double rel_tol, double abs_floor,
                int max_depth) {
  if (!(b > a)) return 0.0;
  const double whole = gl_panel(f, a, b, 16);
  return adaptive_rec(f, a, b, whole, rel_tol, abs_floor, max_depth, std::abs(whole));
}

double epsilon_limit(const std::vector<double>& partial, double* err_estimate) {
  const int n = static_cast<int>(partial.size());
  if (n == 0) throw QuadratureFailure("epsilon_limit: empty sequence");
  if (n == 1) {
    if (err_estimate) *err_estimate = std::abs(partial[0]);
    return partial[0];
  }
  std::vector<double> prev_prev(partial.size() + 1, 0.0);  // eps_{-1} = 0
  std::vector<double> prev = partial;                      // eps_0
  double best = partial.back();
  double best_step = std::abs(partial[n - 1] - partial[n - 2]);
  for (int k = 1; k < n; ++k) {
    std::vector<double> cur(n - k);
    bool valid = true;
    for (int j = 0; j < n - k; ++j) {
      const double diff = prev[j + 1] - prev[j];
      if (diff == 0.0) {
        valid = false;
        break;
      }
      cur[j] = prev_prev[j + 1] + 1.0 / diff;
    }
    if (!valid) break;
    if (k % 2 == 0 && cur.size() >= 2) {
      const double step = std::abs(cur.back() - cur[cur.size() - 2]);
      if (step <= best_step) {
        best_step = step;
        best = cur.back();
      }
    }
    prev_prev = std::move(prev);
    prev = std::move(cur);
  }
  if (err_estimate) *err_estimate = best_step;
  return best;
}

double brent_root(const Fn& f, double a, double b, double xtol, int max_iter) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw BracketFailure("brent_root: no sign change in bracket");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = m; e = m;
    } else {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = m; e = m;
      }
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a; fc = fa; d = b - a; e = d;
    }
  }
  throw BracketFailure("brent_root: max iterations");
}

double tail_power_shifted(double m, double s, double k, double c, double R) {
  if (!(k * s > m + 1.0))
    throw NotIntegrable("tail_power_shifted: k*s must exceed m+1");
  const double u = c * std::pow(R, -s);
  if (!(std::abs(u) < 0.5))
    throw QuadratureFailure("tail_power_shifted: expansion parameter too large");
  const double base = std::pow(R, m + 1.0 - k * s);
  double coeff = 1.0;  // (-1)^j (k)_j / j! * u^j
  double rpow = 1.0;   // R^{-j s} folded into u^j already
  double sum = 0.0;
  for (int j = 0; j < 200; ++j) {
    const double expo = (k + j) * s - m - 1.0;
    const double term = coeff * base * rpow / expo;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && j > 1) break;
    coeff *= -(k + j) / (j + 1.0) * u;
  }
  return sum;
}

namespace {

// S(a,R) = \int_R^inf u^a sin u du and C(a,R) with cos, by-parts series:
//   S: cos R, -sin R, -cos R, +sin R, ... ;  C: -sin R, -cos R, +sin R, +cos R, ...
// with coefficients prod_{i<k}(a-i) R^{a-k}.
void osc_tail_pair(double a, double R, int terms, double* S, double* C) {
  const double cR = std::cos(R), sR = std::sin(R);
  double S_acc = 0.0, C_acc = 0.0;
  double coef = 1.0;
  double p = std::pow(R, a);
  for (int k = 0; k < terms; ++k) {
    double trig_s, trig_c;
    switch (k % 4) {
      case 0: trig_s = cR;  trig_c = -sR; break;
      case 1: trig_s = -sR; trig_c = -cR; break;
      case 2: trig_s = -cR; trig_c = sR;  break;
      default: trig_s = sR;  trig_c = cR;  break;
    }
    S_acc += coef * p * trig_s;
    C_acc += coef * p * trig_c;
    coef *= (a - k);
    p /= R;
    if (coef == 0.0) break;
  }
  *S = S_acc;
  *C = C_acc;
}

double fourier_impl(const Fn& g, double x, bool sine, const TailExpansion* tail,
                    double rel_tol) {
  if (!(x > 0.0)) throw QuadratureFailure("fourier transform: x must be positive");
  const double pi = 3.14159265358979323846;
  const double half_period = pi / x;
  const double first = sine ? half_period : 0.5 * half_period;

  auto integrand = [&](double r) {
    return g(r) * (sine ? std::sin(x * r) : std::cos(x * r));
  };

  // Switch to the analytic tail once z is past both the expansion validity
  // radius and the asymptotic regime x*z >> 1; if that would take too many
  // segments, accelerate the alternating segment series instead.
  bool use_tail = false;
  int n_seg = 64;
  if (tail && !tail->terms.empty()) {
    const double z_need = std::max(tail->valid_from, 48.0 * pi / x);
    const int seg_need = static_cast<int>(std::ceil((z_need - first) / half_period)) + 1;
    if (seg_need <= 2048) {
      n_seg = std::max(seg_need, 8);
      use_tail = true;
    }
  }

  std::vector<double> partial;
  partial.reserve(std::min(n_seg, 256) + 1);
  double acc = adaptive(integrand, 0.0, first, rel_tol, 0.0, 50);
  partial.push_back(acc);
  double z = first;
  double seg_scale = std::abs(acc);
  for (int k = 0; k < n_seg; ++k) {
    const double z2 = z + half_period;
    const double seg = gl_panel(integrand, z, z2, 24);
    acc += seg;
    if (!use_tail) partial.push_back(acc);
    seg_scale = std::max(seg_scale, std::abs(seg));
    z = z2;
    if (!use_tail && std::abs(seg) < 1e-18 * std::max(1.0, seg_scale) && k > 4) break;
  }

  if (use_tail) {
    double rest = 0.0;
    for (const auto& t : tail->terms) {
      double S, C;
      osc_tail_pair(t.power, x * z, 10, &S, &C);
      rest += t.amp * std::pow(x, -t.power - 1.0) * (sine ? S : C);
    }
    return acc + rest;
  }
  double err = 0.0;
  const double lim = epsilon_limit(partial, &err);
  if (err > 1e-7 * std::max(std::abs(lim), 1e-300) && err > 1e4 * rel_tol * seg_scale)
    throw QuadratureFailure("fourier transform: series acceleration did not converge");
  return lim;
}

}  // namespace

double osc_tail_sin(double a, double R, int terms) {
  double S, C;
  osc_tail_pair(a, R, terms, &S, &C);
  return S;
}

double osc_tail_cos(double a, double R, int terms) {
  double S, C;
  osc_tail_pair(a, R, terms, &S, &C);
  return C;
}

double fourier_sin(const Fn& g, double x, const TailExpansion* tail, double rel_tol) {
  return fourier_impl(g, x, true, tail, rel_tol);
}

double fourier_cos(const Fn& g, double x, const TailExpansion* tail, double rel_tol) {
  return fourier_impl(g, x, false, tail, rel_tol);
}

}  // namespace pointfrac::quad
