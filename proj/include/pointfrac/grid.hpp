#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <optional>

#include "pointfrac/errors.hpp"
#include "pointfrac/params.hpp"

namespace pointfrac {

using Complex = std::complex<double>;

struct GridSpec {
  double r_min = 1e-6;
  double r_max = 1e6;
  int count = 4096;

  bool operator==(const GridSpec&) const = default;
};

double surface_measure(int d);  // omega_{d-1} = 2 pi^{d/2} / Gamma(d/2)

// Momentum-space radial quadrature grid: a small Gauss panel on [0, r_min]
// followed by log-spaced Gauss panels up to r_max.  Weights carry the
// d-dependent surface factor omega_{d-1} r^{d-1}, so sums against samples
// realise integrals over R^d of radial functions.
class RadialGrid {
 public:
  RadialGrid(const GridSpec& spec, int dimension);

  const Eigen::ArrayXd& nodes() const { return nodes_; }
  const Eigen::ArrayXd& weights() const { return weights_; }       // d-dim measure
  const Eigen::ArrayXd& base_weights() const { return base_w_; }   // plain dr
  int dimension() const { return d_; }
  const GridSpec& spec() const { return spec_; }
  Eigen::Index size() const { return nodes_.size(); }

  bool compatible(const RadialGrid& other) const {
    return d_ == other.d_ && spec_ == other.spec_;
  }

 private:
  Eigen::ArrayXd nodes_, weights_, base_w_;
  int d_;
  GridSpec spec_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(const GridSpec& spec, int dimension);

// f(r) ~ amplitude * r^{-exponent} for r beyond the grid.
struct TailDescriptor {
  Complex amplitude;
  double exponent;
};

class RadialFunction {
 public:
  RadialFunction(GridPtr grid, Eigen::ArrayXcd values,
                 std::optional<TailDescriptor> tail = std::nullopt,
                 bool validate_tail = true);

  static RadialFunction from_function(GridPtr grid,
                                      const std::function<Complex(double)>& fn,
                                      std::optional<TailDescriptor> tail = std::nullopt,
                                      bool validate_tail = true);

  const RadialGrid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }
  const Eigen::ArrayXcd& values() const { return values_; }
  const std::optional<TailDescriptor>& tail() const { return tail_; }

 private:
  GridPtr grid_;
  Eigen::ArrayXcd values_;
  std::optional<TailDescriptor> tail_;
};

// Pointwise multiplier m(r) with its asymptotic power behaviour
// m(r) ~ tail_amplitude * r^{tail_power}, used to transport tail descriptors.
struct Multiplier {
  std::function<double(double)> fn;
  double tail_amplitude = 1.0;
  double tail_power = 0.0;
};

Complex inner_product(const RadialFunction& f, const RadialFunction& g);
double norm_l2(const RadialFunction& f);
Complex eval_at_zero(const RadialFunction& f);
Complex eval_at_x(const RadialFunction& f, double x);
double sobolev_norm(const RadialFunction& f, double s);
RadialFunction multiplier_apply(const RadialFunction& f, const Multiplier& m);

// Common multipliers.
Multiplier symbol_homogeneous(double s, double lambda);             // |p|^s + lambda
Multiplier resolvent_homogeneous(double s, double lambda);          // (|p|^s + lambda)^{-1}
Multiplier symbol_inhomogeneous(double s, double lambda);           // (p^2 + lambda)^{s/2}
Multiplier resolvent_inhomogeneous(double s, double lambda);        // (p^2 + lambda)^{-s/2}

}  // namespace pointfrac
