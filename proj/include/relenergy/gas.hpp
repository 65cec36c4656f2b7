#ifndef RELENERGY_GAS_HPP
#define RELENERGY_GAS_HPP

#include <cmath>
#include <cstddef>

#include "relenergy/errors.hpp"
#include "relenergy/geom.hpp"

namespace relenergy {

/// Polytropic pressure law p(rho) = rho^gamma with gamma > 1.
struct GasParams {
  double gamma;

  void validate() const {
    if (!(gamma > 1.0))
      throw domain_error("GasParams: adiabatic exponent must satisfy gamma > 1");
  }
};

/// Density/velocity pair at a point. rho >= 0, all components finite.
template <std::size_t D>
struct Primitive {
  double rho;
  Vec<D> vel;
};

using Primitive1 = Primitive<1>;
using Primitive2 = Primitive<2>;

/// Density and velocity bounds under which the flux-domination constant is
/// sought: r_lo <= rho, R <= r_hi and |u|, |U| <= v_max. For gamma < 2 the
/// lower density bound must be positive.
struct StateBox {
  double r_lo;
  double r_hi;
  double v_max;
  double gamma;

  void validate() const {
    GasParams{gamma}.validate();
    if (!(r_lo >= 0.0 && r_lo < r_hi && std::isfinite(r_hi)))
      throw domain_error("StateBox: need 0 <= r_lo < r_hi < inf");
    if (!(v_max > 0.0)) throw domain_error("StateBox: need v_max > 0");
    if (gamma < 2.0 && !(r_lo > 0.0))
      throw hypothesis_error("StateBox: gamma < 2 requires r_lo > 0");
  }
};

double pressure(double rho, const GasParams& g);

/// sqrt(gamma rho^(gamma-1)); used for CFL bounds and speed reporting.
double sound_speed(double rho, const GasParams& g);

/// Bregman divergence of r -> r^gamma/(gamma-1) between rho and R:
///   R^gamma - gamma/(gamma-1) rho R^(gamma-1) + rho^gamma/(gamma-1).
/// Nonnegative, zero iff rho == R.
double relative_potential(double R, double rho, const GasParams& g);

template <std::size_t D>
double energy_density(const Primitive<D>& s, const GasParams& g) {
  if (s.rho == 0.0) return 0.0;
  return 0.5 * s.rho * norm2(s.vel) + std::pow(s.rho, g.gamma) / (g.gamma - 1.0);
}

template <std::size_t D>
Vec<D> energy_flux(const Primitive<D>& s, const GasParams& g) {
  if (s.rho == 0.0) return Vec<D>{};
  const double h = 0.5 * s.rho * norm2(s.vel) +
                   g.gamma / (g.gamma - 1.0) * std::pow(s.rho, g.gamma);
  return h * s.vel;
}

/// Relative energy density between a strong state (R, U) and a weak state
/// (rho, u): kinetic part plus the pressure-potential Bregman divergence.
template <std::size_t D>
double rel_energy_density(const Primitive<D>& strong, const Primitive<D>& weak,
                          const GasParams& g) {
  const Vec<D> dv = weak.vel - strong.vel;
  return 0.5 * weak.rho * norm2(dv) + relative_potential(strong.rho, weak.rho, g);
}

/// Relative energy flux between (R, U) and (rho, u):
///   1/2 rho |u-U|^2 u - gamma/(gamma-1) (R^(g-1) - rho^(g-1)) rho u
///   + (R^gamma - rho^gamma) U.
template <std::size_t D>
Vec<D> rel_energy_flux(const Primitive<D>& strong, const Primitive<D>& weak,
                       const GasParams& g) {
  const double gam = g.gamma;
  const double R = strong.rho, rho = weak.rho;
  const Vec<D> dv = weak.vel - strong.vel;
  const double kin = 0.5 * rho * norm2(dv);
  const double press_jump =
      gam / (gam - 1.0) * (std::pow(R, gam - 1.0) - std::pow(rho, gam - 1.0));
  const double pot_jump = std::pow(R, gam) - std::pow(rho, gam);
  Vec<D> b{};
  for (std::size_t i = 0; i < D; ++i)
    b[i] = kin * weak.vel[i] - press_jump * rho * weak.vel[i] + pot_jump * strong.vel[i];
  return b;
}

/// Numerical realization of the flux-domination constant: the maximum of
/// |flux| / density over a tensor grid in the box (densities, velocity
/// magnitudes, collinear and anti-collinear orientations), times a 1.05
/// safety factor. The ratio depends on velocities only through magnitudes
/// and relative orientation, so the 1-D orientation pair covers every
/// dimension; `dim` is kept for interface symmetry.
double domination_constant_grid(const StateBox& box, int dim, int grid_n,
                                unsigned workers = 0);

/// Closed-form upper bound from the quadratic-lower-bound/mean-value chain:
///   C = 2 v + gamma/(gamma-1) max(1, r_hi K / (2c)),
///   K = (gamma-1)^2 M^2,  M = max(r_lo^(g-2), r_hi^(g-2)),
///   c = gamma/2 min(r_lo^(g-2), r_hi^(g-2)).
/// Requires r_lo > 0; dominates the grid constant without its safety factor.
double domination_constant_analytic(const StateBox& box);

/// The quadratic-lower-bound coefficient c used in the analytic chain:
/// relative_potential >= c (R - rho)^2 on the box (needs r_lo > 0).
double potential_convexity_bound(const StateBox& box);

} // namespace relenergy

#endif
