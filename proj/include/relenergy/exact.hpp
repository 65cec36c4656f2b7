#ifndef RELENERGY_EXACT_HPP
#define RELENERGY_EXACT_HPP

#include <cstdint>
#include <memory>

#include "relenergy/gas.hpp"
#include "relenergy/solver.hpp"

namespace relenergy {

/// Strong-solution provider for the 1-D compressible experiments: either an
/// exact constant state or a fine-grid reference run evaluated by piecewise
/// linear interpolation in x and t.
class StrongSolution1D {
public:
  static StrongSolution1D constant(double rho, double vel);

  /// Run the solver at refine-times the resolution of `init` (cell centres
  /// prolongated by linear interpolation) and interpolate the result. The
  /// gradient monitor max |du/dx| over the run must stay below five times
  /// its initial value, else the solution is flagged not smooth.
  static StrongSolution1D reference(const Field& init, int refine,
                                    const SolverConfig& cfg);

  bool is_constant() const { return constant_; }
  bool smooth() const { return smooth_; }
  double gradient_monitor_initial() const { return monitor_initial_; }
  double gradient_monitor_max() const { return monitor_max_; }

  /// Primitive state (density, velocity) at a point.
  Primitive1 eval(double x, double t) const;

  /// Spatial derivatives (d rho/dx, d u/dx) by centered differences on the
  /// underlying field (exact zero for constants).
  void eval_gradient(double x, double t, double& drho_dx, double& du_dx) const;

  const Trajectory& trajectory() const; // reference kind only

private:
  StrongSolution1D() = default;
  bool constant_ = true;
  double rho_ = 1.0;
  double vel_ = 0.0;
  bool smooth_ = true;
  double monitor_initial_ = 0.0;
  double monitor_max_ = 0.0;
  double vacuum_eps_ = 1e-12;
  std::shared_ptr<const Trajectory> traj_;

  void interp_cell(double x, double t, double& rho, double& u, int* cell = nullptr) const;
};

enum class IncompressibleKind { rest, shear, vortex, translating_vortex };

/// Closed-form 2-D incompressible Euler solutions. All members satisfy the
/// equations pointwise:
///  - rest: U = V (a constant), P = 0;
///  - shear: U = (f(y), 0), P = 0, with f a C1 profile;
///  - vortex: U = (-y, x) g(r^2), g(w) = (1-w)^2 for w <= 1 else 0,
///    P(r) = (1 - (1-r^2)^5)/10 inside the unit disc, 1/10 outside;
///  - translating_vortex: the vortex shifted by a uniform velocity V.
class IncompressibleSolution2D {
public:
  static IncompressibleSolution2D rest(Vec2 background = {0.0, 0.0});
  /// Shear profile f(y) = base y + bump supported on [bump_lo, bump_hi]
  /// (zero-width interval for a pure linear profile).
  static IncompressibleSolution2D shear(double base_slope, double bump_amp = 0.0,
                                        double bump_lo = 0.0, double bump_hi = 0.0);
  static IncompressibleSolution2D vortex();
  static IncompressibleSolution2D translating_vortex(Vec2 translation);

  IncompressibleKind kind() const { return kind_; }

  /// Velocity and pressure at (x, t).
  void eval(const Vec2& x, double t, Vec2& velocity, double& pressure) const;
  Vec2 velocity(const Vec2& x, double t) const;

  /// Spectral norm of the symmetric velocity gradient, analytic.
  double sym_grad_norm(const Vec2& x, double t) const;

  /// True when a finite-difference stencil of half-width pad around x stays
  /// clear of the solution's C1-matching curves (profile support edges),
  /// where higher derivatives jump and FD error bounds do not apply.
  bool stencil_clear(const Vec2& x, double t, double pad) const;

private:
  IncompressibleKind kind_ = IncompressibleKind::rest;
  Vec2 background_{0.0, 0.0};
  double base_slope_ = 0.0;
  double bump_amp_ = 0.0;
  double bump_lo_ = 0.0;
  double bump_hi_ = 0.0;

  double shear_profile(double y) const;
  double shear_profile_slope(double y) const;
};

/// Max over `samples` random points (and times) of the pointwise momentum
/// residual |dU/dt + (U.grad)U + grad P| and of |div U|, all derivatives by
/// centered differences with step 1e-4. Exact solutions stay below 1e-6.
double residual_check(const IncompressibleSolution2D& s, int samples,
                      std::uint64_t seed = 0);

} // namespace relenergy

#endif
