#ifndef RELENERGY_CUTOFF_HPP
#define RELENERGY_CUTOFF_HPP

#include <cmath>
#include <cstddef>

#include "relenergy/errors.hpp"
#include "relenergy/geom.hpp"

namespace relenergy {

/// C1 radial bump profile on [0, inf): 1 on [0, eta/2], cubic Hermite
/// transition on (eta/2, eta), 0 from eta on. q(eta/2) = 1 and q(eta) = 0
/// inclusive; q' vanishes at both match points.
struct RadialProfile {
  double eta;

  double value(double s) const {
    if (s <= 0.5 * eta) return 1.0;
    if (s >= eta) return 0.0;
    const double t = 2.0 * s / eta - 1.0;
    return 1.0 - t * t * (3.0 - 2.0 * t);
  }

  double derivative(double s) const {
    if (s <= 0.5 * eta || s >= eta) return 0.0;
    const double t = 2.0 * s / eta - 1.0;
    return -(6.0 * t - 6.0 * t * t) * (2.0 / eta);
  }

  /// True when the whole interval [s - pad, s + pad] lies inside a single
  /// cubic piece, i.e. third derivatives are defined on the stencil.
  bool stencil_clear(double s, double pad) const {
    const double k0 = 0.5 * eta, k1 = eta;
    return (s + pad < k0) || (s - pad > k1) || (s - pad > k0 && s + pad < k1);
  }
};

/// Radially symmetric, radially non-increasing C1 bump centred at a point,
/// identically 1 on the half-radius ball and supported in the eta-ball.
template <std::size_t D>
struct RadialBump {
  Vec<D> center;
  double eta;

  void validate() const {
    if (!(eta > 0.0)) throw domain_error("RadialBump: eta must be positive");
  }

  RadialProfile profile() const { return RadialProfile{eta}; }
};

template <std::size_t D>
double bump_eval(const RadialBump<D>& b, const Vec<D>& x) {
  return b.profile().value(norm(x - b.center));
}

/// The bump transported inward at constant speed: value depends on (x, t)
/// only through |x - x0| + C t, so the support shrinks to nothing at
/// t = eta / C.
template <std::size_t D>
struct TransportedCutoff {
  RadialBump<D> bump;
  double speed;

  void validate() const {
    bump.validate();
    if (!(speed > 0.0)) throw domain_error("TransportedCutoff: speed must be positive");
  }

  double radius(const Vec<D>& x) const { return norm(x - bump.center); }

  double value(const Vec<D>& x, double t) const {
    return bump.profile().value(radius(x) + speed * t);
  }

  double dt(const Vec<D>& x, double t) const {
    return speed * bump.profile().derivative(radius(x) + speed * t);
  }

  /// Analytic spatial gradient; zero at the centre (radial symmetry makes
  /// the one-sided limits agree only when the profile is flat there, but
  /// the centre is a null set and every use integrates against it).
  Vec<D> gradient(const Vec<D>& x, double t) const {
    const double r = radius(x);
    Vec<D> g{};
    if (r == 0.0) return g;
    const double qp = bump.profile().derivative(r + speed * t);
    for (std::size_t i = 0; i < D; ++i)
      g[i] = qp * (x[i] - bump.center[i]) / r;
    return g;
  }

  /// Support of the cutoff at time t is the closed ball of this radius
  /// (empty when negative).
  double support_radius(double t) const { return bump.eta - speed * t; }
};

using TransportedCutoff1 = TransportedCutoff<1>;
using TransportedCutoff2 = TransportedCutoff<2>;

template <std::size_t D>
double cutoff_eval(const TransportedCutoff<D>& c, const Vec<D>& x, double t) {
  return c.value(x, t);
}

/// Centered finite-difference evaluation of the transport operator
///   dphi/dt - C (x-x0)/|x-x0| . grad phi
/// with step h. Exactly zero in the continuum; the discrete value is
/// O(h^2) wherever the stencil stays inside one cubic piece.
template <std::size_t D>
double transport_residual(const TransportedCutoff<D>& c, const Vec<D>& x,
                          double t, double h) {
  const double r = c.radius(x);
  if (!(r > h))
    throw undefined_direction_error(
        "transport_residual: need |x - x0| > h for a radial direction");
  const double dphi_dt = (c.value(x, t + h) - c.value(x, t - h)) / (2.0 * h);
  double advect = 0.0;
  for (std::size_t i = 0; i < D; ++i) {
    Vec<D> xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double d = (c.value(xp, t) - c.value(xm, t)) / (2.0 * h);
    advect += (x[i] - c.bump.center[i]) / r * d;
  }
  return dphi_dt - c.speed * advect;
}

/// Result of the pointwise sign check a dphi/dt + b . grad phi <= 0.
/// `applicable` is false when the precondition |b| <= C a fails.
struct SignCheck {
  double value;
  bool applicable;
};

template <std::size_t D>
SignCheck sign_condition(double a, const Vec<D>& b, const TransportedCutoff<D>& c,
                         const Vec<D>& x, double t) {
  const double val = a * c.dt(x, t) + dot(b, c.gradient(x, t));
  const bool ok = a >= 0.0 && norm(b) <= c.speed * a * (1.0 + 1e-9);
  return SignCheck{val, ok};
}

} // namespace relenergy

#endif
