#ifndef RELENERGY_DIAGNOSTICS_HPP
#define RELENERGY_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "relenergy/cutoff.hpp"
#include "relenergy/exact.hpp"
#include "relenergy/gas.hpp"
#include "relenergy/solver.hpp"

namespace relenergy {

/// Time series of the localised relative energy.
struct RelEnergySeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string cutoff_description;
  double gamma = 0.0;
};

/// Both sides of the localized relative energy inequality, per snapshot.
/// residual = rhs - lhs; nonnegative up to discretization error.
struct GronwallReport {
  std::vector<double> times;
  std::vector<double> lhs;       // localized relative energy at tau
  std::vector<double> rhs;       // flux terms + Gronwall term up to tau
  std::vector<double> residual;  // rhs - lhs
  std::vector<double> c1_norm_trace;
  std::vector<double> gronwall_term; // accumulated factor * int ||.|| E dt
  double factor = 2.0;
};

/// Midpoint quadrature over cells of phi(x_i, t) * A(strong(x_i,t); weak_i).
/// The cutoff support must be covered by the grid.
double localized_relative_energy(const Field& weak, const StrongSolution1D& strong,
                                 const TransportedCutoff1& cutoff,
                                 const GasParams& g);

/// Evaluate the compressible localized relative energy inequality along a
/// trajectory: for each snapshot time tau,
///   lhs  = E_rel(tau),
///   rhs  = int_0^tau [ dphi/dt A + dphi/dx B ] dx dt
///        + factor int_0^tau ||strong(t)||_C1 E_rel(t) dt
/// with trapezoid time integrals over the snapshots, analytic cutoff
/// derivatives, and the C1 norm taken as max over supp phi(., t) of
/// |U| + |dU/dx| + |R| + |dR/dx|. Initial data must agree on supp phi(., 0)
/// to match_tol.
GronwallReport gronwall_evaluate(const Trajectory& weak,
                                 const StrongSolution1D& strong,
                                 const TransportedCutoff1& cutoff,
                                 const GasParams& g, double factor = 2.0,
                                 double match_tol = 1e-10);

/// Both sides of the incompressible localized relative energy inequality at
/// time tau: tensor midpoint quadrature with quad_n^2 points over the cutoff
/// bounding box, trapezoid in time with time_slices intervals. The two
/// solutions must coincide on supp phi(., 0).
struct IncompressiblePair {
  double lhs;
  double rhs;
};

IncompressiblePair incompressible_gronwall(const IncompressibleSolution2D& weakish,
                                           const IncompressibleSolution2D& strong,
                                           const TransportedCutoff2& cutoff,
                                           double tau, int quad_n,
                                           int time_slices = 64);

/// Largest |x_i| over cells where |rho_i - rho_bg| + |mom_i - mom_bg|
/// exceeds the threshold; 0 when no cell does.
double support_radius(const Field& f, double rho_bg, double mom_bg,
                      double threshold);

struct SpeedFit {
  double speed;
  double intercept;
};

/// Least-squares line through (snapshot time, support radius). Snapshots
/// before fit_t_min are ignored; at least 3 must remain.
SpeedFit propagation_speed(const Trajectory& t, double rho_bg, double mom_bg,
                           double threshold, double fit_t_min = 0.0);

/// Max discrete energy production over the run, normalized by the max cell
/// energy. Nonpositive (up to roundoff) for an energy-dissipative scheme.
double admissibility_report(const Trajectory& t);

/// Report writers (formats fixed by the external interface).
std::string gronwall_csv(const GronwallReport& r);
std::string finite_speed_csv(const std::vector<double>& times,
                             const std::vector<double>& radii,
                             const SpeedFit& fit, double c_bound);

} // namespace relenergy

#endif
