#ifndef RELENERGY_SOLVER_HPP
#define RELENERGY_SOLVER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "relenergy/errors.hpp"
#include "relenergy/gas.hpp"

namespace relenergy {

enum class Bc { periodic, copy_out };

std::string to_string(Bc bc);
Bc bc_from_string(const std::string& s);

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 0;
  Bc bc = Bc::periodic;

  void validate() const {
    if (n_cells < 4) throw domain_error("Grid1D: need n_cells >= 4");
    if (!(x_max > x_min)) throw domain_error("Grid1D: need x_max > x_min");
  }

  double dx() const { return (x_max - x_min) / n_cells; }
  double center(int i) const { return x_min + (i + 0.5) * dx(); }
};

/// Conserved pair (density, momentum density). Vacuum carries no momentum.
struct ConservedState {
  double rho = 0.0;
  double mom = 0.0;
};

/// Velocity reconstruction with a vacuum guard.
inline double velocity(const ConservedState& s, double vacuum_eps) {
  return s.rho > vacuum_eps ? s.mom / s.rho : 0.0;
}

struct Field {
  Grid1D grid;
  std::vector<ConservedState> cells;
  double time = 0.0;
};

struct SolverConfig {
  double cfl = 0.45;
  double gamma = 2.0;
  double vacuum_eps = 1e-12;
  double t_end = 1.0;
  double snapshot_dt = 0.1;

  void validate() const {
    GasParams{gamma}.validate();
    if (!(cfl > 0.0 && cfl <= 0.5))
      throw domain_error("SolverConfig: cfl must lie in (0, 0.5]");
    if (!(vacuum_eps >= 0.0)) throw domain_error("SolverConfig: vacuum_eps < 0");
    if (!(t_end > 0.0)) throw domain_error("SolverConfig: t_end must be positive");
    if (!(snapshot_dt > 0.0))
      throw domain_error("SolverConfig: snapshot_dt must be positive");
  }
};

/// Aggregates tracked across a whole run (every step, not just snapshots).
struct RunStats {
  double max_energy_production = 0.0; // max over cells and steps of P_i
  double max_cell_energy = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
  double max_abs_vel = 0.0;
  double mass_drift_rel = 0.0;     // |m(t) - m(0)| / |m(0)|, worst over run
  double momentum_drift = 0.0;     // absolute, momentum may start at zero
  long long n_steps = 0;
};

struct Trajectory {
  std::vector<Field> snapshots;
  SolverConfig config;
  RunStats stats;
};

/// Exact flux (rho u, rho u^2 + rho^gamma) of the conserved pair.
void physical_flux(const ConservedState& s, const GasParams& g, double vacuum_eps,
                   double& mass_flux, double& mom_flux);

/// Local Lax-Friedrichs interface flux and wave speed:
///   Fhat = (F(L) + F(R))/2 - lambda (U_R - U_L)/2,
///   lambda = max(|u_L| + c_L, |u_R| + c_R).
struct InterfaceFlux {
  double mass;
  double mom;
  double wave_speed;
};

InterfaceFlux llf_interface_flux(const ConservedState& left,
                                 const ConservedState& right, const GasParams& g,
                                 double vacuum_eps = 1e-12);

/// One forward-Euler conservative step. dt is cfl dx / max lambda, clipped by
/// max_dt. Returns per-cell discrete energy production
///   P_i = (E_i^{n+1} - E_i^n)/dt + (Qhat_{i+1/2} - Qhat_{i-1/2})/dx
/// with the energy flux Qhat paired to the mass/momentum flux through the
/// same wave speed.
struct StepResult {
  Field next;
  std::vector<double> production;
  double dt;
  double max_wave_speed;
};

StepResult step(const Field& f, const SolverConfig& cfg,
                double max_dt = 1e300);

/// March to t_end recording snapshots at multiples of snapshot_dt (steps are
/// clipped to land exactly on snapshot times and on t_end).
Trajectory simulate(const Field& init, const SolverConfig& cfg);

double total_mass(const Field& f);
double total_momentum(const Field& f);
double total_energy(const Field& f, const GasParams& g, double vacuum_eps = 1e-12);

/// Smallest box containing every cell state of the run (all snapshots).
StateBox realized_state_box(const Trajectory& t);

} // namespace relenergy

#endif
