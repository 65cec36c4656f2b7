#include "relenergy/solver.hpp"

#include <algorithm>
#include <cmath>

namespace relenergy {

std::string to_string(Bc bc) {
  return bc == Bc::periodic ? "periodic" : "copy-out";
}

Bc bc_from_string(const std::string& s) {
  if (s == "periodic") return Bc::periodic;
  if (s == "copy-out") return Bc::copy_out;
  throw domain_error("unknown boundary condition: " + s);
}

void physical_flux(const ConservedState& s, const GasParams& g, double vacuum_eps,
                   double& mass_flux, double& mom_flux) {
  const double u = velocity(s, vacuum_eps);
  mass_flux = s.rho * u;
  mom_flux = s.rho * u * u + std::pow(s.rho, g.gamma);
}

namespace {

double cell_energy(const ConservedState& s, const GasParams& g, double vacuum_eps) {
  const double u = velocity(s, vacuum_eps);
  if (s.rho <= vacuum_eps) return 0.0;
  return 0.5 * s.rho * u * u + std::pow(s.rho, g.gamma) / (g.gamma - 1.0);
}

double cell_energy_flux(const ConservedState& s, const GasParams& g,
                        double vacuum_eps) {
  const double u = velocity(s, vacuum_eps);
  if (s.rho <= vacuum_eps) return 0.0;
  return (0.5 * s.rho * u * u +
          g.gamma / (g.gamma - 1.0) * std::pow(s.rho, g.gamma)) *
         u;
}

int wrap(int i, int n) { return (i % n + n) % n; }

const ConservedState& neighbor(const Field& f, int i) {
  const int n = f.grid.n_cells;
  if (f.grid.bc == Bc::periodic) return f.cells[wrap(i, n)];
  return f.cells[std::clamp(i, 0, n - 1)];
}

} // namespace

InterfaceFlux llf_interface_flux(const ConservedState& left,
                                 const ConservedState& right, const GasParams& g,
                                 double vacuum_eps) {
  const double ul = velocity(left, vacuum_eps);
  const double ur = velocity(right, vacuum_eps);
  const double lam = std::max(std::abs(ul) + sound_speed(left.rho, g),
                              std::abs(ur) + sound_speed(right.rho, g));
  double fl_m, fl_p, fr_m, fr_p;
  physical_flux(left, g, vacuum_eps, fl_m, fl_p);
  physical_flux(right, g, vacuum_eps, fr_m, fr_p);
  return InterfaceFlux{0.5 * (fl_m + fr_m) - 0.5 * lam * (right.rho - left.rho),
                       0.5 * (fl_p + fr_p) - 0.5 * lam * (right.mom - left.mom),
                       lam};
}

StepResult step(const Field& f, const SolverConfig& cfg, double max_dt) {
  cfg.validate();
  f.grid.validate();
  const GasParams g{cfg.gamma};
  const int n = f.grid.n_cells;
  const double dx = f.grid.dx();

  // Interface i sits between cells i-1 and i; n+1 interfaces.
  std::vector<InterfaceFlux> flux(n + 1);
  std::vector<double> eflux(n + 1);
  double lam_max = 0.0;
  for (int i = 0; i <= n; ++i) {
    const ConservedState& L = neighbor(f, i - 1);
    const ConservedState& R = neighbor(f, i);
    flux[i] = llf_interface_flux(L, R, g, cfg.vacuum_eps);
    eflux[i] = 0.5 * (cell_energy_flux(L, g, cfg.vacuum_eps) +
                      cell_energy_flux(R, g, cfg.vacuum_eps)) -
               0.5 * flux[i].wave_speed *
                   (cell_energy(R, g, cfg.vacuum_eps) - cell_energy(L, g, cfg.vacuum_eps));
    lam_max = std::max(lam_max, flux[i].wave_speed);
  }
  if (lam_max <= 0.0) lam_max = 1e-300; // all-vacuum field: any dt works
  const double dt = std::min(cfg.cfl * dx / lam_max, max_dt);

  StepResult out;
  out.dt = dt;
  out.max_wave_speed = lam_max;
  out.next.grid = f.grid;
  out.next.time = f.time + dt;
  out.next.cells.resize(n);
  out.production.resize(n);
  for (int i = 0; i < n; ++i) {
    ConservedState s = f.cells[i];
    s.rho -= dt / dx * (flux[i + 1].mass - flux[i].mass);
    s.mom -= dt / dx * (flux[i + 1].mom - flux[i].mom);
    if (s.rho < 0.0 && s.rho > -1e-15) s.rho = 0.0; // clamp roundoff-only undershoot
    if (s.rho <= cfg.vacuum_eps) s.mom = 0.0;       // vacuum carries no momentum
    if (!std::isfinite(s.rho) || !std::isfinite(s.mom))
      throw blowup_error("step: non-finite state in cell " + std::to_string(i), i,
                         out.next.time);
    const double e_old = cell_energy(f.cells[i], g, cfg.vacuum_eps);
    const double e_new = cell_energy(s, g, cfg.vacuum_eps);
    out.production[i] = (e_new - e_old) / dt + (eflux[i + 1] - eflux[i]) / dx;
    out.next.cells[i] = s;
  }
  return out;
}

Trajectory simulate(const Field& init, const SolverConfig& cfg) {
  cfg.validate();
  init.grid.validate();
  const GasParams g{cfg.gamma};

  Trajectory traj;
  traj.config = cfg;
  traj.snapshots.push_back(init);

  RunStats& st = traj.stats;
  st.min_rho = 1e300;
  const double mass0 = total_mass(init);
  const double mom0 = total_momentum(init);
  auto absorb = [&](const Field& f) {
    for (const auto& c : f.cells) {
      st.min_rho = std::min(st.min_rho, c.rho);
      st.max_rho = std::max(st.max_rho, c.rho);
      st.max_abs_vel = std::max(st.max_abs_vel, std::abs(velocity(c, cfg.vacuum_eps)));
      st.max_cell_energy = std::max(st.max_cell_energy, cell_energy(c, g, cfg.vacuum_eps));
    }
  };
  absorb(init);

  Field f = init;
  const double rel = 1e-12 * std::max(1.0, cfg.t_end);
  double target = 0.0;
  for (int k = 1; target < cfg.t_end - rel; ++k) {
    target = std::min(k * cfg.snapshot_dt, cfg.t_end);
    while (f.time < target - rel) {
      StepResult r = step(f, cfg, target - f.time);
      f = std::move(r.next);
      ++st.n_steps;
      for (double p : r.production)
        st.max_energy_production = std::max(st.max_energy_production, p);
      absorb(f);
      if (mass0 != 0.0)
        st.mass_drift_rel = std::max(
            st.mass_drift_rel, std::abs(total_mass(f) - mass0) / std::abs(mass0));
      st.momentum_drift =
          std::max(st.momentum_drift, std::abs(total_momentum(f) - mom0));
    }
    f.time = target; // dt was clipped to land here; kill accumulated roundoff
    traj.snapshots.push_back(f);
  }
  return traj;
}

double total_mass(const Field& f) {
  double m = 0.0;
  for (const auto& c : f.cells) m += c.rho;
  return m * f.grid.dx();
}

double total_momentum(const Field& f) {
  double m = 0.0;
  for (const auto& c : f.cells) m += c.mom;
  return m * f.grid.dx();
}

double total_energy(const Field& f, const GasParams& g, double vacuum_eps) {
  double e = 0.0;
  for (const auto& c : f.cells) e += cell_energy(c, g, vacuum_eps);
  return e * f.grid.dx();
}

StateBox realized_state_box(const Trajectory& t) {
  double r_lo = 1e300, r_hi = 0.0, v = 0.0;
  if (t.stats.n_steps > 0) {
    // Stats cover every step, not just the recorded snapshots.
    r_lo = t.stats.min_rho;
    r_hi = t.stats.max_rho;
    v = t.stats.max_abs_vel;
  } else {
    for (const auto& snap : t.snapshots)
      for (const auto& c : snap.cells) {
        r_lo = std::min(r_lo, c.rho);
        r_hi = std::max(r_hi, c.rho);
        v = std::max(v, std::abs(velocity(c, t.config.vacuum_eps)));
      }
  }
  // Widen degenerate boxes so the StateBox invariants hold.
  if (!(r_hi > r_lo)) r_hi = r_lo + std::max(1e-9, 1e-9 * r_lo);
  if (!(v > 0.0)) v = 1e-9;
  return StateBox{r_lo, r_hi, v, t.config.gamma};
}

} // namespace relenergy
