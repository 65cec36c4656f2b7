#include "relenergy/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "relenergy/trajectory_io.hpp"

namespace relenergy {

namespace {

void require_covered(const Grid1D& grid, const TransportedCutoff1& cutoff,
                     double t) {
  const double r = cutoff.support_radius(t);
  if (r <= 0.0) return; // empty support needs no coverage
  const double x0 = cutoff.bump.center[0];
  if (x0 - r < grid.x_min || x0 + r > grid.x_max)
    throw coverage_error("cutoff support exceeds the grid domain");
}

Primitive1 cell_primitive(const ConservedState& c, double vacuum_eps) {
  return Primitive1{c.rho, {velocity(c, vacuum_eps)}};
}

} // namespace

double localized_relative_energy(const Field& weak, const StrongSolution1D& strong,
                                 const TransportedCutoff1& cutoff,
                                 const GasParams& g) {
  cutoff.validate();
  require_covered(weak.grid, cutoff, weak.time);
  const double dx = weak.grid.dx();
  const double t = weak.time;
  double sum = 0.0;
  for (int i = 0; i < weak.grid.n_cells; ++i) {
    const Vec1 x{weak.grid.center(i)};
    const double phi = cutoff.value(x, t);
    if (phi == 0.0) continue;
    const Primitive1 s = strong.eval(x[0], t);
    const Primitive1 w = cell_primitive(weak.cells[i], 1e-12);
    sum += phi * rel_energy_density(s, w, g);
  }
  return sum * dx;
}

namespace {

// max over supp phi(., t) of |U| + |dU/dx| + |R| + |dR/dx|.
double c1_norm_on_support(const Field& weak, const StrongSolution1D& strong,
                          const TransportedCutoff1& cutoff, double t) {
  double m = 0.0;
  for (int i = 0; i < weak.grid.n_cells; ++i) {
    const Vec1 x{weak.grid.center(i)};
    if (cutoff.value(x, t) <= 0.0) continue;
    const Primitive1 s = strong.eval(x[0], t);
    double drdx, dudx;
    strong.eval_gradient(x[0], t, drdx, dudx);
    m = std::max(m, std::abs(s.vel[0]) + std::abs(dudx) + std::abs(s.rho) +
                        std::abs(drdx));
  }
  return m;
}

// Quadrature of dphi/dt * A + dphi/dx * B over the grid at one snapshot.
double flux_integrand(const Field& weak, const StrongSolution1D& strong,
                      const TransportedCutoff1& cutoff, const GasParams& g) {
  const double dx = weak.grid.dx();
  const double t = weak.time;
  double sum = 0.0;
  for (int i = 0; i < weak.grid.n_cells; ++i) {
    const Vec1 x{weak.grid.center(i)};
    const double dphi_dt = cutoff.dt(x, t);
    const Vec1 grad = cutoff.gradient(x, t);
    if (dphi_dt == 0.0 && grad[0] == 0.0) continue;
    const Primitive1 s = strong.eval(x[0], t);
    const Primitive1 w = cell_primitive(weak.cells[i], 1e-12);
    sum += dphi_dt * rel_energy_density(s, w, g) +
           grad[0] * rel_energy_flux(s, w, g)[0];
  }
  return sum * dx;
}

} // namespace

GronwallReport gronwall_evaluate(const Trajectory& weak,
                                 const StrongSolution1D& strong,
                                 const TransportedCutoff1& cutoff,
                                 const GasParams& g, double factor,
                                 double match_tol) {
  cutoff.validate();
  if (weak.snapshots.empty()) throw insufficient_data_error("empty trajectory");

  // Hypothesis: matched initial data on supp phi(., 0).
  const Field& f0 = weak.snapshots.front();
  require_covered(f0.grid, cutoff, f0.time);
  for (int i = 0; i < f0.grid.n_cells; ++i) {
    const Vec1 x{f0.grid.center(i)};
    if (cutoff.value(x, f0.time) <= 0.0) continue;
    const Primitive1 s = strong.eval(x[0], f0.time);
    const double drho = std::abs(f0.cells[i].rho - s.rho);
    const double dmom = std::abs(f0.cells[i].mom - s.rho * s.vel[0]);
    if (drho + dmom > match_tol)
      throw hypothesis_error(
          "gronwall_evaluate: initial data differ on supp phi(.,0) by " +
          format_double(drho + dmom));
  }

  GronwallReport rep;
  rep.factor = factor;
  const int ns = static_cast<int>(weak.snapshots.size());
  rep.times.resize(ns);
  rep.lhs.resize(ns);
  rep.rhs.resize(ns);
  rep.residual.resize(ns);
  rep.c1_norm_trace.resize(ns);
  rep.gronwall_term.resize(ns);

  std::vector<double> flux(ns);
  for (int k = 0; k < ns; ++k) {
    const Field& f = weak.snapshots[k];
    require_covered(f.grid, cutoff, f.time);
    rep.times[k] = f.time;
    rep.lhs[k] = localized_relative_energy(f, strong, cutoff, g);
    rep.c1_norm_trace[k] = c1_norm_on_support(f, strong, cutoff, f.time);
    flux[k] = flux_integrand(f, strong, cutoff, g);
  }

  double flux_acc = 0.0, gron_acc = 0.0;
  rep.rhs[0] = 0.0;
  rep.gronwall_term[0] = 0.0;
  rep.residual[0] = rep.rhs[0] - rep.lhs[0];
  for (int k = 1; k < ns; ++k) {
    const double dt = rep.times[k] - rep.times[k - 1];
    flux_acc += 0.5 * dt * (flux[k - 1] + flux[k]);
    gron_acc += 0.5 * dt *
                (rep.c1_norm_trace[k - 1] * rep.lhs[k - 1] +
                 rep.c1_norm_trace[k] * rep.lhs[k]);
    rep.gronwall_term[k] = factor * gron_acc;
    rep.rhs[k] = flux_acc + rep.gronwall_term[k];
    rep.residual[k] = rep.rhs[k] - rep.lhs[k];
  }
  return rep;
}

IncompressiblePair incompressible_gronwall(const IncompressibleSolution2D& weakish,
                                           const IncompressibleSolution2D& strong,
                                           const TransportedCutoff2& cutoff,
                                           double tau, int quad_n,
                                           int time_slices) {
  cutoff.validate();
  if (quad_n < 2 || time_slices < 1)
    throw domain_error("incompressible_gronwall: quad_n >= 2, time_slices >= 1");
  const double eta = cutoff.bump.eta;
  const Vec2 x0 = cutoff.bump.center;
  const double h = 2.0 * eta / quad_n;
  const double cell_area = h * h;

  auto node = [&](int i, int j) {
    return Vec2{x0[0] - eta + (i + 0.5) * h, x0[1] - eta + (j + 0.5) * h};
  };

  // Hypothesis: velocities coincide on supp phi(., 0).
  for (int i = 0; i < quad_n; ++i)
    for (int j = 0; j < quad_n; ++j) {
      const Vec2 x = node(i, j);
      if (cutoff.value(x, 0.0) <= 0.0) continue;
      if (norm(weakish.velocity(x, 0.0) - strong.velocity(x, 0.0)) > 1e-12)
        throw hypothesis_error(
            "incompressible_gronwall: solutions differ on supp phi(.,0)");
    }

  // E(t) = 1/2 int phi |u - U|^2, and the flux integrand
  //   1/2 dphi/dt |U-u|^2 + grad phi . [ 1/2 |U-u|^2 u + (P-p)(U-u) ].
  auto relative_energy = [&](double t) {
    double e = 0.0;
    for (int i = 0; i < quad_n; ++i)
      for (int j = 0; j < quad_n; ++j) {
        const Vec2 x = node(i, j);
        const double phi = cutoff.value(x, t);
        if (phi == 0.0) continue;
        e += phi * norm2(weakish.velocity(x, t) - strong.velocity(x, t));
      }
    return 0.5 * e * cell_area;
  };
  auto flux_term = [&](double t) {
    double s = 0.0;
    for (int i = 0; i < quad_n; ++i)
      for (int j = 0; j < quad_n; ++j) {
        const Vec2 x = node(i, j);
        const double dphi_dt = cutoff.dt(x, t);
        const Vec2 grad = cutoff.gradient(x, t);
        if (dphi_dt == 0.0 && grad[0] == 0.0 && grad[1] == 0.0) continue;
        Vec2 u, U;
        double p, P;
        weakish.eval(x, t, u, p);
        strong.eval(x, t, U, P);
        const Vec2 diff = U - u;
        const double d2 = norm2(diff);
        s += 0.5 * dphi_dt * d2 +
             dot(grad, 0.5 * d2 * u + (P - p) * diff);
      }
    return s * cell_area;
  };
  auto sym_norm = [&](double t) {
    double m = 0.0;
    for (int i = 0; i < quad_n; ++i)
      for (int j = 0; j < quad_n; ++j) {
        const Vec2 x = node(i, j);
        if (cutoff.value(x, t) <= 0.0) continue;
        m = std::max(m, strong.sym_grad_norm(x, t));
      }
    return m;
  };

  const double dt = tau / time_slices;
  double flux_acc = 0.0, gron_acc = 0.0;
  double prev_flux = flux_term(0.0);
  double prev_ge = sym_norm(0.0) * relative_energy(0.0);
  for (int k = 1; k <= time_slices; ++k) {
    const double t = k * dt;
    const double cur_flux = flux_term(t);
    const double cur_ge = sym_norm(t) * relative_energy(t);
    flux_acc += 0.5 * dt * (prev_flux + cur_flux);
    gron_acc += 0.5 * dt * (prev_ge + cur_ge);
    prev_flux = cur_flux;
    prev_ge = cur_ge;
  }
  return IncompressiblePair{relative_energy(tau), flux_acc + 2.0 * gron_acc};
}

double support_radius(const Field& f, double rho_bg, double mom_bg,
                      double threshold) {
  if (!(threshold > 0.0)) throw domain_error("support_radius: threshold > 0");
  double r = 0.0;
  for (int i = 0; i < f.grid.n_cells; ++i) {
    const auto& c = f.cells[i];
    if (std::abs(c.rho - rho_bg) + std::abs(c.mom - mom_bg) > threshold)
      r = std::max(r, std::abs(f.grid.center(i)));
  }
  return r;
}

SpeedFit propagation_speed(const Trajectory& t, double rho_bg, double mom_bg,
                           double threshold, double fit_t_min) {
  std::vector<double> ts, rs;
  for (const auto& f : t.snapshots) {
    if (f.time < fit_t_min) continue;
    ts.push_back(f.time);
    rs.push_back(support_radius(f, rho_bg, mom_bg, threshold));
  }
  if (ts.size() < 3)
    throw insufficient_data_error("propagation_speed: need >= 3 usable snapshots");
  // Radius should not shrink by more than a cell between snapshots.
  const double dx = t.snapshots.front().grid.dx();
  for (std::size_t k = 1; k < rs.size(); ++k)
    if (rs[k] < rs[k - 1] - dx)
      throw hypothesis_error("propagation_speed: support radius decreased");

  const auto n = static_cast<double>(ts.size());
  double st = 0.0, sr = 0.0, stt = 0.0, str = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    st += ts[k];
    sr += rs[k];
    stt += ts[k] * ts[k];
    str += ts[k] * rs[k];
  }
  const double denom = n * stt - st * st;
  if (denom == 0.0)
    throw insufficient_data_error("propagation_speed: degenerate time axis");
  const double speed = (n * str - st * sr) / denom;
  return SpeedFit{speed, (sr - speed * st) / n};
}

double admissibility_report(const Trajectory& t) {
  if (t.stats.n_steps <= 0)
    throw insufficient_data_error(
        "admissibility_report: trajectory carries no production tracking");
  if (t.stats.max_cell_energy <= 0.0) return 0.0;
  return t.stats.max_energy_production / t.stats.max_cell_energy;
}

std::string gronwall_csv(const GronwallReport& r) {
  std::string out = "tau,lhs,rhs,residual,c1_norm\n";
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    out += format_double(r.times[k]) + "," + format_double(r.lhs[k]) + "," +
           format_double(r.rhs[k]) + "," + format_double(r.residual[k]) + "," +
           format_double(r.c1_norm_trace[k]) + "\n";
  }
  return out;
}

std::string finite_speed_csv(const std::vector<double>& times,
                             const std::vector<double>& radii,
                             const SpeedFit& fit, double c_bound) {
  std::string out = "t,radius\n";
  for (std::size_t k = 0; k < times.size(); ++k)
    out += format_double(times[k]) + "," + format_double(radii[k]) + "\n";
  out += "speed=" + format_double(fit.speed) +
         " intercept=" + format_double(fit.intercept) +
         " c_bound=" + format_double(c_bound) + "\n";
  return out;
}

} // namespace relenergy
