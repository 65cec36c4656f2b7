#include "relenergy/exact.hpp"

#include <algorithm>
#include <cmath>

#include "relenergy/sampling.hpp"

namespace relenergy {

StrongSolution1D StrongSolution1D::constant(double rho, double vel) {
  if (!(rho >= 0.0)) throw domain_error("constant strong solution: rho >= 0");
  StrongSolution1D s;
  s.constant_ = true;
  s.rho_ = rho;
  s.vel_ = vel;
  return s;
}

namespace {

// Characteristic slope monitor: |du/dx| + |dc/dx| over cells. Velocity alone
// would give a zero baseline for data started from rest.
double max_characteristic_slope(const Field& f, double gamma, double vacuum_eps) {
  const GasParams g{gamma};
  double m = 0.0;
  const double dx = f.grid.dx();
  for (int i = 0; i + 1 < f.grid.n_cells; ++i) {
    const double du =
        velocity(f.cells[i + 1], vacuum_eps) - velocity(f.cells[i], vacuum_eps);
    const double dc =
        sound_speed(f.cells[i + 1].rho, g) - sound_speed(f.cells[i].rho, g);
    m = std::max(m, (std::abs(du) + std::abs(dc)) / dx);
  }
  return m;
}

} // namespace

StrongSolution1D StrongSolution1D::reference(const Field& init, int refine,
                                             const SolverConfig& cfg) {
  if (refine < 8)
    throw domain_error("reference strong solution: need refine >= 8");
  init.grid.validate();

  // Prolongate cell-centre values linearly onto the fine grid.
  Field fine;
  fine.grid = init.grid;
  fine.grid.n_cells = init.grid.n_cells * refine;
  fine.time = init.time;
  fine.cells.resize(fine.grid.n_cells);
  const int nc = init.grid.n_cells;
  for (int j = 0; j < fine.grid.n_cells; ++j) {
    const double x = fine.grid.center(j);
    const double s = (x - init.grid.x_min) / init.grid.dx() - 0.5;
    int i0 = static_cast<int>(std::floor(s));
    double w = s - i0;
    if (i0 < 0) { i0 = 0; w = 0.0; }
    if (i0 >= nc - 1) { i0 = nc - 2; w = 1.0; }
    const auto& a = init.cells[i0];
    const auto& b = init.cells[i0 + 1];
    fine.cells[j].rho = (1.0 - w) * a.rho + w * b.rho;
    fine.cells[j].mom = (1.0 - w) * a.mom + w * b.mom;
  }

  StrongSolution1D s;
  s.constant_ = false;
  s.vacuum_eps_ = cfg.vacuum_eps;
  auto traj = std::make_shared<Trajectory>(simulate(fine, cfg));
  s.monitor_initial_ =
      max_characteristic_slope(traj->snapshots.front(), cfg.gamma, cfg.vacuum_eps);
  s.monitor_max_ = s.monitor_initial_;
  for (const auto& snap : traj->snapshots)
    s.monitor_max_ = std::max(
        s.monitor_max_, max_characteristic_slope(snap, cfg.gamma, cfg.vacuum_eps));
  // A flat initial field has monitor 0; treat any growth beyond a fixed
  // floor as a breach in that case.
  const double limit = s.monitor_initial_ > 0.0 ? 5.0 * s.monitor_initial_ : 1e-8;
  s.smooth_ = s.monitor_max_ <= limit;
  s.traj_ = std::move(traj);
  return s;
}

const Trajectory& StrongSolution1D::trajectory() const {
  if (constant_ || !traj_)
    throw unsupported_regime_error("constant strong solution has no trajectory");
  return *traj_;
}

void StrongSolution1D::interp_cell(double x, double t, double& rho, double& u,
                                   int*) const {
  const auto& snaps = traj_->snapshots;
  // Bracket t (snapshot times are strictly increasing).
  int k1 = 1;
  while (k1 + 1 < static_cast<int>(snaps.size()) && snaps[k1].time < t) ++k1;
  const Field& f0 = snaps[k1 - 1];
  const Field& f1 = snaps[k1];
  double wt = (t - f0.time) / (f1.time - f0.time);
  wt = std::clamp(wt, 0.0, 1.0);

  auto space_interp = [this](const Field& f, double xx, double& r, double& uu) {
    const double s = (xx - f.grid.x_min) / f.grid.dx() - 0.5;
    int i0 = static_cast<int>(std::floor(s));
    double w = s - i0;
    if (i0 < 0) { i0 = 0; w = 0.0; }
    if (i0 >= f.grid.n_cells - 1) { i0 = f.grid.n_cells - 2; w = 1.0; }
    const auto& a = f.cells[i0];
    const auto& b = f.cells[i0 + 1];
    r = (1.0 - w) * a.rho + w * b.rho;
    uu = (1.0 - w) * velocity(a, vacuum_eps_) + w * velocity(b, vacuum_eps_);
  };
  double r0, u0, r1, u1;
  space_interp(f0, x, r0, u0);
  space_interp(f1, x, r1, u1);
  rho = (1.0 - wt) * r0 + wt * r1;
  u = (1.0 - wt) * u0 + wt * u1;
}

Primitive1 StrongSolution1D::eval(double x, double t) const {
  if (constant_) return Primitive1{rho_, {vel_}};
  double rho, u;
  interp_cell(x, t, rho, u);
  return Primitive1{rho, {u}};
}

void StrongSolution1D::eval_gradient(double x, double t, double& drho_dx,
                                     double& du_dx) const {
  if (constant_) {
    drho_dx = du_dx = 0.0;
    return;
  }
  const double h = traj_->snapshots.front().grid.dx();
  const Primitive1 p = eval(x + h, t);
  const Primitive1 m = eval(x - h, t);
  drho_dx = (p.rho - m.rho) / (2.0 * h);
  du_dx = (p.vel[0] - m.vel[0]) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// Incompressible catalog
// ---------------------------------------------------------------------------

namespace {

// Hermite bump on [lo, hi]: 0 at both ends, 1 in the middle, C1.
double hermite_bump(double y, double lo, double hi) {
  if (!(hi > lo) || y <= lo || y >= hi) return 0.0;
  const double s = 2.0 * std::abs((y - lo) / (hi - lo) - 0.5); // 0 centre, 1 edges
  return 1.0 - s * s * (3.0 - 2.0 * s);
}

double hermite_bump_slope(double y, double lo, double hi) {
  if (!(hi > lo) || y <= lo || y >= hi) return 0.0;
  const double c = (y - lo) / (hi - lo) - 0.5;
  const double s = 2.0 * std::abs(c);
  const double dsdY = 2.0 * (c >= 0.0 ? 1.0 : -1.0) / (hi - lo);
  return -(6.0 * s - 6.0 * s * s) * dsdY;
}

double vortex_g(double w) { // angular factor g(r^2)
  if (w >= 1.0) return 0.0;
  const double q = 1.0 - w;
  return q * q;
}

double vortex_gp(double w) { // g'(r^2)
  if (w >= 1.0) return 0.0;
  return -2.0 * (1.0 - w);
}

double vortex_pressure(double r2) {
  if (r2 >= 1.0) return 0.1;
  const double q = 1.0 - r2;
  return (1.0 - q * q * q * q * q) / 10.0;
}

} // namespace

IncompressibleSolution2D IncompressibleSolution2D::rest(Vec2 background) {
  IncompressibleSolution2D s;
  s.kind_ = IncompressibleKind::rest;
  s.background_ = background;
  return s;
}

IncompressibleSolution2D IncompressibleSolution2D::shear(double base_slope,
                                                         double bump_amp,
                                                         double bump_lo,
                                                         double bump_hi) {
  IncompressibleSolution2D s;
  s.kind_ = IncompressibleKind::shear;
  s.base_slope_ = base_slope;
  s.bump_amp_ = bump_amp;
  s.bump_lo_ = bump_lo;
  s.bump_hi_ = bump_hi;
  return s;
}

IncompressibleSolution2D IncompressibleSolution2D::vortex() {
  IncompressibleSolution2D s;
  s.kind_ = IncompressibleKind::vortex;
  return s;
}

IncompressibleSolution2D IncompressibleSolution2D::translating_vortex(Vec2 translation) {
  IncompressibleSolution2D s;
  s.kind_ = IncompressibleKind::translating_vortex;
  s.background_ = translation;
  return s;
}

double IncompressibleSolution2D::shear_profile(double y) const {
  return base_slope_ * y + bump_amp_ * hermite_bump(y, bump_lo_, bump_hi_);
}

double IncompressibleSolution2D::shear_profile_slope(double y) const {
  return base_slope_ + bump_amp_ * hermite_bump_slope(y, bump_lo_, bump_hi_);
}

void IncompressibleSolution2D::eval(const Vec2& x, double t, Vec2& velocity,
                                    double& pressure) const {
  switch (kind_) {
    case IncompressibleKind::rest:
      velocity = background_;
      pressure = 0.0;
      return;
    case IncompressibleKind::shear:
      velocity = {shear_profile(x[1]), 0.0};
      pressure = 0.0;
      return;
    case IncompressibleKind::vortex: {
      const double r2 = norm2(x);
      const double g = vortex_g(r2);
      velocity = {-x[1] * g, x[0] * g};
      pressure = vortex_pressure(r2);
      return;
    }
    case IncompressibleKind::translating_vortex: {
      const Vec2 y = x - t * background_;
      const double r2 = norm2(y);
      const double g = vortex_g(r2);
      velocity = background_ + Vec2{-y[1] * g, y[0] * g};
      pressure = vortex_pressure(r2);
      return;
    }
  }
}

Vec2 IncompressibleSolution2D::velocity(const Vec2& x, double t) const {
  Vec2 u;
  double p;
  eval(x, t, u, p);
  return u;
}

double IncompressibleSolution2D::sym_grad_norm(const Vec2& x, double t) const {
  switch (kind_) {
    case IncompressibleKind::rest:
      return 0.0;
    case IncompressibleKind::shear:
      return 0.5 * std::abs(shear_profile_slope(x[1]));
    case IncompressibleKind::vortex: {
      // For U = (-y, x) g(r^2) the symmetric gradient has eigenvalues
      // +- r^2 |g'(r^2)|.
      const double r2 = norm2(x);
      return r2 * std::abs(vortex_gp(r2));
    }
    case IncompressibleKind::translating_vortex: {
      const Vec2 y = x - t * background_;
      const double r2 = norm2(y);
      return r2 * std::abs(vortex_gp(r2));
    }
  }
  return 0.0;
}

bool IncompressibleSolution2D::stencil_clear(const Vec2& x, double t,
                                             double pad) const {
  switch (kind_) {
    case IncompressibleKind::rest:
      return true;
    case IncompressibleKind::shear: {
      if (bump_amp_ == 0.0) return true;
      const double mid = 0.5 * (bump_lo_ + bump_hi_);
      return std::abs(x[1] - bump_lo_) > pad && std::abs(x[1] - mid) > pad &&
             std::abs(x[1] - bump_hi_) > pad;
    }
    case IncompressibleKind::vortex:
      return std::abs(norm(x) - 1.0) > pad;
    case IncompressibleKind::translating_vortex:
      // the support circle moves; the time leg of the stencil shifts it too
      return std::abs(norm(x - t * background_) - 1.0) >
             pad * (1.0 + norm(background_));
  }
  return true;
}

double residual_check(const IncompressibleSolution2D& s, int samples,
                      std::uint64_t seed) {
  if (samples < 1) throw domain_error("residual_check: samples >= 1");
  const double h = 1e-4;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    SplitMix64 rng = SplitMix64::at(seed, static_cast<std::uint64_t>(k));
    Vec2 x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const double t = rng.uniform(0.0, 1.0);
    // Second derivatives jump across the profile support edges; centered
    // differences are second-order only on stencils clear of them.
    while (!s.stencil_clear(x, t, 3.0 * h))
      x = Vec2{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};

    Vec2 u0, up, um;
    double p0, pp, pm;
    s.eval(x, t, u0, p0);
    s.eval(x, t + h, up, pp);
    s.eval(x, t - h, um, pm);
    Vec2 dudt = (1.0 / (2.0 * h)) * (up - um);

    Vec2 dudx[2]; // dudx[j] = d velocity / d x_j
    double dpdx[2];
    double div = 0.0;
    for (int j = 0; j < 2; ++j) {
      Vec2 xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      Vec2 ujp, ujm;
      double pjp, pjm;
      s.eval(xp, t, ujp, pjp);
      s.eval(xm, t, ujm, pjm);
      dudx[j] = (1.0 / (2.0 * h)) * (ujp - ujm);
      dpdx[j] = (pjp - pjm) / (2.0 * h);
      div += dudx[j][j];
    }
    Vec2 res = dudt;
    for (int i = 0; i < 2; ++i)
      res[i] += u0[0] * dudx[0][i] + u0[1] * dudx[1][i] + dpdx[i];
    worst = std::max(worst, std::max(norm(res), std::abs(div)));
  }
  return worst;
}

} // namespace relenergy
