#include "relenergy/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <json.hpp>

#include "relenergy/sampling.hpp"
#include "relenergy/trajectory_io.hpp"

namespace relenergy {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Stopwatch {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

void add_check(ExperimentResult& r, const std::string& name, bool pass,
               const std::string& detail = "") {
  r.checks.push_back(CheckResult{name, pass, detail});
}

double bump_shape(double x, double center, double half_width) {
  return RadialProfile{1.0}.value(std::abs(x - center) / half_width);
}

} // namespace

SolverConfig solver_config(const ExperimentConfig& cfg) {
  return SolverConfig{cfg.cfl, cfg.gamma, cfg.vacuum_eps, cfg.t_end,
                      cfg.snapshot_dt};
}

Field make_initial_field(const ExperimentConfig& cfg, int n_cells) {
  Field f;
  f.grid = Grid1D{cfg.x_min, cfg.x_max, n_cells, bc_from_string(cfg.bc)};
  f.grid.validate();
  f.time = 0.0;
  f.cells.resize(n_cells);
  const GasParams g{cfg.gamma};
  const double c_bg = sound_speed(cfg.rho_bg, g);
  for (int i = 0; i < n_cells; ++i) {
    const double x = f.grid.center(i);
    const double rho = cfg.rho_bg + cfg.amplitude * bump_shape(x, cfg.center, cfg.half_width);
    double u = 0.0;
    if (cfg.velocity_mode == "acoustic" && rho > 0.0)
      u = 2.0 / (cfg.gamma - 1.0) * (sound_speed(rho, g) - c_bg);
    f.cells[i] = ConservedState{rho, rho * u};
  }
  return f;
}

void add_secondary_bump(Field& f, const ExperimentConfig& cfg) {
  if (cfg.amplitude2 == 0.0) return;
  for (int i = 0; i < f.grid.n_cells; ++i) {
    const double x = f.grid.center(i);
    f.cells[i].rho += cfg.amplitude2 * bump_shape(x, cfg.center2, cfg.half_width2);
  }
}

SamplePair sample_state_pair(const StateBox& box, std::uint64_t seed,
                             std::uint64_t index) {
  SplitMix64 rng = SplitMix64::at(seed, index);
  SamplePair p;
  p.weak.rho = rng.uniform(box.r_lo, box.r_hi);
  p.strong.rho = rng.uniform(box.r_lo, box.r_hi);
  const double su = rng.uniform() < 0.5 ? -1.0 : 1.0;
  const double sU = rng.uniform() < 0.5 ? -1.0 : 1.0;
  p.weak.vel = {su * rng.uniform(0.0, box.v_max)};
  p.strong.vel = {sU * rng.uniform(0.0, box.v_max)};
  return p;
}

std::uint64_t domination_violations(const StateBox& box, double c_bound,
                                    std::uint64_t n, std::uint64_t seed,
                                    unsigned threads) {
  const GasParams g{box.gamma};
  return parallel_count(n, threads == 0 ? default_worker_count() : threads,
                        [&](std::uint64_t b, std::uint64_t e) {
                          std::uint64_t bad = 0;
                          for (std::uint64_t i = b; i < e; ++i) {
                            const SamplePair p = sample_state_pair(box, seed, i);
                            const double a = rel_energy_density(p.strong, p.weak, g);
                            const double bf =
                                std::abs(rel_energy_flux(p.strong, p.weak, g)[0]);
                            if (bf > c_bound * a) ++bad;
                          }
                          return bad;
                        });
}

std::string summary_json(const ExperimentResult& r, const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = r.experiment;
  j["wall_seconds"] = r.wall_seconds;
  j["parameters"] = {{"gamma", cfg.gamma},
                     {"grid", {{"x_min", cfg.x_min},
                               {"x_max", cfg.x_max},
                               {"n_cells", cfg.n_cells},
                               {"bc", cfg.bc}}},
                     {"seed", cfg.seed}};
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  json values;
  for (const auto& [k, v] : r.values) values[k] = v;
  j["values"] = values;
  j["pass"] = r.all_pass();
  return j.dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  if (cfg.experiment == "constant") return run_constant(cfg, threads);
  if (cfg.experiment == "lemma-sweep") return run_lemma_sweep(cfg, threads);
  if (cfg.experiment == "simulate") return run_simulate(cfg, threads);
  if (cfg.experiment == "gronwall") return run_gronwall(cfg, threads);
  if (cfg.experiment == "weak-strong") return run_weak_strong(cfg, threads);
  if (cfg.experiment == "finite-speed") return run_finite_speed(cfg, threads);
  if (cfg.experiment == "incompressible") return run_incompressible(cfg, threads);
  throw config_error("unknown experiment: " + cfg.experiment);
}

ExperimentResult run_constant(const ExperimentConfig& cfg, unsigned threads) {
  Stopwatch watch;
  ExperimentResult r;
  r.experiment = cfg.experiment;
  const StateBox box{cfg.box_r_lo, cfg.box_r_hi, cfg.box_v, cfg.gamma};
  box.validate();
  const double c_grid = domination_constant_grid(box, 1, cfg.lemma_grid_n, threads);
  r.values["c_grid"] = c_grid;
  if (box.r_lo > 0.0) {
    const double c_analytic = domination_constant_analytic(box);
    r.values["c_analytic"] = c_analytic;
    add_check(r, "analytic dominates grid constant", c_analytic >= c_grid / 1.05,
              "c_analytic=" + format_double(c_analytic) +
                  " c_grid=" + format_double(c_grid));
  } else {
    add_check(r, "vacuum box: grid constant is authoritative", true,
              "analytic route requires r_lo > 0");
  }
  r.wall_seconds = watch.seconds();
  return r;
}

ExperimentResult run_lemma_sweep(const ExperimentConfig& cfg, unsigned threads) {
  Stopwatch watch;
  ExperimentResult r;
  r.experiment = cfg.experiment;
  const StateBox box{cfg.box_r_lo, cfg.box_r_hi, cfg.box_v, cfg.gamma};
  box.validate();

  const double c_grid = domination_constant_grid(box, 1, cfg.lemma_grid_n, threads);
  const double c_fine = domination_constant_grid(box, 1, 2 * cfg.lemma_grid_n, threads);
  const double change = std::abs(c_fine - c_grid) / c_fine;
  r.values["c_grid"] = c_grid;
  r.values["c_grid_refined"] = c_fine;
  r.values["refinement_change"] = change;
  add_check(r, "grid constant stable under refinement", change < 0.02,
            "change=" + format_double(change));

  double c_analytic = std::nan("");
  if (box.r_lo > 0.0) {
    c_analytic = domination_constant_analytic(box);
    r.values["c_analytic"] = c_analytic;
    add_check(r, "analytic dominates grid constant", c_analytic >= c_grid / 1.05,
              "c_analytic=" + format_double(c_analytic));
  }

  const std::uint64_t bad =
      domination_violations(box, c_grid, cfg.lemma_samples, cfg.seed, threads);
  r.values["violations"] = static_cast<double>(bad);
  add_check(r, "flux dominated on random samples", bad == 0,
            std::to_string(bad) + " of " + std::to_string(cfg.lemma_samples) +
                " samples exceed c_grid * A");

  std::string csv = "r_lo,r_hi,v_max,gamma,c_grid,c_grid_refined,c_analytic,violations\n";
  csv += format_double(box.r_lo) + "," + format_double(box.r_hi) + "," +
         format_double(box.v_max) + "," + format_double(box.gamma) + "," +
         format_double(c_grid) + "," + format_double(c_fine) + "," +
         format_double(c_analytic) + "," + std::to_string(bad) + "\n";
  r.files["lemma_sweep.csv"] = csv;
  r.wall_seconds = watch.seconds();
  return r;
}

ExperimentResult run_simulate(const ExperimentConfig& cfg, unsigned) {
  Stopwatch watch;
  ExperimentResult r;
  r.experiment = cfg.experiment;
  const GasParams g{cfg.gamma};
  Field init = make_initial_field(cfg, cfg.n_cells);
  add_secondary_bump(init, cfg);
  const Trajectory traj = simulate(init, solver_config(cfg));

  const double prod = admissibility_report(traj);
  r.values["max_production_normalized"] = prod;
  r.values["mass_drift_rel"] = traj.stats.mass_drift_rel;
  r.values["min_rho"] = traj.stats.min_rho;
  add_check(r, "discrete energy production nonpositive", prod <= cfg.tol_production,
            "max normalized production=" + format_double(prod));
  add_check(r, "mass conserved", traj.stats.mass_drift_rel <= cfg.tol_mass,
            "relative drift=" + format_double(traj.stats.mass_drift_rel));
  add_check(r, "density nonnegative", traj.stats.min_rho >= 0.0,
            "min rho=" + format_double(traj.stats.min_rho));

  bool monotone = true;
  double prev = total_energy(traj.snapshots.front(), g, cfg.vacuum_eps);
  double worst_jump = 0.0;
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
    const double e = total_energy(traj.snapshots[k], g, cfg.vacuum_eps);
    worst_jump = std::max(worst_jump, e - prev);
    if (e > prev + 1e-12 * std::max(1.0, prev)) monotone = false;
    prev = e;
  }
  r.values["worst_energy_jump"] = worst_jump;
  add_check(r, "total energy non-increasing", monotone,
            "worst jump=" + format_double(worst_jump));

  r.files["trajectory.csv"] = write_trajectory(traj);
  r.wall_seconds = watch.seconds();
  return r;
}

namespace {

/// Union of realized boxes across runs, widened to a valid StateBox.
StateBox union_box(const std::vector<const Trajectory*>& runs, double gamma) {
  double r_lo = 1e300, r_hi = 0.0, v = 0.0;
  for (const Trajectory* t : runs) {
    const StateBox b = realized_state_box(*t);
    r_lo = std::min(r_lo, b.r_lo);
    r_hi = std::max(r_hi, b.r_hi);
    v = std::max(v, b.v_max);
  }
  if (!(r_hi > r_lo)) r_hi = r_lo + std::max(1e-9, 1e-9 * r_lo);
  if (!(v > 0.0)) v = 1e-9;
  return StateBox{r_lo, r_hi, v, gamma};
}

double resolve_cutoff_speed(const ExperimentConfig& cfg, const StateBox& box,
                            unsigned threads) {
  if (cfg.speed_mode == "explicit") return cfg.explicit_speed;
  if (cfg.speed_mode == "analytic") return domination_constant_analytic(box);
  return domination_constant_grid(box, 1, cfg.lemma_grid_n, threads);
}

std::string rel_energy_csv(const std::vector<double>& times,
                           const std::vector<double>& values) {
  std::string out = "tau,rel_energy\n";
  for (std::size_t k = 0; k < times.size(); ++k)
    out += format_double(times[k]) + "," + format_double(values[k]) + "\n";
  return out;
}

} // namespace

ExperimentResult run_gronwall(const ExperimentConfig& cfg, unsigned threads) {
  Stopwatch watch;
  ExperimentResult r;
  r.experiment = cfg.experiment;
  const GasParams g{cfg.gamma};

  // Strong solution: constant background, or a fine reference run of the
  // bump data refined from the finest weak level.
  const int n_base = *std::max_element(cfg.levels.begin(), cfg.levels.end());
  StrongSolution1D strong =
      cfg.gronwall_strong == "constant"
          ? StrongSolution1D::constant(cfg.rho_bg, 0.0)
          : StrongSolution1D::reference(make_initial_field(cfg, n_base),
                                        cfg.refine, solver_config(cfg));
  if (!strong.smooth())
    throw hypothesis_error(
        "gronwall: reference solution breached its gradient monitor; "
        "shorten solver.t_end");

  std::vector<Trajectory> runs;
  runs.reserve(cfg.levels.size());
  for (int n : cfg.levels) {
    Field init;
    if (cfg.gronwall_strong == "constant") {
      init = make_initial_field(cfg, n);
    } else {
      // Start the weak run from the strong solution's own initial data so
      // the matched-data hypothesis holds exactly.
      init = make_initial_field(cfg, n);
      for (int i = 0; i < n; ++i) {
        const Primitive1 s = strong.eval(init.grid.center(i), 0.0);
        init.cells[i] = ConservedState{s.rho, s.rho * s.vel[0]};
      }
    }
    runs.push_back(simulate(init, solver_config(cfg)));
  }

  std::vector<const Trajectory*> ptrs;
  for (const auto& t : runs) ptrs.push_back(&t);
  const StateBox box = union_box(ptrs, cfg.gamma);
  const TransportedCutoff1 cutoff{
      RadialBump<1>{{cfg.cutoff_center}, cfg.eta},
      resolve_cutoff_speed(cfg, box, threads)};

  std::vector<double> worst(cfg.levels.size());
  std::vector<double> max_lhs(cfg.levels.size());
  for (std::size_t li = 0; li < runs.size(); ++li) {
    const GronwallReport rep =
        gronwall_evaluate(runs[li], strong, cutoff, g, cfg.gronwall_factor);
    worst[li] = *std::min_element(rep.residual.begin(), rep.residual.end());
    max_lhs[li] = *std::max_element(rep.lhs.begin(), rep.lhs.end());
    r.files["gronwall_n" + std::to_string(cfg.levels[li]) + ".csv"] =
        gronwall_csv(rep);
    r.values["worst_residual_n" + std::to_string(cfg.levels[li])] = worst[li];
    r.values["max_lhs_n" + std::to_string(cfg.levels[li])] = max_lhs[li];
  }

  const std::size_t finest = runs.size() - 1;
  add_check(r, "residual bounded below at finest level",
            worst[finest] >= -cfg.tol_residual_frac * max_lhs[finest],
            "worst=" + format_double(worst[finest]) +
                " bound=" + format_double(-cfg.tol_residual_frac * max_lhs[finest]));
  bool monotone = true;
  for (std::size_t li = 1; li < runs.size(); ++li) {
    const double prev_violation = std::max(0.0, -worst[li - 1]);
    const double cur_violation = std::max(0.0, -worst[li]);
    if (cur_violation > prev_violation + 1e-15) monotone = false;
  }
  add_check(r, "violation shrinks under refinement", monotone, "");
  r.wall_seconds = watch.seconds();
  return r;
}

ExperimentResult run_weak_strong(const ExperimentConfig& cfg, unsigned threads) {
  Stopwatch watch;
  ExperimentResult r;
  r.experiment = cfg.experiment;
  const GasParams g{cfg.gamma};

  const int n_base = *std::max_element(cfg.levels.begin(), cfg.levels.end());
  const StrongSolution1D strong = StrongSolution1D::reference(
      make_initial_field(cfg, n_base), cfg.refine, solver_config(cfg));
  if (!strong.smooth())
    throw hypothesis_error(
        "weak-strong: reference solution breached its gradient monitor; "
        "shorten solver.t_end");
  r.values["gradient_monitor_ratio"] =
      strong.gradient_monitor_max() /
      std::max(1e-300, strong.gradient_monitor_initial());

  // Weak runs start from the strong data plus a perturbation outside the
  // matched ball.
  std::vector<Trajectory> runs;
  for (int n : cfg.levels) {
    Field init = make_initial_field(cfg, n);
    for (int i = 0; i < n; ++i) {
      const Primitive1 s = strong.eval(init.grid.center(i), 0.0);
      init.cells[i] = ConservedState{s.rho, s.rho * s.vel[0]};
    }
    add_secondary_bump(init, cfg);
    runs.push_back(simulate(init, solver_config(cfg)));
  }

  std::vector<const Trajectory*> ptrs;
  for (const auto& t : runs) ptrs.push_back(&t);
  StateBox box = union_box(ptrs, cfg.gamma);
  const double speed = resolve_cutoff_speed(cfg, box, threads);
  const TransportedCutoff1 cutoff{RadialBump<1>{{cfg.cutoff_center}, cfg.eta}, speed};
  r.values["cutoff_speed"] = speed;
  r.values["box_r_lo"] = box.r_lo;
  r.values["box_r_hi"] = box.r_hi;
  r.values["box_v"] = box.v_max;

  std::vector<double> e_final(runs.size());
  long long sign_violations = 0;
  for (std::size_t li = 0; li < runs.size(); ++li) {
    const Trajectory& traj = runs[li];
    std::vector<double> times, energies;
    for (const auto& f : traj.snapshots) {
      times.push_back(f.time);
      energies.push_back(localized_relative_energy(f, strong, cutoff, g));
    }
    e_final[li] = energies.back();
    r.files["weak_strong_n" + std::to_string(cfg.levels[li]) + ".csv"] =
        rel_energy_csv(times, energies);
    r.values["rel_energy_n" + std::to_string(cfg.levels[li])] = e_final[li];

    if (energies.front() > 1e-10)
      throw hypothesis_error("weak-strong: initial relative energy not zero");

    // Pointwise sign condition at every quadrature node inside supp phi.
    for (const auto& f : traj.snapshots) {
      for (int i = 0; i < f.grid.n_cells; ++i) {
        const Vec1 x{f.grid.center(i)};
        if (cutoff.value(x, f.time) <= 0.0) continue;
        const Primitive1 s = strong.eval(x[0], f.time);
        const Primitive1 w{f.cells[i].rho,
                           {velocity(f.cells[i], cfg.vacuum_eps)}};
        const double a = rel_energy_density(s, w, g);
        const Vec1 b = rel_energy_flux(s, w, g);
        const SignCheck sc = sign_condition(a, b, cutoff, x, f.time);
        if (!sc.applicable || sc.value > cfg.tol_sign * (1.0 + a))
          ++sign_violations;
      }
    }
  }
  r.values["sign_violations"] = static_cast<double>(sign_violations);
  add_check(r, "sign condition nonpositive at interior nodes", sign_violations == 0,
            std::to_string(sign_violations) + " violations");

  bool orders_ok = true;
  std::string detail;
  for (std::size_t li = 1; li < runs.size(); ++li) {
    const double ratio = e_final[li - 1] / std::max(e_final[li], 1e-300);
    const double order =
        std::log2(ratio) /
        std::log2(static_cast<double>(cfg.levels[li]) / cfg.levels[li - 1]);
    r.values["order_" + std::to_string(cfg.levels[li - 1]) + "_" +
             std::to_string(cfg.levels[li])] = order;
    detail += (detail.empty() ? "" : ", ") + format_double(order);
    if (!(order >= cfg.tol_order_min)) orders_ok = false;
  }
  add_check(r, "relative energy decays under refinement", orders_ok,
            "observed orders: " + detail);
  r.wall_seconds = watch.seconds();
  return r;
}

ExperimentResult run_finite_speed(const ExperimentConfig& cfg, unsigned threads) {
  Stopwatch watch;
  ExperimentResult r;
  r.experiment = cfg.experiment;
  const GasParams g{cfg.gamma};
  const double c_sound = sound_speed(cfg.rho_bg, g);
  bool all_bounded = true;

  for (int n : cfg.fs_levels) {
    Field init = make_initial_field(cfg, n);
    const Trajectory traj = simulate(init, solver_config(cfg));

    // The run must stay clear of the copy-out boundary.
    std::vector<double> times, radii;
    const double dx = traj.snapshots.front().grid.dx();
    for (const auto& f : traj.snapshots) {
      const double rad = support_radius(f, cfg.rho_bg, 0.0, cfg.threshold);
      if (rad > cfg.x_max - 5.0 * dx)
        throw hypothesis_error(
            "finite-speed: perturbation reached the domain boundary; "
            "enlarge the grid or shorten t_end");
      times.push_back(f.time);
      radii.push_back(rad);
    }

    const SpeedFit fit =
        propagation_speed(traj, cfg.rho_bg, 0.0, cfg.threshold, cfg.fit_t_min);
    const StateBox box = realized_state_box(traj);
    const double c_grid = domination_constant_grid(box, 1, cfg.lemma_grid_n, threads);

    const std::string tag = "_n" + std::to_string(n);
    r.values["speed" + tag] = fit.speed;
    r.values["c_grid" + tag] = c_grid;
    r.values["speed_to_sound_ratio" + tag] = fit.speed / c_sound;
    r.files["finite_speed" + tag + ".csv"] =
        finite_speed_csv(times, radii, fit, c_grid);
    const bool ok = fit.speed <= c_grid;
    if (!ok) all_bounded = false;
    add_check(r, "measured speed within lemma bound (n=" + std::to_string(n) + ")",
              ok,
              "speed=" + format_double(fit.speed) +
                  " c_grid=" + format_double(c_grid) +
                  " speed/sound=" + format_double(fit.speed / c_sound));
  }
  add_check(r, "zero violations across resolutions", all_bounded, "");
  r.wall_seconds = watch.seconds();
  return r;
}

ExperimentResult run_incompressible(const ExperimentConfig& cfg, unsigned) {
  Stopwatch watch;
  ExperimentResult r;
  r.experiment = cfg.experiment;

  const auto rest = IncompressibleSolution2D::rest();
  const auto vortex = IncompressibleSolution2D::vortex();
  const auto shear_a = IncompressibleSolution2D::shear(1.0);
  const auto shear_b = IncompressibleSolution2D::shear(1.0, 0.5, 1.5, 2.5);
  const Vec2 vdrift{1.0, 0.0};
  const auto moving = IncompressibleSolution2D::translating_vortex(vdrift);
  const auto comoving_rest = IncompressibleSolution2D::rest(vdrift);

  struct Member {
    const char* name;
    const IncompressibleSolution2D* s;
  };
  const Member members[] = {{"rest", &rest},
                            {"shear", &shear_a},
                            {"vortex", &vortex},
                            {"translating_vortex", &moving}};
  double worst_res = 0.0;
  for (const auto& m : members) {
    const double res = residual_check(*m.s, 10000, cfg.seed);
    worst_res = std::max(worst_res, res);
    r.values[std::string("residual_") + m.name] = res;
  }
  add_check(r, "catalog exactness residuals", worst_res <= cfg.tol_exactness,
            "worst=" + format_double(worst_res));

  struct Pair {
    const char* name;
    const IncompressibleSolution2D* weak;
    const IncompressibleSolution2D* strong;
    TransportedCutoff2 cutoff;
  };
  // The last pair is the nontrivial one: the cutoff window sits in the
  // path of the moving vortex, which penetrates it after t = 0.
  const Pair pairs[] = {
      {"vortex_vs_rest", &vortex, &rest,
       TransportedCutoff2{RadialBump<2>{{2.5, 0.0}, 1.2}, 1.0}},
      {"shear_vs_shear", &shear_b, &shear_a,
       TransportedCutoff2{RadialBump<2>{{0.0, 0.0}, 1.0}, 1.0}},
      {"moving_vortex_vs_comoving_rest", &moving, &comoving_rest,
       TransportedCutoff2{RadialBump<2>{{-2.5, 0.0}, 1.2}, 1.0}},
      {"comoving_rest_vs_entering_vortex", &comoving_rest, &moving,
       TransportedCutoff2{RadialBump<2>{{2.05, 0.0}, 1.0}, 0.5}},
  };

  std::string csv = "pair,tau,lhs,rhs\n";
  bool all_ok = true;
  for (const auto& p : pairs) {
    for (double tau : cfg.taus) {
      const IncompressiblePair v = incompressible_gronwall(
          *p.weak, *p.strong, p.cutoff, tau, cfg.quad_n, cfg.time_slices);
      csv += std::string(p.name) + "," + format_double(tau) + "," +
             format_double(v.lhs) + "," + format_double(v.rhs) + "\n";
      const bool ok = v.lhs <= v.rhs + cfg.tol_incompressible;
      if (!ok) all_ok = false;
      r.values[std::string(p.name) + "_lhs_tau" + format_double(tau)] = v.lhs;
      r.values[std::string(p.name) + "_rhs_tau" + format_double(tau)] = v.rhs;
    }
  }
  r.files["incompressible.csv"] = csv;
  add_check(r, "localized energy inequality holds for all pairs", all_ok, "");
  r.wall_seconds = watch.seconds();
  return r;
}

} // namespace relenergy
