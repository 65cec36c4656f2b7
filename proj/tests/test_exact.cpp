#include <doctest.h>

#include <cmath>

#include "relenergy/exact.hpp"
#include "relenergy/experiments.hpp"

using namespace relenergy;

TEST_CASE("constant strong solution") {
  const StrongSolution1D s = StrongSolution1D::constant(1.0, 0.0);
  CHECK(s.is_constant());
  CHECK(s.smooth());
  const Primitive1 p = s.eval(-3.7, 12.0);
  CHECK(p.rho == 1.0);
  CHECK(p.vel[0] == 0.0);
  double dr, du;
  s.eval_gradient(0.3, 0.1, dr, du);
  CHECK(dr == 0.0);
  CHECK(du == 0.0);
  CHECK(rel_energy_density(s.eval(0.0, 0.0), s.eval(5.0, 1.0), GasParams{2.0}) == 0.0);
}

TEST_CASE("reference solution from constant data matches the constant") {
  ExperimentConfig cfg = ExperimentConfig::defaults_for("simulate");
  cfg.amplitude = 0.0;
  cfg.t_end = 0.2;
  Field init = make_initial_field(cfg, 64);
  const StrongSolution1D ref =
      StrongSolution1D::reference(init, 8, solver_config(cfg));
  CHECK(ref.smooth());
  for (double x : {-1.5, -0.3, 0.0, 0.9})
    for (double t : {0.0, 0.1, 0.2}) {
      const Primitive1 p = ref.eval(x, t);
      CHECK(p.rho == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(p.vel[0]) <= 1e-12);
    }
}

TEST_CASE("gradient monitor certifies pre-shock smoothness") {
  ExperimentConfig cfg = ExperimentConfig::defaults_for("simulate");
  cfg.amplitude = 0.1;
  cfg.half_width = 0.5;

  SUBCASE("short smooth run stays flagged smooth") {
    cfg.t_end = 0.2;
    const StrongSolution1D ref = StrongSolution1D::reference(
        make_initial_field(cfg, 200), 8, solver_config(cfg));
    CHECK(ref.smooth());
    CHECK(ref.gradient_monitor_max() < 5.0 * ref.gradient_monitor_initial());
  }

  SUBCASE("steep data run past breach time raises the flag") {
    cfg.amplitude = 0.6;
    cfg.half_width = 0.2;
    cfg.t_end = 1.0;
    cfg.snapshot_dt = 0.1;
    const StrongSolution1D ref = StrongSolution1D::reference(
        make_initial_field(cfg, 200), 8, solver_config(cfg));
    CHECK(!ref.smooth());
  }
}

TEST_CASE("reference refinement precondition") {
  ExperimentConfig cfg = ExperimentConfig::defaults_for("simulate");
  CHECK_THROWS_AS(StrongSolution1D::reference(make_initial_field(cfg, 64), 4,
                                              solver_config(cfg)),
                  domain_error);
}

TEST_CASE("incompressible catalog: pointwise values") {
  const auto rest = IncompressibleSolution2D::rest();
  Vec2 u;
  double p;
  rest.eval(Vec2{0.4, -1.2}, 0.7, u, p);
  CHECK(u[0] == 0.0);
  CHECK(u[1] == 0.0);
  CHECK(p == 0.0);

  const auto shear = IncompressibleSolution2D::shear(1.0); // f(y) = y
  shear.eval(Vec2{0.0, 2.0}, 0.0, u, p);
  CHECK(u[0] == doctest::Approx(2.0));
  CHECK(u[1] == 0.0);
  CHECK(p == 0.0);

  const auto vortex = IncompressibleSolution2D::vortex();
  vortex.eval(Vec2{1.5, 0.0}, 0.3, u, p);
  CHECK(u[0] == 0.0);
  CHECK(u[1] == 0.0);
  CHECK(p == doctest::Approx(0.1)); // constant outside the support

  // inside: velocity tangential, |U| = v_theta(r) = r (1 - r^2)^2
  const double r = 0.5;
  vortex.eval(Vec2{r, 0.0}, 0.0, u, p);
  CHECK(u[0] == 0.0);
  CHECK(u[1] == doctest::Approx(r * std::pow(1.0 - r * r, 2)));
}

TEST_CASE("vortex exterior is velocity-free for all time") {
  const auto vortex = IncompressibleSolution2D::vortex();
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const double ang = 2.0 * M_PI * k / 1000.0;
    const double rad = 1.0 + 3.0 * (k % 97) / 97.0;
    const Vec2 x{rad * std::cos(ang), rad * std::sin(ang)};
    if (norm(vortex.velocity(x, 0.1 * k)) != 0.0) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("two shear flows agreeing on a strip are identical there forever") {
  const auto a = IncompressibleSolution2D::shear(1.0);
  const auto b = IncompressibleSolution2D::shear(1.0, 0.5, 1.5, 2.5);
  int bad = 0;
  for (int k = 0; k < 2000; ++k) {
    const double y = -1.5 + 3.0 * k / 1999.0; // strip |y| <= 1.5
    const double t = 0.37 * (k % 11);
    const Vec2 x{0.7 * (k % 13) - 3.0, y};
    if (norm(a.velocity(x, t) - b.velocity(x, t)) != 0.0) ++bad;
  }
  CHECK(bad == 0);
  // and they do differ inside the bump band
  CHECK(norm(a.velocity(Vec2{0.0, 2.0}, 0.0) - b.velocity(Vec2{0.0, 2.0}, 0.0)) > 0.1);
}

TEST_CASE("exactness residuals at 10^4 samples") {
  CHECK(residual_check(IncompressibleSolution2D::rest(), 10000) == 0.0);
  CHECK(residual_check(IncompressibleSolution2D::shear(1.0), 10000) <= 1e-6);
  CHECK(residual_check(IncompressibleSolution2D::vortex(), 10000) <= 1e-6);
  CHECK(residual_check(IncompressibleSolution2D::translating_vortex({1.0, 0.0}),
                       10000) <= 1e-6);
  CHECK_THROWS_AS(residual_check(IncompressibleSolution2D::rest(), 0), domain_error);
}

TEST_CASE("symmetric gradient norm matches finite differences") {
  const auto members = {IncompressibleSolution2D::shear(0.7, 0.3, -1.0, 1.0),
                        IncompressibleSolution2D::vortex(),
                        IncompressibleSolution2D::translating_vortex({0.5, 0.0})};
  const double h = 1e-6;
  for (const auto& s : members) {
    for (int k = 0; k < 500; ++k) {
      const double t = 0.002 * k;
      const Vec2 x{-1.3 + 0.005 * k, 0.9 - 0.003 * k};
      double grad[2][2];
      for (int j = 0; j < 2; ++j) {
        Vec2 xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const Vec2 up = s.velocity(xp, t), um = s.velocity(xm, t);
        grad[0][j] = (up[0] - um[0]) / (2.0 * h);
        grad[1][j] = (up[1] - um[1]) / (2.0 * h);
      }
      const double e11 = grad[0][0], e22 = grad[1][1];
      const double e12 = 0.5 * (grad[0][1] + grad[1][0]);
      // spectral norm of a symmetric traceless-ish 2x2 matrix
      const double mean = 0.5 * (e11 + e22);
      const double dev = std::sqrt(0.25 * (e11 - e22) * (e11 - e22) + e12 * e12);
      const double fd_norm = std::abs(mean) + dev;
      CHECK(s.sym_grad_norm(x, t) == doctest::Approx(fd_norm).epsilon(1e-4));
    }
  }
}
