#include "relenergy/gas.hpp"

#include <algorithm>
#include <vector>

#include "relenergy/sampling.hpp"

namespace relenergy {

double pressure(double rho, const GasParams& g) {
  g.validate();
  if (!(rho >= 0.0)) throw domain_error("pressure: density must be nonnegative");
  return std::pow(rho, g.gamma);
}

double sound_speed(double rho, const GasParams& g) {
  g.validate();
  if (!(rho >= 0.0)) throw domain_error("sound_speed: density must be nonnegative");
  if (rho == 0.0) return 0.0;
  return std::sqrt(g.gamma * std::pow(rho, g.gamma - 1.0));
}

double relative_potential(double R, double rho, const GasParams& g) {
  g.validate();
  if (!(R >= 0.0 && rho >= 0.0))
    throw domain_error("relative_potential: densities must be nonnegative");
  const double gam = g.gamma;
  return std::pow(R, gam) - gam / (gam - 1.0) * rho * std::pow(R, gam - 1.0) +
         std::pow(rho, gam) / (gam - 1.0);
}

namespace {

// One axis of the search grid with its powers tabulated, so the inner
// four-deep loop is table lookups and arithmetic only.
struct DensityAxis {
  std::vector<double> rho, rho_g, rho_g1; // rho, rho^gamma, rho^(gamma-1)
};

DensityAxis make_density_axis(double lo, double hi, int n, double gamma) {
  DensityAxis a;
  a.rho.resize(n);
  a.rho_g.resize(n);
  a.rho_g1.resize(n);
  for (int i = 0; i < n; ++i) {
    const double r = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    a.rho[i] = r;
    a.rho_g[i] = std::pow(r, gamma);
    a.rho_g1[i] = std::pow(r, gamma - 1.0);
  }
  return a;
}

} // namespace

double domination_constant_grid(const StateBox& box, int dim, int grid_n,
                                unsigned workers) {
  box.validate();
  if (dim < 1) throw domain_error("domination_constant_grid: dim must be >= 1");
  if (grid_n < 2) throw domain_error("domination_constant_grid: grid_n must be >= 2");
  if (workers == 0) workers = default_worker_count();

  const double gam = box.gamma;
  const double coef = gam / (gam - 1.0);
  const DensityAxis ax = make_density_axis(box.r_lo, box.r_hi, grid_n, gam);
  std::vector<double> speed(grid_n);
  for (int k = 0; k < grid_n; ++k)
    speed[k] = box.v_max * k / (grid_n - 1);

  const auto n = static_cast<std::uint64_t>(grid_n);
  // Outer index enumerates (rho, R) pairs; the potential for the pair is
  // hoisted out of the velocity loops.
  const double ratio_max = parallel_max(
      n * n, workers, [&](std::uint64_t b, std::uint64_t e) {
        double best = 0.0;
        for (std::uint64_t idx = b; idx < e; ++idx) {
          const int i = static_cast<int>(idx / n); // weak density
          const int j = static_cast<int>(idx % n); // strong density
          const double rho = ax.rho[i];
          const double pot =
              ax.rho_g[j] - coef * rho * ax.rho_g1[j] + ax.rho_g[i] / (gam - 1.0);
          const double press_jump = coef * (ax.rho_g1[j] - ax.rho_g1[i]) * rho;
          const double pot_jump = ax.rho_g[j] - ax.rho_g[i];
          for (int ku = 0; ku < grid_n; ++ku) {
            const double u = speed[ku];
            for (int kU = 0; kU < grid_n; ++kU) {
              // orient = +1: U parallel to u; orient = -1: anti-parallel.
              for (int orient = -1; orient <= 1; orient += 2) {
                const double U = orient * speed[kU];
                const double w = u - U;
                const double a = 0.5 * rho * w * w + pot;
                if (a <= 1e-14) continue;
                const double bflux = 0.5 * rho * w * w * u - press_jump * u + pot_jump * U;
                const double ratio = std::abs(bflux) / a;
                if (ratio > best) best = ratio;
              }
            }
          }
        }
        return best;
      });
  return 1.05 * ratio_max;
}

double potential_convexity_bound(const StateBox& box) {
  box.validate();
  if (!(box.r_lo > 0.0))
    throw unsupported_regime_error(
        "potential_convexity_bound: requires r_lo > 0; use the grid constant "
        "for boxes touching vacuum");
  const double gam = box.gamma;
  return 0.5 * gam *
         std::min(std::pow(box.r_lo, gam - 2.0), std::pow(box.r_hi, gam - 2.0));
}

double domination_constant_analytic(const StateBox& box) {
  box.validate();
  if (!(box.r_lo > 0.0))
    throw unsupported_regime_error(
        "domination_constant_analytic: requires r_lo > 0; use the grid "
        "constant for boxes touching vacuum");
  const double gam = box.gamma;
  const double M =
      std::max(std::pow(box.r_lo, gam - 2.0), std::pow(box.r_hi, gam - 2.0));
  const double K = (gam - 1.0) * (gam - 1.0) * M * M;
  const double c = potential_convexity_bound(box);
  return 2.0 * box.v_max +
         gam / (gam - 1.0) * std::max(1.0, box.r_hi * K / (2.0 * c));
}

} // namespace relenergy
