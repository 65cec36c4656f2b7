#include <doctest.h>

#include <cmath>

#include "relenergy/cutoff.hpp"
#include "relenergy/sampling.hpp"

using namespace relenergy;

namespace {

const RadialBump<1> unit_bump{{0.0}, 1.0};
const TransportedCutoff1 unit_cutoff{unit_bump, 1.0};

} // namespace

TEST_CASE("bump profile values") {
  CHECK(bump_eval(unit_bump, Vec1{0.3}) == 1.0);
  CHECK(bump_eval(unit_bump, Vec1{-0.3}) == 1.0);
  CHECK(bump_eval(unit_bump, Vec1{1.2}) == 0.0);
  CHECK(bump_eval(unit_bump, Vec1{0.75}) == doctest::Approx(0.5).epsilon(1e-15));
  // boundary convention: q(eta/2) = 1 and q(eta) = 0 inclusive
  CHECK(bump_eval(unit_bump, Vec1{0.5}) == 1.0);
  CHECK(bump_eval(unit_bump, Vec1{1.0}) == 0.0);
  CHECK_THROWS_AS((RadialBump<1>{{0.0}, -1.0}.validate()), domain_error);
}

TEST_CASE("profile is C1: derivative vanishes at the match points") {
  const RadialProfile q{1.0};
  CHECK(q.derivative(0.5) == 0.0);
  CHECK(q.derivative(1.0) == 0.0);
  CHECK(q.derivative(0.75) == doctest::Approx(-3.0)); // -(6t-6t^2)*2 at t=1/2
  // non-increasing
  for (int i = 0; i <= 100; ++i) CHECK(q.derivative(0.01 * i) <= 0.0);
}

TEST_CASE("transported cutoff evaluation") {
  CHECK(cutoff_eval(unit_cutoff, Vec1{0.2}, 0.2) == 1.0);
  CHECK(cutoff_eval(unit_cutoff, Vec1{0.6}, 0.5) == 0.0); // 0.6 + 0.5 >= 1
  const TransportedCutoff1 fast{unit_bump, 2.0};
  CHECK(cutoff_eval(fast, Vec1{0.0}, 0.5) == 0.0); // radial argument hits eta
  CHECK_THROWS_AS((TransportedCutoff1{unit_bump, 0.0}.validate()), domain_error);
}

TEST_CASE("cutoff shrinks and stays within [0,1]") {
  SplitMix64 rng(3);
  int bad = 0;
  for (int k = 0; k < 100000; ++k) {
    const Vec1 x{rng.uniform(-2.0, 2.0)};
    const double t1 = rng.uniform(0.0, 1.5);
    const double t2 = t1 + rng.uniform(0.0, 1.5);
    const double p1 = unit_cutoff.value(x, t1);
    const double p2 = unit_cutoff.value(x, t2);
    if (!(0.0 <= p1 && p1 <= 1.0)) ++bad;
    if (p2 > p1) ++bad;
    // support confined to the shrinking ball
    if (p1 > 0.0 && std::abs(x[0]) >= unit_cutoff.support_radius(t1)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("identically one on the quarter ball up to eta/(4C)") {
  // exact equality on a 64^3 lattice (2-D space x time)
  const TransportedCutoff2 c{RadialBump<2>{{0.0, 0.0}, 1.0}, 1.0};
  const double rad = 0.25, t_max = 0.25;
  int bad = 0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      for (int k = 0; k < 64; ++k) {
        const Vec2 x{-rad + 2.0 * rad * i / 63.0, -rad + 2.0 * rad * j / 63.0};
        if (norm(x) > rad) continue;
        const double t = t_max * k / 64.0; // [0, eta/(4C)), right end open
        if (c.value(x, t) != 1.0) ++bad;
      }
  CHECK(bad == 0);
}

TEST_CASE("transport residual: exact in the flat core, small elsewhere") {
  // flat core: phi == 1 locally, residual identically zero
  CHECK(transport_residual(unit_cutoff, Vec1{0.1}, 0.05, 1e-4) == 0.0);
  CHECK_THROWS_AS(transport_residual(unit_cutoff, Vec1{0.0}, 0.1, 1e-4),
                  undefined_direction_error);

  // smooth interior of the transition band
  const double res = transport_residual(unit_cutoff, Vec1{0.7}, 0.05, 1e-4);
  CHECK(std::abs(res) <= 1e-6);
}

TEST_CASE("transport residual: second-order convergence at random samples") {
  // In 1-D with speed 1 the residual cancels exactly; use speed 2 and 2-D
  // samples so the finite differences carry real error terms.
  const TransportedCutoff1 c1{unit_bump, 2.0};
  const TransportedCutoff2 c2{RadialBump<2>{{0.0, 0.0}, 1.0}, 2.0};
  const double h_coarse = 1e-3, h_fine = 1e-4;
  const RadialProfile q{1.0};

  int checked = 0, bad = 0;
  double worst_coarse = 0.0;
  for (std::uint64_t k = 0; checked < 10000; ++k) {
    SplitMix64 rng = SplitMix64::at(29, k);
    const double t = rng.uniform(0.0, 0.2);
    const bool two_d = (k % 2) == 0;
    double res_c, res_f, r;
    if (two_d) {
      const double ang = rng.uniform(0.0, 2.0 * M_PI);
      r = rng.uniform(0.05, 1.2);
      const Vec2 x{r * std::cos(ang), r * std::sin(ang)};
      if (!q.stencil_clear(r + 2.0 * t, 3.0 * h_coarse)) continue;
      res_c = transport_residual(c2, x, t, h_coarse);
      res_f = transport_residual(c2, x, t, h_fine);
    } else {
      r = rng.uniform(0.05, 1.2);
      const Vec1 x{rng.uniform() < 0.5 ? -r : r};
      if (!q.stencil_clear(r + 2.0 * t, 3.0 * h_coarse)) continue;
      res_c = transport_residual(c1, x, t, h_coarse);
      res_f = transport_residual(c1, x, t, h_fine);
    }
    ++checked;
    worst_coarse = std::max(worst_coarse, std::abs(res_c));
    // second order: shrinking h by 10 shrinks the residual by >= 50 unless
    // both are already at roundoff level
    if (std::abs(res_c) > 1e-11 && std::abs(res_f) > std::abs(res_c) / 50.0) ++bad;
  }
  CHECK(bad == 0);
  // |residual| <= L h^2 with L from the third-derivative scale of the profile
  CHECK(worst_coarse <= 200.0 * h_coarse * h_coarse);
}

TEST_CASE("sign condition") {
  SUBCASE("zero data") {
    const SignCheck s = sign_condition(0.0, Vec1{0.0}, unit_cutoff, Vec1{0.7}, 0.1);
    CHECK(s.applicable);
    CHECK(s.value == 0.0);
  }
  SUBCASE("flat core") {
    const SignCheck s = sign_condition(1.0, Vec1{0.5}, unit_cutoff, Vec1{0.1}, 0.05);
    CHECK(s.applicable);
    CHECK(s.value == 0.0);
  }
  SUBCASE("transition band, inward flux") {
    const SignCheck s =
        sign_condition(1.0, Vec1{-1.0}, unit_cutoff, Vec1{0.7}, 0.05);
    CHECK(s.applicable);
    CHECK(s.value <= 0.0);
  }
  SUBCASE("precondition violation flags, does not throw") {
    const SignCheck s = sign_condition(1.0, Vec1{2.0}, unit_cutoff, Vec1{0.7}, 0.05);
    CHECK(!s.applicable);
  }
  SUBCASE("random admissible data stay nonpositive") {
    int bad = 0;
    for (std::uint64_t k = 0; k < 100000; ++k) {
      SplitMix64 rng = SplitMix64::at(31, k);
      const double a = rng.uniform(0.0, 5.0);
      const Vec1 b{rng.uniform(-1.0, 1.0) * a * unit_cutoff.speed};
      const Vec1 x{rng.uniform(-1.5, 1.5)};
      const double t = rng.uniform(0.0, 1.0);
      const SignCheck s = sign_condition(a, b, unit_cutoff, x, t);
      if (!s.applicable || s.value > 1e-12 * (1.0 + a)) ++bad;
    }
    CHECK(bad == 0);
  }
}
